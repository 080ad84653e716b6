#pragma once

// Expert survey over clustering selections: rank scoring, a Monte Carlo test
// against random rankings, and a grid search for index weights that agree
// best with the experts.

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "footclust/calibration.hpp"
#include "footclust/clustering.hpp"
#include "footclust/error.hpp"
#include "footclust/parallel.hpp"
#include "footclust/rng.hpp"
#include "footclust/stats.hpp"

namespace footclust {

/// A family of clusterings of one method whose K falls in any of the ranges.
struct Selection {
    std::string label;
    Method method = Method::pam;
    std::vector<std::pair<int, int>> k_ranges;  // inclusive

    bool contains(Method m, int k) const {
        if (m != method) return false;
        for (auto [lo, hi] : k_ranges)
            if (k >= lo && k <= hi) return true;
        return false;
    }
};

struct Question {
    int choices = 0;
    std::vector<int> choice_of;  // per selection, 1-based choice id
};

struct SurveyDesign {
    std::vector<Selection> selections;
    std::vector<Question> questions;

    void validate() const {
        if (selections.empty()) throw InvalidInput("survey design has no selections");
        for (std::size_t q = 0; q < questions.size(); ++q) {
            const auto& Q = questions[q];
            if (Q.choices != 2 && Q.choices != 3 && Q.choices != 5)
                throw InvalidInput("question " + std::to_string(q + 1) + ": choice count must be 2, 3 or 5");
            if (Q.choice_of.size() != selections.size())
                throw InvalidInput("question " + std::to_string(q + 1) + ": every selection needs a choice");
            for (int c : Q.choice_of)
                if (c < 1 || c > Q.choices)
                    throw InvalidInput("question " + std::to_string(q + 1) + ": choice id out of range");
        }
    }
};

/// ranks[e][q][c] = rank expert e gave to choice c+1 of question q.
struct ResponseSet {
    std::vector<std::string> experts;
    std::vector<std::vector<std::vector<int>>> ranks;
};

/// Scores per expert and selection, plus the column totals.
struct ScoreMatrix {
    std::vector<std::string> experts;
    std::vector<std::vector<double>> scores;
    std::vector<double> totals;
};

inline double score_rank(int choices, int rank) {
    static constexpr double five[] = {30, 24, 18, 12, 6};
    static constexpr double three[] = {30, 20, 10};
    static constexpr double two[] = {30, 15};
    if (rank < 1 || rank > choices) throw InvalidInput("rank out of range");
    switch (choices) {
        case 5: return five[rank - 1];
        case 3: return three[rank - 1];
        case 2: return two[rank - 1];
        default: throw InvalidInput("unsupported choice count " + std::to_string(choices));
    }
}

inline void check_permutation(std::span<const int> r, int choices) {
    if (r.size() != static_cast<std::size_t>(choices)) throw InvalidInput("rank row length differs from choice count");
    std::vector<char> seen(static_cast<std::size_t>(choices) + 1, 0);
    for (int v : r) {
        if (v < 1 || v > choices || seen[static_cast<std::size_t>(v)]) throw InvalidInput("rank row is not a permutation");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

inline std::vector<double> column_totals(const std::vector<std::vector<double>>& scores, std::size_t columns) {
    std::vector<double> t(columns, 0.0);
    for (const auto& row : scores) {
        if (row.size() != columns) throw InvalidInput("score matrix rows differ in length");
        for (std::size_t s = 0; s < columns; ++s) t[s] += row[s];
    }
    return t;
}

inline ScoreMatrix selection_scores(const SurveyDesign& design, const ResponseSet& responses) {
    design.validate();
    const std::size_t S = design.selections.size();
    ScoreMatrix out;
    out.experts = responses.experts;
    for (std::size_t e = 0; e < responses.ranks.size(); ++e) {
        const auto& er = responses.ranks[e];
        if (er.size() != design.questions.size()) throw InvalidInput("expert answers a different number of questions");
        std::vector<double> row(S, 0.0);
        for (std::size_t q = 0; q < er.size(); ++q) {
            const auto& Q = design.questions[q];
            check_permutation(er[q], Q.choices);
            for (std::size_t s = 0; s < S; ++s)
                row[s] += score_rank(Q.choices, er[q][static_cast<std::size_t>(Q.choice_of[s] - 1)]);
        }
        out.scores.push_back(std::move(row));
    }
    out.totals = column_totals(out.scores, S);
    return out;
}

/// Sample variance of the selection totals.
inline double totals_variance(std::span<const double> totals) {
    const double sd = sample_sd(totals);
    return sd * sd;
}

/// Totals for n_experts experts ranking every question uniformly at random.
inline std::vector<double> simulate_totals(const SurveyDesign& design, std::size_t n_experts, Rng& rng) {
    std::vector<double> totals(design.selections.size(), 0.0);
    std::vector<int> ranks;
    for (std::size_t e = 0; e < n_experts; ++e)
        for (const auto& Q : design.questions) {
            ranks.resize(static_cast<std::size_t>(Q.choices));
            for (int c = 0; c < Q.choices; ++c) ranks[static_cast<std::size_t>(c)] = c + 1;
            rng.shuffle(ranks);
            for (std::size_t s = 0; s < totals.size(); ++s)
                totals[s] += score_rank(Q.choices, ranks[static_cast<std::size_t>(Q.choice_of[s] - 1)]);
        }
    return totals;
}

struct McResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n_sim = 0;
    std::size_t exceed = 0;
};

/// One-sided test of "experts rank at random": variance of the totals against
/// its distribution under independent uniform rankings. p = (1 + #>=) / (n + 1).
inline McResult mc_randomness_test(const SurveyDesign& design, std::span<const double> observed_totals,
                                   std::size_t n_experts, std::size_t n_sim = 2000, std::uint64_t seed = 1,
                                   unsigned threads = 1) {
    design.validate();
    if (n_sim < 1) throw InvalidInput("need at least one simulation");
    if (n_experts < 1) throw InvalidInput("need at least one expert");
    if (observed_totals.size() != design.selections.size()) throw InvalidInput("totals do not match the selections");
    McResult r;
    r.statistic = totals_variance(observed_totals);
    r.n_sim = n_sim;
    std::vector<char> exceed(n_sim, 0);
    parallel_for(n_sim, threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, "survey-mc", {static_cast<std::uint64_t>(i)}));
        exceed[i] = totals_variance(simulate_totals(design, n_experts, rng)) >= r.statistic;
    });
    r.exceed = static_cast<std::size_t>(std::count(exceed.begin(), exceed.end(), 1));
    r.p_value = static_cast<double>(1 + r.exceed) / static_cast<double>(n_sim + 1);
    return r;
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("spearman: vectors differ in length");
    if (x.size() < 3) throw InvalidInput("spearman: need at least three values");
    const auto rx = midranks(x), ry = midranks(y);
    return pearson(rx, ry);
}

/// {0, .25, .5, 1}^5 without the zero vector; the first weight varies slowest.
inline std::vector<WeightProfile> default_weight_grid() {
    static constexpr double levels[] = {0.0, 0.25, 0.5, 1.0};
    std::vector<WeightProfile> grid;
    for (int code = 1; code < 1024; ++code) {
        WeightProfile w;
        for (int j = 0; j < 5; ++j) w.w[static_cast<std::size_t>(j)] = levels[(code >> (2 * (4 - j))) & 3];
        grid.push_back(w);
    }
    return grid;
}

struct WeightScore {
    WeightProfile weights;
    std::optional<double> correlation;  // empty when undefined
};

struct WeightSearchResult {
    WeightProfile best;
    double correlation = 0.0;
    std::vector<WeightScore> all;
};

/// Per selection, the best composite over its candidates under w.
inline std::vector<double> selection_maxima(std::span<const CalibratedCandidate> panel,
                                            std::span<const Selection> selections, const WeightProfile& w) {
    std::vector<double> out;
    for (const auto& s : selections) {
        std::optional<double> best;
        for (const auto& c : panel) {
            if (!s.contains(c.method, c.k)) continue;
            try {
                const double v = composite(c.calibrated, w);
                if (!best || v > *best) best = v;
            } catch (const UndefinedIndex&) {
            }
        }
        if (!best) throw UndefinedIndex("selection '" + s.label + "' has no candidate with the weighted indexes");
        out.push_back(*best);
    }
    return out;
}

/// Grid weight vector whose per-selection composite maxima correlate best
/// (Spearman) with the sum scores; first in grid order on ties.
inline WeightSearchResult weight_search(std::span<const CalibratedCandidate> panel, std::span<const Selection> selections,
                                        std::span<const double> sum_scores, std::span<const WeightProfile> grid,
                                        unsigned threads = 1) {
    if (grid.empty()) throw InvalidInput("weight grid is empty");
    if (selections.size() != sum_scores.size()) throw InvalidInput("sum scores do not match the selections");
    for (const auto& s : selections) {
        bool any = false;
        for (const auto& c : panel) any = any || s.contains(c.method, c.k);
        if (!any) throw InvalidInput("selection '" + s.label + "' has no candidate in the panel");
    }
    WeightSearchResult r;
    r.all.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t g) {
        grid[g].validate();
        r.all[g].weights = grid[g];
        try {
            r.all[g].correlation = spearman(selection_maxima(panel, selections, grid[g]), sum_scores);
        } catch (const UndefinedIndex&) {
        }
    });
    std::optional<std::size_t> arg;
    for (std::size_t g = 0; g < grid.size(); ++g)
        if (r.all[g].correlation && (!arg || *r.all[g].correlation > *r.all[*arg].correlation)) arg = g;
    if (!arg) throw UndefinedIndex("no weight vector gives a defined correlation");
    r.best = r.all[*arg].weights;
    r.correlation = *r.all[*arg].correlation;
    return r;
}

// JSON documents

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

inline SurveyDesign parse_design(const nlohmann::json& j) {
    try {
        SurveyDesign d;
        for (const auto& s : j.at("selections")) {
            Selection sel;
            sel.label = s.value("label", std::string{});
            sel.method = parse_method(s.at("method").get<std::string>());
            for (const auto& r : s.at("k")) sel.k_ranges.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
            d.selections.push_back(std::move(sel));
        }
        for (const auto& q : j.at("questions")) {
            Question Q;
            Q.choices = q.at("choices").get<int>();
            Q.choice_of = q.at("choice_of_selection").get<std::vector<int>>();
            d.questions.push_back(std::move(Q));
        }
        d.validate();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("survey design: ") + e.what());
    }
}

inline ResponseSet parse_responses(const nlohmann::json& j) {
    try {
        ResponseSet r;
        r.ranks = j.at("ranks").get<std::vector<std::vector<std::vector<int>>>>();
        r.experts = j.value("experts", std::vector<std::string>{});
        if (r.experts.empty())
            for (std::size_t e = 0; e < r.ranks.size(); ++e) r.experts.push_back("expert " + std::to_string(e + 1));
        if (r.experts.size() != r.ranks.size()) throw InvalidInput("responses: expert names and rank rows differ in count");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("survey responses: ") + e.what());
    }
}

/// Published per-expert scores (no ranks).
inline ScoreMatrix parse_scores(const nlohmann::json& j, std::size_t selections) {
    try {
        ScoreMatrix m;
        m.scores = j.at("scores").get<std::vector<std::vector<double>>>();
        m.experts = j.value("experts", std::vector<std::string>{});
        if (m.experts.size() != m.scores.size()) throw InvalidInput("scores: expert names and rows differ in count");
        m.totals = column_totals(m.scores, selections);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("survey scores: ") + e.what());
    }
}

/// Responses ("ranks") or published scores ("scores"), whichever the document holds.
inline ScoreMatrix load_score_matrix(const SurveyDesign& design, const nlohmann::json& j) {
    if (j.contains("ranks")) return selection_scores(design, parse_responses(j));
    return parse_scores(j, design.selections.size());
}

}  // namespace footclust
