#pragma once

// End-to-end run: features, dissimilarity, cluster grid, indexes,
// calibration, rankings, MDS and (optionally) the survey evaluation.

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "footclust/calibration.hpp"
#include "footclust/dissimilarity.hpp"
#include "footclust/feature_io.hpp"
#include "footclust/features.hpp"
#include "footclust/mds.hpp"
#include "footclust/panel.hpp"
#include "footclust/results_io.hpp"
#include "footclust/survey.hpp"
#include "footclust/version.hpp"

namespace footclust {

struct NamedProfile {
    std::string name;
    WeightProfile weights;
};

inline std::vector<NamedProfile> default_profiles() {
    return {{"A1", profile_w2()}, {"A2", WeightProfile{{0, 0, 0, 0.5, 1}}}, {"W1", profile_w1()}};
}

inline const std::vector<IndexId> kDefaultTableIndexes = {IndexId::asw,  IndexId::ch,   IndexId::dunn,
                                                          IndexId::pearson_gamma, IndexId::cvnn, IndexId::bootstab};

struct RunConfig {
    std::string players;
    std::string metadata;
    std::optional<std::string> previous;
    std::optional<std::string> survey_design;
    std::optional<std::string> survey_responses;
    std::string out = "out";

    int k_min = 2;
    int k_max = 10;
    std::vector<Method> methods{std::begin(kClusteringMethods), std::end(kClusteringMethods)};
    std::vector<IndexId> table_indexes = kDefaultTableIndexes;
    std::vector<NamedProfile> profiles = default_profiles();
    CalibrationMode mode = CalibrationMode::C1;
    int b_calibration = 100;
    int b_bootstab = 50;
    double sep_p = 0.1;
    std::size_t cvnn_kappa = 10;
    double geco_cutoff = 4.0;
    std::optional<std::array<double, 3>> group_weights;
    std::size_t mc_sims = 2000;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void validate() const {
        if (players.empty()) throw InvalidInput("config: players path is required");
        if (metadata.empty()) throw InvalidInput("config: metadata path is required");
        if (k_min < 2 || k_max < k_min) throw InvalidInput("config: need 2 <= k_min <= k_max");
        if (methods.empty()) throw InvalidInput("config: no clustering methods");
        if (profiles.empty()) throw InvalidInput("config: no weight profiles");
        for (const auto& p : profiles) p.weights.validate();
        if (b_calibration < 1 || b_bootstab < 1) throw InvalidInput("config: B values must be positive");
        if (survey_responses && !survey_design) throw InvalidInput("config: survey responses need a survey design");
    }

    PanelConfig panel() const {
        PanelConfig p;
        p.k_min = k_min;
        p.k_max = k_max;
        p.methods = methods;
        p.b_calibration = b_calibration;
        p.b_bootstab = b_bootstab;
        p.sep_p = sep_p;
        p.cvnn_kappa = cvnn_kappa;
        p.seed = seed;
        p.threads = threads;
        return p;
    }
};

/// Everything that determines the results (excludes out and threads).
inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["players"] = c.players;
    j["metadata"] = c.metadata;
    j["previous"] = c.previous ? nlohmann::ordered_json(*c.previous) : nlohmann::ordered_json(nullptr);
    j["survey_design"] = c.survey_design ? nlohmann::ordered_json(*c.survey_design) : nlohmann::ordered_json(nullptr);
    j["survey_responses"] =
        c.survey_responses ? nlohmann::ordered_json(*c.survey_responses) : nlohmann::ordered_json(nullptr);
    j["k_min"] = c.k_min;
    j["k_max"] = c.k_max;
    auto& m = j["methods"] = nlohmann::ordered_json::array();
    for (auto x : c.methods) m.push_back(to_string(x));
    auto& ti = j["table_indexes"] = nlohmann::ordered_json::array();
    for (auto x : c.table_indexes) ti.push_back(to_string(x));
    auto& pr = j["profiles"] = nlohmann::ordered_json::object();
    for (const auto& p : c.profiles) pr[p.name] = p.weights.w;
    j["calibration"] = to_string(c.mode);
    j["b_calibration"] = c.b_calibration;
    j["b_bootstab"] = c.b_bootstab;
    j["sep_p"] = c.sep_p;
    j["cvnn_kappa"] = c.cvnn_kappa;
    j["geco_cutoff"] = c.geco_cutoff;
    j["group_weights"] = c.group_weights ? nlohmann::ordered_json(*c.group_weights) : nlohmann::ordered_json(nullptr);
    j["mc_sims"] = c.mc_sims;
    j["seed"] = c.seed;
    return j;
}

/// Fields present in `j` override `c`. Relative input paths resolve against `base`.
inline void apply_json(RunConfig& c, const nlohmann::json& j, const std::filesystem::path& base = {}) {
    auto path = [&](const nlohmann::json& v) {
        std::filesystem::path p = v.get<std::string>();
        return (p.is_relative() && !base.empty() ? base / p : p).lexically_normal().string();
    };
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "players") c.players = path(v);
            else if (key == "metadata") c.metadata = path(v);
            else if (key == "previous") c.previous = v.is_null() ? std::nullopt : std::optional(path(v));
            else if (key == "survey_design") c.survey_design = v.is_null() ? std::nullopt : std::optional(path(v));
            else if (key == "survey_responses") c.survey_responses = v.is_null() ? std::nullopt : std::optional(path(v));
            else if (key == "out") c.out = path(v);
            else if (key == "k_min") c.k_min = v.get<int>();
            else if (key == "k_max") c.k_max = v.get<int>();
            else if (key == "methods") {
                c.methods.clear();
                for (const auto& s : v) c.methods.push_back(parse_method(s.get<std::string>()));
            } else if (key == "table_indexes") {
                c.table_indexes.clear();
                for (const auto& s : v) c.table_indexes.push_back(parse_index_id(s.get<std::string>()));
            } else if (key == "profiles") {
                c.profiles.clear();
                for (const auto& [name, w] : v.items()) {
                    NamedProfile p{name, {}};
                    if (w.is_string()) p.weights = parse_profile(w.get<std::string>());
                    else p.weights.w = w.get<std::array<double, 5>>();
                    c.profiles.push_back(p);
                }
            } else if (key == "calibration") c.mode = parse_calibration_mode(v.get<std::string>());
            else if (key == "b_calibration") c.b_calibration = v.get<int>();
            else if (key == "b_bootstab") c.b_bootstab = v.get<int>();
            else if (key == "sep_p") c.sep_p = v.get<double>();
            else if (key == "cvnn_kappa") c.cvnn_kappa = v.get<std::size_t>();
            else if (key == "geco_cutoff") c.geco_cutoff = v.get<double>();
            else if (key == "group_weights")
                c.group_weights = v.is_null() ? std::nullopt : std::optional(v.get<std::array<double, 3>>());
            else if (key == "mc_sims") c.mc_sims = v.get<std::size_t>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "threads") c.threads = v.get<unsigned>();
            else throw InvalidInput("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("config: ") + e.what());
    }
}

inline RunConfig load_config(const std::string& path) {
    RunConfig c;
    apply_json(c, load_json(path), std::filesystem::path(path).parent_path());
    return c;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
    return s;
}

inline std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hex64(fnv1a(bytes));
}

// Stages shared by the pipeline and the CLI subcommands.

struct DissimilarityStage {
    FeatureTable features;
    PlayerDissimilarity dissimilarity;
};

inline DissimilarityStage compute_dissimilarity(const RunConfig& c) {
    const auto players = read_players(c.players);
    const auto specs = read_metadata(c.metadata, player_columns(c.players));
    std::vector<PlayerRecord> prev;
    if (c.previous) prev = read_players(*c.previous);
    DissimilarityStage s;
    s.features = build_feature_table(players, specs, c.previous ? &prev : nullptr);
    DissimilarityOptions opt;
    opt.geco_cutoff = c.geco_cutoff;
    opt.group_weights = c.group_weights;
    opt.threads = c.threads;
    s.dissimilarity = build_dissimilarity(s.features, opt);
    return s;
}

inline std::vector<RankingRow> ranking_rows(const std::vector<CalibratedCandidate>& cands, const RunConfig& c) {
    std::vector<RankingRow> rows;
    for (const auto& p : c.profiles) rows.push_back({p.name, rank_candidates(cands, p.weights)});
    for (IndexId id : c.table_indexes) rows.push_back({std::string(to_string(id)), rank_by_index(cands, id)});
    return rows;
}

struct SurveyReport {
    ScoreMatrix scores;
    McResult mc;
    std::optional<WeightSearchResult> search;
};

inline SurveyReport run_survey(const SurveyDesign& design, const ScoreMatrix& scores,
                               const std::vector<CalibratedCandidate>* panel, const std::vector<WeightProfile>& grid,
                               std::size_t n_sim, std::uint64_t seed, unsigned threads) {
    SurveyReport r;
    r.scores = scores;
    r.mc = mc_randomness_test(design, scores.totals, scores.scores.size(), n_sim, derive_seed(seed, "survey"), threads);
    if (panel) r.search = weight_search(*panel, design.selections, scores.totals, grid, threads);
    return r;
}

inline nlohmann::ordered_json to_json(const SurveyReport& r) {
    nlohmann::ordered_json j;
    j["experts"] = r.scores.experts;
    j["scores"] = r.scores.scores;
    j["totals"] = r.scores.totals;
    j["statistic"] = r.mc.statistic;
    j["n_sim"] = r.mc.n_sim;
    j["p_value"] = r.mc.p_value;
    if (r.search) {
        j["best_weights"] = r.search->best.w;
        j["best_correlation"] = r.search->correlation;
        auto& all = j["correlations"] = nlohmann::ordered_json::array();
        for (const auto& s : r.search->all)
            all.push_back({{"weights", s.weights.w},
                           {"spearman", s.correlation ? nlohmann::ordered_json(*s.correlation)
                                                      : nlohmann::ordered_json(nullptr)}});
    }
    return j;
}

inline void write_json(const nlohmann::ordered_json& j, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    os << j.dump(2) << '\n';
}

struct RunResult {
    std::filesystem::path out;
    std::vector<std::string> artifacts;  // file names inside out
    std::vector<RankingRow> rankings;
};

/// Runs every stage and writes the artifacts plus manifest.json into c.out.
inline RunResult run_pipeline(const RunConfig& c) {
    c.validate();
    const std::filesystem::path out = c.out;
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw DataError("cannot create output directory " + c.out + ": " + ec.message());
    RunResult res{out, {}, {}};
    auto file = [&](const std::string& name) {
        res.artifacts.push_back(name);
        return (out / name).string();
    };

    const auto ds = compute_dissimilarity(c);
    const auto& D = ds.dissimilarity.final;
    write_feature_table(ds.features, file("features.csv"), file("features.json"));
    write_binary(D, file("dissim.bin"));
    write_ids(ds.features.ids, file("ids.csv"));

    const auto pc = c.panel();
    auto panel = evaluate_clusterings(D, cluster_grid(D, pc), pc);
    write_clusterings(panel.clusterings, ds.features.ids, file("clusterings.csv"));
    const auto pool = random_pool(D, pc);
    panel.entries.insert(panel.entries.end(), pool.begin(), pool.end());
    write_panel(panel.entries, file("panel.csv"));

    const auto cands = calibrate_panel(panel.entries, c.mode);
    write_calibrated(cands, c.mode, file("calibrated.csv"));
    res.rankings = ranking_rows(cands, c);
    write_ranking_table(res.rankings, file("ranking.csv"));
    write_full_ranking({res.rankings.begin(), res.rankings.begin() + static_cast<std::ptrdiff_t>(c.profiles.size())},
                       file("ranking_full.csv"));

    std::vector<int> labels;
    if (!res.rankings.front().top.empty()) {
        const auto& best = res.rankings.front().top.front();
        for (const auto& cl : panel.clusterings)
            if (cl.method == best.method && cl.k == best.k) labels = cl.labels;
    }
    write_mds_csv(classical_mds(D, 2), ds.features.ids, labels, file("mds.csv"));

    if (c.survey_design && c.survey_responses) {
        const auto design = parse_design(load_json(*c.survey_design));
        const auto scores = load_score_matrix(design, load_json(*c.survey_responses));
        const auto grid = default_weight_grid();
        bool covered = true;
        for (const auto& s : design.selections) {
            bool any = false;
            for (const auto& cand : cands) any = any || s.contains(cand.method, cand.k);
            covered = covered && any;
        }
        write_json(to_json(run_survey(design, scores, covered ? &cands : nullptr, grid, c.mc_sims, c.seed, c.threads)),
                   file("survey.json"));
    }

    nlohmann::ordered_json m;
    m["version"] = kVersion;
    m["seed"] = c.seed;
    const auto cfg = to_json(c);
    m["config_hash"] = hex64(fnv1a(cfg.dump()));
    m["config"] = cfg;
    m["players"] = ds.features.size();
    m["dropped_variables"] = ds.features.dropped;
    m["group_scales"] = ds.dissimilarity.scales;
    auto& arts = m["artifacts"] = nlohmann::ordered_json::object();
    for (const auto& a : res.artifacts) arts[a] = file_hash((out / a).string());
    write_json(m, (out / "manifest.json").string());
    return res;
}

}  // namespace footclust
