#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"
#include "footclust/features.hpp"
#include "footclust/parallel.hpp"
#include "footclust/positions.hpp"
#include "footclust/stats.hpp"

namespace footclust {

/// geco coefficient for position sets: each position is matched to the
/// nearest position of the other set, distances are clipped at `cutoff`
/// and rescaled to [0,1], and both directions are averaged.
inline double geco_position(const PositionSet& a, const PositionSet& b, double cutoff = 4.0) {
    if (a.empty() || b.empty()) throw InvalidInput("geco_position: empty position set");
    if (!(cutoff > 0.0)) throw InvalidInput("geco_position: cutoff must be positive");
    auto directed = [cutoff](const PositionSet& from, const PositionSet& to) {
        double total = 0.0;
        for (Position p : from) {
            double best = INFINITY;
            for (Position q : to) best = std::min(best, position_distance(p, q));
            total += std::min(best / cutoff, 1.0);
        }
        return total / static_cast<double>(from.size());
    };
    return 0.5 * (directed(a, b) + directed(b, a));
}

struct LeagueTeam {
    double league_score = 0.0;  // standardised
    double team_points = 0.0;   // standardised
};

/// Sum of absolute standardised differences, so a strong team in a weaker
/// league can sit close to a weaker team in a stronger league.
inline double league_team_dissim(const LeagueTeam& a, const LeagueTeam& b) {
    if (is_missing(a.league_score) || is_missing(a.team_points) || is_missing(b.league_score) ||
        is_missing(b.team_points))
        throw InvalidInput("league_team_dissim: missing input");
    return std::abs(a.league_score - b.league_score) + std::abs(a.team_points - b.team_points);
}

/// Column layout shared by all rows of the quantitative group.
struct QuantLayout {
    std::vector<double> weight;
    std::vector<std::optional<std::size_t>> parent;  // compositions: index of the top-level column
};

/// One player's standardised quantitative values (NaN = missing) and flags
/// marking compositions undefined because their top-level count is zero.
struct QuantRow {
    std::span<const double> values;
    std::span<const std::uint8_t> structural;
};

/// Weighted L1 distance over commonly observed variables. When a
/// composition is undefined for either player because the top-level count
/// is zero, its weight is moved onto that top-level variable for this pair.
inline double quantitative_L1(const QuantRow& a, const QuantRow& b, const QuantLayout& layout) {
    const std::size_t p = layout.weight.size();
    if (a.values.size() != p || b.values.size() != p) throw InvalidInput("quantitative_L1: row layout mismatch");
    std::vector<double> extra;
    for (std::size_t v = 0; v < p; ++v) {
        if (!layout.parent[v]) continue;
        const bool undefined = (!a.structural.empty() && a.structural[v]) || (!b.structural.empty() && b.structural[v]);
        if (!undefined) continue;
        if (extra.empty()) extra.assign(p, 0.0);
        extra[*layout.parent[v]] += layout.weight[v];
    }
    double total = 0.0;
    std::size_t common = 0;
    for (std::size_t v = 0; v < p; ++v) {
        const double x = a.values[v], y = b.values[v];
        if (is_missing(x) || is_missing(y)) continue;
        const double w = layout.weight[v] + (extra.empty() ? 0.0 : extra[v]);
        total += w * std::abs(x - y);
        ++common;
    }
    if (common == 0) throw IncomparablePair("quantitative_L1: no commonly observed variable");
    return total;
}

/// A group-wise dissimilarity and its weight in the final aggregate.
struct GroupDissimilarity {
    DissimilarityMatrix matrix;
    double weight = 1.0;
};

/// Sample standard deviation of all pairwise values of one group.
inline double group_scale(const DissimilarityMatrix& d) {
    if (d.pairs() < 2) throw DegenerateGroup("group dissimilarity has fewer than two pairs; its spread is undefined");
    const double s = sample_sd(d.condensed());
    if (!(s > 0.0)) throw DegenerateGroup("group dissimilarity is constant over all pairs");
    return s;
}

/// Entrywise sum of weight * d / sd over the groups. Zero-weight groups are skipped.
inline DissimilarityMatrix aggregate_final(std::span<const GroupDissimilarity> groups) {
    if (groups.empty()) throw InvalidInput("aggregate_final: no groups");
    const std::size_t n = groups.front().matrix.size();
    std::vector<double> out(DissimilarityMatrix::pair_count(n), 0.0);
    bool any = false;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto& g = groups[k];
        if (g.matrix.size() != n) throw InvalidInput("aggregate_final: group matrices differ in size");
        if (g.weight < 0.0) throw InvalidInput("aggregate_final: negative group weight");
        if (g.weight == 0.0) continue;
        double s;
        try {
            s = group_scale(g.matrix);
        } catch (const DegenerateGroup& e) {
            throw DegenerateGroup("group " + std::to_string(k + 1) + ": " + e.what());
        }
        const double f = g.weight / s;
        const auto& v = g.matrix.condensed();
        for (std::size_t i = 0; i < v.size(); ++i) out[i] += f * v[i];
        any = true;
    }
    if (!any) throw InvalidInput("aggregate_final: all group weights are zero");
    return DissimilarityMatrix(n, std::move(out));
}

struct DissimilarityOptions {
    double geco_cutoff = 4.0;
    /// quantitative, position, league/team; defaults to the variable counts
    std::optional<std::array<double, 3>> group_weights;
    unsigned threads = 1;
};

struct PlayerDissimilarity {
    DissimilarityMatrix final;
    std::array<GroupDissimilarity, 3> groups;
    std::array<double, 3> scales{};
};

inline QuantLayout quant_layout(const FeatureTable& t) {
    QuantLayout layout;
    for (const auto& c : t.columns) {
        layout.weight.push_back(c.effective_weight);
        layout.parent.push_back(c.parent_column);
    }
    return layout;
}

/// Quantitative, position and league/team dissimilarities for a staged
/// table, aggregated into the final player dissimilarity.
inline PlayerDissimilarity build_dissimilarity(const FeatureTable& t, const DissimilarityOptions& opt = {}) {
    if (!t.standardized) throw InvalidInput("build_dissimilarity: feature table is not standardised");
    const std::size_t n = t.size(), p = t.columns.size();
    if (p == 0) throw InvalidInput("build_dissimilarity: no quantitative variables");

    // row-major copies for cache-friendly pair loops
    std::vector<double> values(n * p);
    std::vector<std::uint8_t> structural(n * p);
    for (std::size_t v = 0; v < p; ++v)
        for (std::size_t i = 0; i < n; ++i) {
            values[i * p + v] = t.columns[v].values[i];
            structural[i * p + v] = t.columns[v].structural[i];
        }
    const QuantLayout layout = quant_layout(t);
    auto row = [&](std::size_t i) {
        return QuantRow{std::span<const double>(values).subspan(i * p, p),
                        std::span<const std::uint8_t>(structural).subspan(i * p, p)};
    };

    DissimilarityMatrix dq(n), dp(n), dl(n);
    parallel_for(n, opt.threads, [&](std::size_t i) {
        const auto ri = row(i);
        const LeagueTeam li{t.league_score[i], t.team_points[i]};
        for (std::size_t j = i + 1; j < n; ++j) {
            try {
                dq.set(i, j, quantitative_L1(ri, row(j), layout));
            } catch (const IncomparablePair&) {
                throw IncomparablePair("players '" + t.ids[i] + "' and '" + t.ids[j] +
                                       "' share no observed quantitative variable");
            }
            dp.set(i, j, geco_position(t.positions[i], t.positions[j], opt.geco_cutoff));
            dl.set(i, j, league_team_dissim(li, {t.league_score[j], t.team_points[j]}));
        }
    });

    const std::array<double, 3> w =
        opt.group_weights.value_or(std::array<double, 3>{static_cast<double>(p), 11.0, 2.0});
    PlayerDissimilarity out{DissimilarityMatrix{},
                            {GroupDissimilarity{std::move(dq), w[0]}, GroupDissimilarity{std::move(dp), w[1]},
                             GroupDissimilarity{std::move(dl), w[2]}},
                            {}};
    for (std::size_t k = 0; k < 3; ++k)
        out.scales[k] = out.groups[k].weight > 0.0 ? group_scale(out.groups[k].matrix) : 0.0;
    out.final = aggregate_final(out.groups);
    return out;
}

}  // namespace footclust
