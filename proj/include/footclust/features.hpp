#pragma once

// Turning raw per-season player records into analysis-ready variables:
// representation (per-90 rates, compositions, success rates), log-shift
// transformation and robust standardisation.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "footclust/error.hpp"
#include "footclust/positions.hpp"
#include "footclust/stats.hpp"

namespace footclust {

// ---------------------------------------------------------------------------
// Representation

inline double per90(double count, double minutes) {
    if (!(minutes > 0.0)) throw InvalidInput("per90: minutes must be positive");
    return count * 90.0 / minutes;
}

/// Sub-category counts as proportions of their top-level count. Returns
/// nullopt when the top-level count is zero: the composition is then
/// undefined and its weight moves to the top-level variable.
inline std::optional<std::vector<double>> derive_composition(double top_count, std::span<const double> sub_counts) {
    if (top_count < 0.0) throw InvalidInput("derive_composition: negative top-level count");
    double total = 0.0;
    for (double s : sub_counts) {
        if (s < 0.0) throw InvalidInput("derive_composition: negative sub-count");
        total += s;
    }
    if (top_count == 0.0) {
        if (total > 0.0) throw InvalidInput("derive_composition: sub-counts present but top-level count is zero");
        return std::nullopt;
    }
    if (std::abs(total - top_count) > 1e-9 * std::max(1.0, top_count))
        throw InvalidInput("derive_composition: sub-counts do not add up to the top-level count");
    std::vector<double> out(sub_counts.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_counts[i] / top_count;
    return out;
}

inline std::optional<double> success_rate(double successes, double attempts) {
    if (successes < 0.0 || attempts < 0.0) throw InvalidInput("success_rate: negative count");
    if (successes > attempts) throw InvalidInput("success_rate: more successes than attempts");
    if (attempts == 0.0) return std::nullopt;
    return successes / attempts;
}

// ---------------------------------------------------------------------------
// Transformation

inline double log_shift(double x, double c) {
    if (!(x + c > 0.0)) throw InvalidInput("log_shift: x + c must be positive");
    return std::log(x + c);
}

/// One player observed in two consecutive seasons (per-90 values).
struct SeasonPair {
    double x1 = 0.0;
    double x2 = 0.0;
    double minutes1 = 0.0;
    double minutes2 = 0.0;
};

inline const std::vector<double> kDefaultShiftGrid = {0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0};

/// Result of the shift search. `shift` is empty when leaving the variable
/// untransformed gave the flattest regression.
struct ShiftFit {
    std::optional<double> shift;
    double slope = 0.0;
};

/// OLS slope of |t(x2) - t(x1)| on the minutes-weighted mean of t(x1), t(x2)
/// where t = log(. + c), or the identity when c is empty. Returns nullopt if
/// the explanatory variable has no spread.
inline std::optional<double> shift_regression_slope(std::span<const SeasonPair> pairs, std::optional<double> c) {
    const std::size_t n = pairs.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pairs[i];
        const double t1 = c ? log_shift(p.x1, *c) : p.x1;
        const double t2 = c ? log_shift(p.x2, *c) : p.x2;
        const double w = p.minutes1 + p.minutes2;
        if (!(w > 0.0)) throw InvalidInput("shift regression: minutes must be positive");
        x[i] = (p.minutes1 * t1 + p.minutes2 * t2) / w;
        y[i] = std::abs(t2 - t1);
    }
    const double mx = mean(x), my = mean(y);
    CompensatedSum sxy, sxx;
    for (std::size_t i = 0; i < n; ++i) {
        sxy.add((x[i] - mx) * (y[i] - my));
        sxx.add((x[i] - mx) * (x[i] - mx));
    }
    if (!(sxx.value() > 1e-300)) return std::nullopt;
    return sxy.value() / sxx.value();
}

/// Picks the shift constant whose regression slope is closest to zero.
/// Ties go to the smaller constant; no transformation wins only when it is
/// strictly flatter than every candidate.
inline ShiftFit fit_shift_constant(std::span<const SeasonPair> pairs, std::span<const double> grid) {
    if (pairs.size() < 3) throw InvalidInput("fit_shift_constant: need at least 3 season pairs");
    if (grid.empty()) throw InvalidInput("fit_shift_constant: empty grid");
    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end());
    for (double c : sorted)
        if (!(c > 0.0)) throw InvalidInput("fit_shift_constant: grid values must be positive");

    std::optional<ShiftFit> best;
    for (double c : sorted) {
        auto s = shift_regression_slope(pairs, c);
        if (!s) continue;
        if (!best || std::abs(*s) < std::abs(best->slope)) best = ShiftFit{c, *s};
    }
    auto raw = shift_regression_slope(pairs, std::nullopt);
    if (raw && (!best || std::abs(*raw) < std::abs(best->slope))) best = ShiftFit{std::nullopt, *raw};
    if (!best) throw FitFailure("fit_shift_constant: every candidate had a degenerate regression");
    return *best;
}

// ---------------------------------------------------------------------------
// Standardisation

struct Standardized {
    std::vector<double> values;
    double center = 0.0;
    double scale = 1.0;
};

/// (x - median) / mean|x - median| over the observed entries; missing stays missing.
inline Standardized standardize_mad_median(std::span<const double> column) {
    auto obs = observed(column);
    if (obs.size() < 2) throw InvalidInput("standardize: need at least two observed values");
    const double med = median(obs);
    CompensatedSum dev;
    for (double x : obs) dev.add(std::abs(x - med));
    const double s = dev.value() / static_cast<double>(obs.size());
    if (!(s > 0.0)) throw ConstantColumn("standardize: column has zero spread around its median");
    Standardized out{std::vector<double>(column.size()), med, s};
    for (std::size_t i = 0; i < column.size(); ++i)
        out.values[i] = is_missing(column[i]) ? kMissing : (column[i] - med) / s;
    return out;
}

struct PooledStandardized {
    std::vector<std::vector<double>> values;
    std::vector<double> centers;
    double scale = 1.0;
};

/// Each member column is centred at its own median; all share one scale,
/// the mean absolute deviation pooled over every observed member value.
inline PooledStandardized standardize_pooled(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw InvalidInput("standardize_pooled: no columns");
    PooledStandardized out;
    CompensatedSum dev;
    std::size_t count = 0;
    for (const auto& col : columns) {
        auto obs = observed(col);
        if (obs.empty()) throw InvalidInput("standardize_pooled: member column has no observed values");
        const double med = median(obs);
        out.centers.push_back(med);
        for (double x : obs) dev.add(std::abs(x - med));
        count += obs.size();
    }
    if (count < 2) throw InvalidInput("standardize_pooled: need at least two observed values");
    out.scale = dev.value() / static_cast<double>(count);
    if (!(out.scale > 0.0)) throw ConstantColumn("standardize_pooled: every member column is constant");
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::vector<double> v(columns[c].size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = is_missing(columns[c][i]) ? kMissing : (columns[c][i] - out.centers[c]) / out.scale;
        out.values.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Records and variable metadata

struct PlayerRecord {
    std::string id;
    double minutes_played = 0.0;
    std::unordered_map<std::string, double> raw_values;  // NaN = missing
    PositionSet positions;
    double league_score = 0.0;
    double team_points = 0.0;

    double raw(const std::string& column) const {
        auto it = raw_values.find(column);
        return it == raw_values.end() ? kMissing : it->second;
    }
};

enum class VariableKind { top_count, composition, success_rate, characteristic, appearance, position, league_team };

inline std::string_view to_string(VariableKind k) {
    switch (k) {
        case VariableKind::top_count: return "top_count";
        case VariableKind::composition: return "composition";
        case VariableKind::success_rate: return "success_rate";
        case VariableKind::characteristic: return "characteristic";
        case VariableKind::appearance: return "appearance";
        case VariableKind::position: return "position";
        case VariableKind::league_team: return "league_team";
    }
    return "?";
}

inline VariableKind parse_variable_kind(std::string_view s) {
    for (auto k : {VariableKind::top_count, VariableKind::composition, VariableKind::success_rate,
                   VariableKind::characteristic, VariableKind::appearance, VariableKind::position,
                   VariableKind::league_team})
        if (to_string(k) == s) return k;
    throw InvalidInput("unknown variable kind '" + std::string(s) + "'");
}

enum class TransformMode { none, fixed, fit };

/// One analysis variable. For compositions `weight` is the weight of the
/// whole composition; every member carries weight / (member count).
/// `parent` names the raw top-level count (composition) or the attempt
/// count (success rate).
struct VariableGroupSpec {
    std::string name;
    VariableKind kind = VariableKind::characteristic;
    std::string source;  // raw column, defaults to name
    std::optional<std::string> parent;
    std::optional<std::string> composition_id;
    double weight = 1.0;
    TransformMode transform = TransformMode::none;
    double shift = 0.0;  // used when transform == fixed
};

inline bool is_quantitative(VariableKind k) {
    return k != VariableKind::position && k != VariableKind::league_team;
}

/// One standardised analysis column. `structural` marks entries that are
/// missing because the parent top-level count is zero.
struct FeatureColumn {
    VariableGroupSpec spec;
    double effective_weight = 1.0;
    std::optional<std::size_t> parent_column;  // compositions: the top-level column
    std::optional<double> shift;                // applied log shift, if any
    double center = 0.0;
    double scale = 1.0;
    std::vector<double> values;
    std::vector<std::uint8_t> structural;
};

struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<PositionSet> positions;
    std::vector<double> league_score;  // standardised
    std::vector<double> team_points;   // standardised
    std::vector<FeatureColumn> columns;
    std::vector<std::string> dropped;  // constant variables removed during standardisation
    bool represented = false;
    bool transformed = false;
    bool standardized = false;

    std::size_t size() const { return ids.size(); }
};

struct PipelineOptions {
    std::vector<double> shift_grid = kDefaultShiftGrid;
};

namespace detail {

inline void validate_specs(const std::vector<VariableGroupSpec>& specs) {
    std::set<std::string> names;
    std::map<std::string, std::pair<std::string, double>> compositions;  // id -> (parent, weight)
    for (const auto& s : specs) {
        if (!names.insert(s.name).second) throw DataError("duplicate variable name '" + s.name + "'");
        if (!(s.weight > 0.0)) throw DataError("variable '" + s.name + "' needs a positive weight");
        if (s.kind == VariableKind::composition) {
            if (!s.parent || !s.composition_id)
                throw DataError("composition variable '" + s.name + "' needs parent and composition_id");
            auto [it, fresh] = compositions.try_emplace(*s.composition_id, *s.parent, s.weight);
            if (!fresh && (it->second.first != *s.parent || it->second.second != s.weight))
                throw DataError("composition '" + *s.composition_id + "' members disagree on parent or weight");
        }
        if (s.kind == VariableKind::success_rate && !s.parent)
            throw DataError("success-rate variable '" + s.name + "' needs a parent attempt count");
        if (s.transform != TransformMode::none && s.kind != VariableKind::top_count &&
            s.kind != VariableKind::characteristic && s.kind != VariableKind::appearance)
            throw DataError("variable '" + s.name + "': only count-like variables can be log transformed");
        if (s.transform == TransformMode::fit && s.kind != VariableKind::top_count)
            throw DataError("variable '" + s.name + "': shift fitting needs a top-level count");
    }
}

}  // namespace detail

/// Runs representation, transformation and standardisation. `previous`
/// supplies last-season records (matched by id) for variables whose shift
/// constant is fitted.
inline FeatureTable build_feature_table(const std::vector<PlayerRecord>& records,
                                        const std::vector<VariableGroupSpec>& specs,
                                        const std::vector<PlayerRecord>* previous = nullptr,
                                        const PipelineOptions& options = {}) {
    detail::validate_specs(specs);
    const std::size_t n = records.size();
    if (n < 2) throw InvalidInput("need at least two players");
    FeatureTable table;
    for (const auto& r : records) {
        if (!(r.minutes_played > 0.0)) throw InvalidInput("player '" + r.id + "' has no minutes played");
        if (r.positions.empty()) throw InvalidInput("player '" + r.id + "' has no positions");
        table.ids.push_back(r.id);
        table.positions.push_back(r.positions);
    }

    // --- representation
    std::map<std::string, std::vector<std::size_t>> members;  // composition id -> spec indices
    for (std::size_t s = 0; s < specs.size(); ++s)
        if (specs[s].kind == VariableKind::composition) members[*specs[s].composition_id].push_back(s);

    std::vector<FeatureColumn> cols;
    std::vector<std::size_t> spec_of;  // column -> spec index
    std::map<std::size_t, std::size_t> column_of_spec;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const auto& spec = specs[s];
        if (!is_quantitative(spec.kind)) continue;
        FeatureColumn c;
        c.spec = spec;
        if (c.spec.source.empty()) c.spec.source = c.spec.name;
        c.values.assign(n, kMissing);
        c.structural.assign(n, 0);
        c.effective_weight = spec.kind == VariableKind::composition
                                 ? spec.weight / static_cast<double>(members[*spec.composition_id].size())
                                 : spec.weight;
        column_of_spec[s] = cols.size();
        spec_of.push_back(s);
        cols.push_back(std::move(c));
    }

    for (auto& c : cols) {
        const auto& spec = c.spec;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = records[i];
            switch (spec.kind) {
                case VariableKind::top_count: {
                    const double x = r.raw(spec.source);
                    if (!is_missing(x)) {
                        if (x < 0.0) throw InvalidInput("negative count '" + spec.source + "' for " + r.id);
                        c.values[i] = per90(x, r.minutes_played);
                    }
                    break;
                }
                case VariableKind::success_rate: {
                    const double s = r.raw(spec.source), a = r.raw(*spec.parent);
                    if (!is_missing(s) && !is_missing(a)) {
                        auto v = success_rate(s, a);
                        if (v) c.values[i] = *v;
                    }
                    break;
                }
                case VariableKind::characteristic:
                case VariableKind::appearance: c.values[i] = r.raw(spec.source); break;
                default: break;
            }
        }
    }
    for (const auto& [id, idx] : members) {
        const std::string& parent = *specs[idx.front()].parent;
        std::vector<double> subs(idx.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = records[i];
            const double top = r.raw(parent);
            bool missing = is_missing(top);
            for (std::size_t m = 0; m < idx.size(); ++m) {
                std::string src = specs[idx[m]].source.empty() ? specs[idx[m]].name : specs[idx[m]].source;
                subs[m] = r.raw(src);
                missing = missing || is_missing(subs[m]);
            }
            if (missing) continue;
            std::optional<std::vector<double>> props;
            try {
                props = derive_composition(top, subs);
            } catch (const InvalidInput& e) {
                throw InvalidInput("composition '" + id + "' for player " + r.id + ": " + e.what());
            }
            for (std::size_t m = 0; m < idx.size(); ++m) {
                auto& col = cols[column_of_spec[idx[m]]];
                if (props)
                    col.values[i] = (*props)[m];
                else
                    col.structural[i] = 1;
            }
        }
    }
    // link compositions to the top-level column counting the same raw variable
    for (auto& c : cols) {
        if (c.spec.kind != VariableKind::composition) continue;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (cols[t].spec.kind == VariableKind::top_count && cols[t].spec.source == *c.spec.parent)
                c.parent_column = t;
        if (!c.parent_column)
            throw DataError("composition '" + c.spec.name + "' refers to '" + *c.spec.parent +
                            "', which is not a top-level count variable");
    }
    table.represented = true;

    // --- transformation
    std::unordered_map<std::string, const PlayerRecord*> prev_by_id;
    if (previous)
        for (const auto& r : *previous) prev_by_id[r.id] = &r;
    for (auto& c : cols) {
        if (c.spec.transform == TransformMode::none) continue;
        double shift = c.spec.shift;
        if (c.spec.transform == TransformMode::fit) {
            if (!previous) throw DataError("variable '" + c.spec.name + "' needs previous-season data to fit its shift");
            std::vector<SeasonPair> pairs;
            for (std::size_t i = 0; i < n; ++i) {
                auto it = prev_by_id.find(records[i].id);
                if (it == prev_by_id.end() || is_missing(c.values[i])) continue;
                const PlayerRecord& p = *it->second;
                const double x = p.raw(c.spec.source);
                if (is_missing(x) || !(p.minutes_played > 0.0)) continue;
                pairs.push_back({per90(x, p.minutes_played), c.values[i], p.minutes_played, records[i].minutes_played});
            }
            auto fit = fit_shift_constant(pairs, options.shift_grid);
            if (!fit.shift) continue;
            shift = *fit.shift;
        }
        for (double& v : c.values)
            if (!is_missing(v)) v = log_shift(v, shift);
        c.shift = shift;
    }
    table.transformed = true;

    // --- standardisation
    std::vector<bool> keep(cols.size(), true);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        auto& c = cols[k];
        if (c.spec.kind == VariableKind::composition) continue;
        try {
            auto st = standardize_mad_median(c.values);
            c.values = std::move(st.values);
            c.center = st.center;
            c.scale = st.scale;
        } catch (const ConstantColumn&) {
            keep[k] = false;
        } catch (const InvalidInput&) {
            keep[k] = false;
        }
    }
    for (const auto& [id, idx] : members) {
        std::vector<std::vector<double>> group;
        for (std::size_t s : idx) group.push_back(cols[column_of_spec[s]].values);
        try {
            auto st = standardize_pooled(group);
            for (std::size_t m = 0; m < idx.size(); ++m) {
                auto& c = cols[column_of_spec[idx[m]]];
                c.values = std::move(st.values[m]);
                c.center = st.centers[m];
                c.scale = st.scale;
            }
        } catch (const ConstantColumn&) {
            for (std::size_t s : idx) keep[column_of_spec[s]] = false;
        } catch (const InvalidInput&) {
            for (std::size_t s : idx) keep[column_of_spec[s]] = false;
        }
    }
    std::vector<std::size_t> remap(cols.size(), SIZE_MAX);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (!keep[k]) {
            table.dropped.push_back(cols[k].spec.name);
            continue;
        }
        remap[k] = table.columns.size();
        table.columns.push_back(std::move(cols[k]));
    }
    for (auto& c : table.columns)
        if (c.parent_column) {
            const std::size_t p = remap[*c.parent_column];
            c.parent_column = p == SIZE_MAX ? std::nullopt : std::optional<std::size_t>(p);
        }

    std::vector<double> league(n), team(n);
    for (std::size_t i = 0; i < n; ++i) {
        league[i] = records[i].league_score;
        team[i] = records[i].team_points;
    }
    // a constant league or team variable carries no information; it contributes zero
    auto standardize_or_zero = [n](const std::vector<double>& v) {
        try {
            return standardize_mad_median(v).values;
        } catch (const ConstantColumn&) {
            return std::vector<double>(n, 0.0);
        }
    };
    table.league_score = standardize_or_zero(league);
    table.team_points = standardize_or_zero(team);
    table.standardized = true;
    return table;
}

}  // namespace footclust
