#pragma once

// Calibration of the aspect indexes against random clusterings, and their
// weighted aggregation into a composite index.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "footclust/error.hpp"
#include "footclust/panel.hpp"
#include "footclust/stats.hpp"

namespace footclust {

enum class CalibrationMode { C1, C2 };

inline std::string_view to_string(CalibrationMode m) { return m == CalibrationMode::C1 ? "C1" : "C2"; }

inline CalibrationMode parse_calibration_mode(std::string_view s) {
    if (s == "C1" || s == "c1") return CalibrationMode::C1;
    if (s == "C2" || s == "c2") return CalibrationMode::C2;
    throw InvalidInput("unknown calibration mode '" + std::string(s) + "' (expected C1 or C2)");
}

/// Larger-is-better version of a raw value.
inline double orient(IndexId id, double raw) { return orientation(id) == Orientation::smaller_better ? -raw : raw; }

inline std::vector<double> orient(IndexId id, std::span<const double> raw) {
    std::vector<double> out(raw.begin(), raw.end());
    for (double& v : out) v = orient(id, v);
    return out;
}

/// (v - mean) / sd with sd over m+q-1.
struct Standardizer {
    double mean = 0.0;
    double sd = 1.0;
    double operator()(double v) const { return (v - mean) / sd; }
};

inline Standardizer fit_standardizer(std::span<const double> values, std::string_view what) {
    if (values.size() < 2) throw DegenerateCalibration(std::string(what) + ": fewer than two pooled values");
    const double mu = mean(values);
    const double sd = sample_sd(values);
    if (!(sd > 0.0) || !std::isfinite(sd)) throw DegenerateCalibration(std::string(what) + ": pooled sd is zero");
    return {mu, sd};
}

/// Calibrated (oriented) values of one index for every panel entry; entries
/// without a raw value stay empty. C1 pools all entries, C2 pools entries with
/// the same K.
inline std::vector<std::optional<double>> calibrate(std::span<const PanelEntry> pool, IndexId id, CalibrationMode mode) {
    std::vector<std::optional<double>> out(pool.size());
    std::map<int, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto v = pool[i][id];
        if (!v) continue;
        if (!std::isfinite(*v)) throw NumericError(std::string(to_string(id)) + ": non-finite pooled value");
        strata[mode == CalibrationMode::C1 ? 0 : pool[i].k].push_back(i);
    }
    for (const auto& [k, idx] : strata) {
        std::vector<double> vals;
        vals.reserve(idx.size());
        for (std::size_t i : idx) vals.push_back(orient(id, *pool[i][id]));
        std::string what(to_string(id));
        if (mode == CalibrationMode::C2) what += " (K=" + std::to_string(k) + ")";
        const auto s = fit_standardizer(vals, what);
        for (std::size_t t = 0; t < idx.size(); ++t) out[idx[t]] = s(vals[t]);
    }
    return out;
}

/// One non-random candidate with raw values and calibrated aspect indexes.
struct CalibratedCandidate {
    Method method = Method::pam;
    int k = 0;
    std::array<std::optional<double>, kIndexCount> raw{};
    std::array<std::optional<double>, std::size(kAspectIndexes)> calibrated{};
};

/// Calibrates the aspect indexes over the whole panel and returns the
/// method (non-random) entries.
inline std::vector<CalibratedCandidate> calibrate_panel(std::span<const PanelEntry> pool, CalibrationMode mode) {
    std::vector<CalibratedCandidate> out;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!pool[i].is_random()) {
            out.push_back({pool[i].method, pool[i].k, pool[i].raw, {}});
            where.push_back(i);
        }
    for (std::size_t a = 0; a < std::size(kAspectIndexes); ++a) {
        const auto cal = calibrate(pool, kAspectIndexes[a], mode);
        for (std::size_t c = 0; c < out.size(); ++c) out[c].calibrated[a] = cal[where[c]];
    }
    return out;
}

/// Weights for (ave_within, separation, pearson_gamma, entropy, bootstab).
struct WeightProfile {
    std::array<double, 5> w{1, 1, 1, 1, 1};

    void validate() const {
        double s = 0.0;
        for (double v : w) {
            if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("weights must be nonnegative and finite");
            s += v;
        }
        if (!(s > 0.0)) throw InvalidInput("weights must not all be zero");
    }
};

inline WeightProfile profile_w1() { return {{1, 1, 1, 1, 1}}; }
inline WeightProfile profile_w2() { return {{1, 0.5, 1, 1, 1}}; }

inline WeightProfile parse_profile(std::string_view s) {
    if (s == "W1" || s == "w1") return profile_w1();
    if (s == "W2" || s == "w2") return profile_w2();
    // five comma-separated weights
    WeightProfile w;
    std::size_t j = 0, start = 0;
    for (; j < 5 && start <= s.size(); ++j) {
        const std::size_t end = std::min(s.find(',', start), s.size());
        const std::string tok(s.substr(start, end - start));
        char* stop = nullptr;
        w.w[j] = std::strtod(tok.c_str(), &stop);
        if (tok.empty() || *stop != '\0') j = 6;
        start = end + 1;
    }
    if (j != 5 || start <= s.size())
        throw InvalidInput("unknown weight profile '" + std::string(s) + "' (expected W1, W2 or five comma-separated weights)");
    w.validate();
    return w;
}

/// Weighted mean of calibrated values; indexes with zero weight may be missing.
inline double composite(std::span<const std::optional<double>> values, const WeightProfile& w) {
    w.validate();
    if (values.size() != w.w.size()) throw InvalidInput("composite: expected five calibrated values");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < w.w.size(); ++j) {
        if (w.w[j] == 0.0) continue;
        if (!values[j]) throw UndefinedIndex("composite: missing value for " + std::string(to_string(kAspectIndexes[j])));
        num += w.w[j] * *values[j];
        den += w.w[j];
    }
    return num / den;
}

inline double composite(std::span<const double> values, const WeightProfile& w) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return composite(v, w);
}

struct RankedCandidate {
    Method method = Method::pam;
    int k = 0;
    double value = 0.0;
};

/// Descending value; ties by smaller K, then method name.
inline void sort_ranking(std::vector<RankedCandidate>& r) {
    std::stable_sort(r.begin(), r.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.k != b.k) return a.k < b.k;
        return to_string(a.method) < to_string(b.method);
    });
}

/// Candidates ordered by composite; those missing a weighted index are left out.
inline std::vector<RankedCandidate> rank_candidates(std::span<const CalibratedCandidate> panel, const WeightProfile& w) {
    std::vector<RankedCandidate> out;
    for (const auto& c : panel) {
        if (is_random_scheme(c.method)) continue;
        try {
            out.push_back({c.method, c.k, composite(c.calibrated, w)});
        } catch (const UndefinedIndex&) {
        }
    }
    sort_ranking(out);
    return out;
}

/// Candidates ordered by one raw index (oriented); undefined values left out.
inline std::vector<RankedCandidate> rank_by_index(std::span<const CalibratedCandidate> panel, IndexId id) {
    std::vector<RankedCandidate> out;
    for (const auto& c : panel)
        if (const auto v = c.raw[slot(id)]; v && !is_random_scheme(c.method)) out.push_back({c.method, c.k, orient(id, *v)});
    sort_ranking(out);
    for (auto& r : out) r.value = orient(id, r.value);
    return out;
}

}  // namespace footclust
