#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "footclust/error.hpp"

namespace footclust {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double x) { return std::isnan(x); }

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    return s.value();
}

inline double mean(std::span<const double> v) {
    return compensated_sum(v) / static_cast<double>(v.size());
}

/// Sample standard deviation, denominator size - 1. Requires two values.
inline double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    CompensatedSum s;
    for (double x : v) s.add((x - m) * (x - m));
    return std::sqrt(s.value() / static_cast<double>(v.size() - 1));
}

/// Median of the given values (copied; input untouched).
inline double median(std::vector<double> v) {
    if (v.empty()) throw InvalidInput("median of empty sample");
    const std::size_t h = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
    const double upper = v[h];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h));
    return 0.5 * (lower + upper);
}

inline std::vector<double> observed(std::span<const double> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v)
        if (!is_missing(x)) out.push_back(x);
    return out;
}

/// Pearson correlation; throws UndefinedIndex if either vector is constant.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("pearson: need two equal-length vectors");
    const double mx = mean(x), my = mean(y);
    CompensatedSum sxy, sxx, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    if (sxx.value() <= 0.0 || syy.value() <= 0.0) throw UndefinedIndex("correlation with a constant vector");
    return sxy.value() / std::sqrt(sxx.value() * syy.value());
}

/// Ranks 1..n with ties receiving the average of the positions they span.
inline std::vector<double> midranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace footclust
