#pragma once

// Cluster validity indexes on a dissimilarity matrix and a clustering.
// The first five measure separate aspects of clustering quality and feed the
// calibrated composite; ASW, CH, Dunn and CVNN are the usual stand-alone
// indexes, kept for comparison.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"
#include "footclust/stats.hpp"

namespace footclust {

enum class IndexId { ave_within, separation, pearson_gamma, entropy, bootstab, asw, ch, dunn, cvnn };
enum class Orientation { larger_better, smaller_better };

inline constexpr IndexId kAspectIndexes[] = {IndexId::ave_within, IndexId::separation, IndexId::pearson_gamma,
                                             IndexId::entropy, IndexId::bootstab};
inline constexpr IndexId kAllIndexes[] = {IndexId::ave_within, IndexId::separation, IndexId::pearson_gamma,
                                          IndexId::entropy,    IndexId::bootstab,   IndexId::asw,
                                          IndexId::ch,         IndexId::dunn,       IndexId::cvnn};

inline std::string_view to_string(IndexId id) {
    switch (id) {
        case IndexId::ave_within: return "ave_within";
        case IndexId::separation: return "separation";
        case IndexId::pearson_gamma: return "pearson_gamma";
        case IndexId::entropy: return "entropy";
        case IndexId::bootstab: return "bootstab";
        case IndexId::asw: return "asw";
        case IndexId::ch: return "ch";
        case IndexId::dunn: return "dunn";
        case IndexId::cvnn: return "cvnn";
    }
    return "?";
}

inline IndexId parse_index_id(std::string_view s) {
    for (IndexId id : kAllIndexes)
        if (to_string(id) == s) return id;
    throw InvalidInput("unknown index '" + std::string(s) + "'");
}

inline Orientation orientation(IndexId id) {
    switch (id) {
        case IndexId::ave_within:
        case IndexId::bootstab:
        case IndexId::cvnn: return Orientation::smaller_better;
        default: return Orientation::larger_better;
    }
}

inline std::string_view to_string(Orientation o) {
    return o == Orientation::larger_better ? "larger_better" : "smaller_better";
}

struct IndexValue {
    IndexId id = IndexId::ave_within;
    double value = 0.0;
    Orientation orientation = Orientation::larger_better;
};

inline IndexValue make_index_value(IndexId id, double value) { return {id, value, orientation(id)}; }

namespace detail {

inline void check_sizes(const DissimilarityMatrix& d, const Clustering& c) {
    if (c.size() != d.size()) throw InvalidInput("clustering and dissimilarity differ in size");
}

}  // namespace detail

/// Mean over points of the average dissimilarity to the other members of
/// its cluster; singleton clusters contribute zero.
inline double ave_within(const DissimilarityMatrix& d, const Clustering& c) {
    detail::check_sizes(d, c);
    const auto mem = members(c);
    double total = 0.0;
    for (const auto& m : mem) {
        if (m.size() < 2) continue;
        double s = 0.0;
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = a + 1; b < m.size(); ++b) s += d(m[a], m[b]);
        total += 2.0 * s / static_cast<double>(m.size() - 1);
    }
    return total / static_cast<double>(d.size());
}

/// Mean of the smallest floor(p n_k) (at least one) distances to another
/// cluster, pooled over clusters.
inline double separation_index(const DissimilarityMatrix& d, const Clustering& c, double p = 0.1) {
    detail::check_sizes(d, c);
    if (c.k < 2) throw UndefinedIndex("separation index needs at least two clusters");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidInput("separation index: p must be in (0, 1]");
    const std::size_t n = d.size();
    const auto mem = members(c);
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& m : mem) {
        std::vector<double> border;
        border.reserve(m.size());
        for (std::size_t i : m) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if (c.labels[j] != c.labels[i]) best = std::min(best, d(i, j));
            border.push_back(best);
        }
        std::sort(border.begin(), border.end());
        const auto take = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(p * static_cast<double>(m.size()) + 1e-9)));
        for (std::size_t t = 0; t < take; ++t) total += border[t];
        count += take;
    }
    return total / static_cast<double>(count);
}

/// Pearson correlation between the dissimilarities and the
/// "different cluster" indicator over all pairs.
inline double pearson_gamma(const DissimilarityMatrix& d, const Clustering& c) {
    detail::check_sizes(d, c);
    const std::size_t n = d.size();
    std::vector<double> ind;
    ind.reserve(d.pairs());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ind.push_back(c.labels[i] != c.labels[j] ? 1.0 : 0.0);
    try {
        return pearson(d.condensed(), ind);
    } catch (const UndefinedIndex&) {
        throw UndefinedIndex("Pearson gamma is undefined: dissimilarities or cluster indicator are constant");
    } catch (const InvalidInput&) {
        throw UndefinedIndex("Pearson gamma needs at least two pairs");
    }
}

inline double entropy(const Clustering& c) {
    const double n = static_cast<double>(c.size());
    double h = 0.0;
    for (std::size_t s : cluster_sizes(c)) {
        const double q = static_cast<double>(s) / n;
        if (q > 0.0) h -= q * std::log(q);
    }
    return h;
}

/// Average silhouette width; singleton clusters have silhouette 0.
inline double asw(const DissimilarityMatrix& d, const Clustering& c) {
    detail::check_sizes(d, c);
    const std::size_t n = d.size();
    if (c.k < 2 || static_cast<std::size_t>(c.k) >= n) throw UndefinedIndex("ASW needs 2 <= K < n");
    const auto sizes = cluster_sizes(c);
    const auto K = static_cast<std::size_t>(c.k);
    double total = 0.0;
    std::vector<double> sum(K);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum[static_cast<std::size_t>(c.labels[j] - 1)] += d(i, j);
        const auto own = static_cast<std::size_t>(c.labels[i] - 1);
        if (sizes[own] < 2) continue;
        const double a = sum[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K; ++k)
            if (k != own) b = std::min(b, sum[k] / static_cast<double>(sizes[k]));
        const double m = std::max(a, b);
        if (m > 0.0) total += (b - a) / m;
    }
    return total / static_cast<double>(n);
}

/// Calinski-Harabasz from the squared-dissimilarity decomposition
/// W_k = (1/n_k) sum_{i<j in C_k} d^2, T = (1/n) sum_{i<j} d^2.
inline double ch(const DissimilarityMatrix& d, const Clustering& c) {
    detail::check_sizes(d, c);
    const std::size_t n = d.size();
    if (c.k < 2 || static_cast<std::size_t>(c.k) >= n) throw UndefinedIndex("CH needs 2 <= K < n");
    const auto sizes = cluster_sizes(c);
    std::vector<double> within(static_cast<std::size_t>(c.k), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sq = d(i, j) * d(i, j);
            total += sq;
            if (c.labels[i] == c.labels[j]) within[static_cast<std::size_t>(c.labels[i] - 1)] += sq;
        }
    double w = 0.0;
    for (std::size_t k = 0; k < within.size(); ++k) w += within[k] / static_cast<double>(sizes[k]);
    const double t = total / static_cast<double>(n);
    if (!(w > 0.0)) throw UndefinedIndex("CH is undefined: zero within-cluster scatter");
    return ((t - w) / static_cast<double>(c.k - 1)) / (w / static_cast<double>(n - static_cast<std::size_t>(c.k)));
}

/// Smallest between-cluster dissimilarity over largest cluster diameter.
inline double dunn(const DissimilarityMatrix& d, const Clustering& c) {
    detail::check_sizes(d, c);
    const std::size_t n = d.size();
    if (c.k < 2 || static_cast<std::size_t>(c.k) >= n) throw UndefinedIndex("Dunn index needs 2 <= K < n");
    double between = std::numeric_limits<double>::infinity(), diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (c.labels[i] == c.labels[j])
                diameter = std::max(diameter, d(i, j));
            else
                between = std::min(between, d(i, j));
        }
    if (!(diameter > 0.0)) throw UndefinedIndex("Dunn index is undefined: all clusters have zero diameter");
    return between / diameter;
}

/// Raw CVNN components of one clustering before normalisation across a set.
struct CvnnParts {
    double separation = 0.0;   // max over clusters of mean share of foreign kappa-neighbours
    double compactness = 0.0;  // sum over clusters of mean within-cluster pair dissimilarity
};

/// kappa nearest neighbours of every point (ties by lower index).
inline std::vector<std::vector<std::size_t>> nearest_neighbours(const DissimilarityMatrix& d, std::size_t kappa) {
    const std::size_t n = d.size();
    kappa = std::min(kappa, n - 1);
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
        idx.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) idx.push_back(j);
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(kappa), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              const double da = d(i, a), db = d(i, b);
                              return da < db || (da == db && a < b);
                          });
        out[i].assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(kappa));
    }
    return out;
}

inline CvnnParts cvnn_parts(const DissimilarityMatrix& d, const Clustering& c,
                            const std::vector<std::vector<std::size_t>>& knn) {
    detail::check_sizes(d, c);
    const auto mem = members(c);
    CvnnParts out;
    for (const auto& m : mem) {
        double foreign = 0.0;
        for (std::size_t i : m) {
            std::size_t q = 0;
            for (std::size_t j : knn[i])
                if (c.labels[j] != c.labels[i]) ++q;
            foreign += static_cast<double>(q) / static_cast<double>(knn[i].size());
        }
        out.separation = std::max(out.separation, foreign / static_cast<double>(m.size()));
        if (m.size() >= 2) {
            double s = 0.0;
            for (std::size_t a = 0; a < m.size(); ++a)
                for (std::size_t b = a + 1; b < m.size(); ++b) s += d(m[a], m[b]);
            out.compactness += 2.0 * s / static_cast<double>(m.size() * (m.size() - 1));
        }
    }
    return out;
}

/// CVNN over a set of clusterings: separation and compactness are each
/// divided by their maximum over the set, then added. Smaller is better.
inline std::vector<double> cvnn(const DissimilarityMatrix& d, std::span<const Clustering> set, std::size_t kappa = 10) {
    if (set.empty()) return {};
    if (d.size() < 2) throw UndefinedIndex("CVNN needs at least two points");
    const auto knn = nearest_neighbours(d, kappa);
    std::vector<CvnnParts> parts;
    double max_sep = 0.0, max_com = 0.0;
    for (const auto& c : set) {
        if (c.k < 2) throw UndefinedIndex("CVNN needs at least two clusters");
        parts.push_back(cvnn_parts(d, c, knn));
        max_sep = std::max(max_sep, parts.back().separation);
        max_com = std::max(max_com, parts.back().compactness);
    }
    std::vector<double> out;
    for (const auto& p : parts)
        out.push_back((max_sep > 0.0 ? p.separation / max_sep : 0.0) + (max_com > 0.0 ? p.compactness / max_com : 0.0));
    return out;
}

/// Adjusted Rand index (Hubert & Arabie).
inline double ari(const Clustering& a, const Clustering& b) {
    if (a.size() != b.size()) throw InvalidInput("ari: clusterings differ in size");
    const std::size_t n = a.size();
    const auto ka = static_cast<std::size_t>(a.k), kb = static_cast<std::size_t>(b.k);
    std::vector<double> table(ka * kb, 0.0), ra(ka, 0.0), rb(kb, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = static_cast<std::size_t>(a.labels[i] - 1), y = static_cast<std::size_t>(b.labels[i] - 1);
        table[x * kb + y] += 1.0;
        ra[x] += 1.0;
        rb[y] += 1.0;
    }
    auto c2 = [](double v) { return v * (v - 1.0) / 2.0; };
    double index = 0.0, sa = 0.0, sb = 0.0;
    for (double v : table) index += c2(v);
    for (double v : ra) sa += c2(v);
    for (double v : rb) sb += c2(v);
    const double total = c2(static_cast<double>(n));
    const double expected = total > 0.0 ? sa * sb / total : 0.0;
    const double max_index = 0.5 * (sa + sb);
    if (max_index == expected) return 1.0;  // both trivial partitions
    return (index - expected) / (max_index - expected);
}

}  // namespace footclust
