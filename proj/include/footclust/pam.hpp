#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"

namespace footclust {

struct PamResult {
    Clustering clustering;
    std::vector<std::size_t> medoids;  // medoid of cluster k at position k-1
    double objective = 0.0;            // sum of dissimilarities to the assigned medoid
};

namespace detail {

struct MedoidAssignment {
    std::vector<std::size_t> nearest;  // index into the medoid list
    std::vector<double> d1;            // distance to nearest medoid
    std::vector<double> d2;            // distance to second nearest (inf if K = 1)
    double cost = 0.0;
};

inline MedoidAssignment assign_to_medoids(const DissimilarityMatrix& d, const std::vector<std::size_t>& med) {
    const std::size_t n = d.size();
    MedoidAssignment a{std::vector<std::size_t>(n), std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        double b1 = std::numeric_limits<double>::infinity(), b2 = b1;
        std::size_t arg = 0;
        for (std::size_t m = 0; m < med.size(); ++m) {
            const double x = d(j, med[m]);
            if (x < b1) {
                b2 = b1;
                b1 = x;
                arg = m;
            } else if (x < b2) {
                b2 = x;
            }
        }
        a.nearest[j] = arg;
        a.d1[j] = b1;
        a.d2[j] = b2;
        a.cost += b1;
    }
    return a;
}

}  // namespace detail

/// Partitioning Around Medoids: greedy BUILD, then steepest-descent SWAP
/// until no exchange of a medoid with a non-medoid lowers the objective.
/// Ties go to the lowest index. The seed is recorded but PAM draws no
/// random numbers.
inline PamResult pam(const DissimilarityMatrix& d, int k, std::uint64_t seed = 0) {
    const std::size_t n = d.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) throw InvalidInput("pam: K must be in 1..n");
    const std::size_t K = static_cast<std::size_t>(k);

    // BUILD
    std::vector<std::size_t> med;
    std::vector<bool> is_med(n, false);
    {
        std::size_t first = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += d(i, j);
            if (s < best) {
                best = s;
                first = j;
            }
        }
        med.push_back(first);
        is_med[first] = true;
    }
    std::vector<double> dnear(n);
    for (std::size_t j = 0; j < n; ++j) dnear[j] = d(j, med[0]);
    while (med.size() < K) {
        std::size_t arg = n;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_med[c]) continue;
            double gain = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (!is_med[j] && j != c) gain += std::max(dnear[j] - d(j, c), 0.0);
            if (gain > best_gain) {
                best_gain = gain;
                arg = c;
            }
        }
        med.push_back(arg);
        is_med[arg] = true;
        for (std::size_t j = 0; j < n; ++j) dnear[j] = std::min(dnear[j], d(j, arg));
    }

    // SWAP
    auto a = detail::assign_to_medoids(d, med);
    if (K < n) {
        for (;;) {
            double best_delta = 0.0;
            std::size_t best_m = 0, best_h = 0;
            for (std::size_t m = 0; m < K; ++m) {
                for (std::size_t h = 0; h < n; ++h) {
                    if (is_med[h]) continue;
                    double cost = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        const double other = a.nearest[j] == m ? a.d2[j] : a.d1[j];
                        cost += std::min(other, d(j, h));
                    }
                    const double delta = cost - a.cost;
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_m = m;
                        best_h = h;
                    }
                }
            }
            if (!(best_delta < -1e-12 * std::max(1.0, a.cost))) break;
            is_med[med[best_m]] = false;
            med[best_m] = best_h;
            is_med[best_h] = true;
            a = detail::assign_to_medoids(d, med);
        }
    }

    // label clusters by medoid position order, then canonicalise by first appearance
    std::vector<std::size_t> order(K);
    for (std::size_t m = 0; m < K; ++m) order[m] = m;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return med[x] < med[y]; });
    std::vector<std::size_t> sorted_med(K);
    for (std::size_t m = 0; m < K; ++m) sorted_med[m] = med[order[m]];
    a = detail::assign_to_medoids(d, sorted_med);
    std::vector<int> raw(n);
    for (std::size_t j = 0; j < n; ++j) raw[j] = static_cast<int>(a.nearest[j]);
    // medoids always belong to their own cluster
    for (std::size_t m = 0; m < K; ++m) raw[sorted_med[m]] = static_cast<int>(m);

    PamResult out;
    out.clustering = make_clustering(raw, Method::pam, seed);
    out.medoids.assign(K, 0);
    for (std::size_t m = 0; m < K; ++m)
        out.medoids[static_cast<std::size_t>(out.clustering.labels[sorted_med[m]] - 1)] = sorted_med[m];
    out.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        out.objective += d(j, out.medoids[static_cast<std::size_t>(out.clustering.labels[j] - 1)]);
    return out;
}

}  // namespace footclust
