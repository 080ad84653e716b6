#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"
#include "footclust/rng.hpp"

namespace footclust {

struct RandomClusteringResult {
    Clustering clustering;
    std::vector<std::size_t> centers;  // random_kcentroid only: center of cluster k at position k-1
};

/// Random clusterings used as a calibration reference.
///  - random_kcentroid: K distinct random centres, every point joins the nearest centre.
///  - random_nn / random_fn / random_avg: K distinct random seed points start the
///    clusters; the remaining points, in random order, join the cluster with the
///    smallest minimum / maximum / average dissimilarity to its current members.
/// Ties go to the cluster whose seed was drawn first.
inline RandomClusteringResult random_clustering_with_centers(const DissimilarityMatrix& d, int k, Method scheme,
                                                             std::uint64_t seed) {
    const std::size_t n = d.size();
    if (!is_random_scheme(scheme)) throw InvalidInput("random_clustering: not a random scheme");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw InvalidInput("random_clustering: K must be in 1..n");
    const std::size_t K = static_cast<std::size_t>(k);
    Rng rng(seed);
    const auto seeds = rng.sample_distinct(n, K);
    std::vector<int> raw(n, -1);
    for (std::size_t c = 0; c < K; ++c) raw[seeds[c]] = static_cast<int>(c);

    if (scheme == Method::random_kcentroid) {
        for (std::size_t i = 0; i < n; ++i) {
            if (raw[i] >= 0) continue;
            std::size_t arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < K; ++c) {
                const double v = d(i, seeds[c]);
                if (v < best) {
                    best = v;
                    arg = c;
                }
            }
            raw[i] = static_cast<int>(arg);
        }
    } else {
        std::vector<std::size_t> rest;
        rest.reserve(n - K);
        for (std::size_t i = 0; i < n; ++i)
            if (raw[i] < 0) rest.push_back(i);
        rng.shuffle(rest);
        std::vector<std::vector<std::size_t>> mem(K);
        for (std::size_t c = 0; c < K; ++c) mem[c].push_back(seeds[c]);
        for (std::size_t p : rest) {
            std::size_t arg = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < K; ++c) {
                double crit;
                if (scheme == Method::random_nn) {
                    crit = std::numeric_limits<double>::infinity();
                    for (std::size_t q : mem[c]) crit = std::min(crit, d(p, q));
                } else if (scheme == Method::random_fn) {
                    crit = 0.0;
                    for (std::size_t q : mem[c]) crit = std::max(crit, d(p, q));
                } else {
                    crit = 0.0;
                    for (std::size_t q : mem[c]) crit += d(p, q);
                    crit /= static_cast<double>(mem[c].size());
                }
                if (crit < best) {
                    best = crit;
                    arg = c;
                }
            }
            mem[arg].push_back(p);
            raw[p] = static_cast<int>(arg);
        }
    }

    RandomClusteringResult out;
    out.clustering = make_clustering(std::move(raw), scheme, seed);
    if (scheme == Method::random_kcentroid) {
        out.centers.assign(K, 0);
        for (std::size_t c = 0; c < K; ++c)
            out.centers[static_cast<std::size_t>(out.clustering.labels[seeds[c]] - 1)] = seeds[c];
    }
    return out;
}

inline Clustering random_clustering(const DissimilarityMatrix& d, int k, Method scheme, std::uint64_t seed) {
    return random_clustering_with_centers(d, k, scheme, seed).clustering;
}

}  // namespace footclust
