#pragma once

#include <limits>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/hierarchical.hpp"
#include "footclust/pam.hpp"
#include "footclust/random_clustering.hpp"
#include "footclust/spectral.hpp"

namespace footclust {

/// A clustering plus the representatives some classifiers need
/// (PAM medoids, random K-centroid centres).
struct FittedClustering {
    Clustering clustering;
    std::vector<std::size_t> centers;
};

inline FittedClustering run_method(const DissimilarityMatrix& d, Method m, int k, std::uint64_t seed) {
    switch (m) {
        case Method::pam: {
            auto r = pam(d, k, seed);
            return {std::move(r.clustering), std::move(r.medoids)};
        }
        case Method::single:
        case Method::average:
        case Method::complete:
        case Method::ward: {
            if (static_cast<std::size_t>(k) > d.size() || k < 1) throw InvalidInput("K must be in 1..n");
            const Linkage l = m == Method::single    ? Linkage::single
                              : m == Method::average ? Linkage::average
                              : m == Method::complete ? Linkage::complete
                                                      : Linkage::ward;
            if (d.size() == 1) return {Clustering{{1}, 1, m, seed}, {}};
            auto c = cut(hierarchical(d, l), k);
            c.seed = seed;
            return {std::move(c), {}};
        }
        case Method::spectral: return {spectral(d, k, seed), {}};
        default: {
            auto r = random_clustering_with_centers(d, k, m, seed);
            return {std::move(r.clustering), std::move(r.centers)};
        }
    }
}

/// Supervised rule assigning a point outside a clustered sample to one of its clusters.
enum class Classifier { nearest_center, nearest_neighbour, farthest_neighbour, average_dissimilarity };

inline Classifier default_classifier(Method m) {
    switch (m) {
        case Method::pam:
        case Method::random_kcentroid: return Classifier::nearest_center;
        case Method::random_nn: return Classifier::nearest_neighbour;
        case Method::random_fn: return Classifier::farthest_neighbour;
        default: return Classifier::average_dissimilarity;
    }
}

/// Cluster (1-based) for point `p` of the full data, given a clustering of
/// the points `sample` (sample[i] has label fit.clustering.labels[i]).
/// Centres in `fit.centers` index into `sample`. Ties go to the lower label.
inline int classify(const DissimilarityMatrix& d, std::size_t p, const std::vector<std::size_t>& sample,
                    const FittedClustering& fit, Classifier rule) {
    const int K = fit.clustering.k;
    if (rule == Classifier::nearest_center) {
        if (fit.centers.size() != static_cast<std::size_t>(K)) throw InvalidInput("classify: clustering has no centres");
        int arg = 1;
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < K; ++c) {
            const double v = d(p, sample[fit.centers[static_cast<std::size_t>(c)]]);
            if (v < best) {
                best = v;
                arg = c + 1;
            }
        }
        return arg;
    }
    std::vector<double> acc(static_cast<std::size_t>(K),
                            rule == Classifier::nearest_neighbour ? std::numeric_limits<double>::infinity() : 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(K), 0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto c = static_cast<std::size_t>(fit.clustering.labels[i] - 1);
        const double v = d(p, sample[i]);
        switch (rule) {
            case Classifier::nearest_neighbour: acc[c] = std::min(acc[c], v); break;
            case Classifier::farthest_neighbour: acc[c] = std::max(acc[c], v); break;
            default: acc[c] += v; break;
        }
        ++count[c];
    }
    int arg = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < K; ++c) {
        double v = acc[static_cast<std::size_t>(c)];
        if (rule == Classifier::average_dissimilarity) v /= static_cast<double>(count[static_cast<std::size_t>(c)]);
        if (v < best) {
            best = v;
            arg = c + 1;
        }
    }
    return arg;
}

}  // namespace footclust
