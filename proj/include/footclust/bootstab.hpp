#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"
#include "footclust/methods.hpp"
#include "footclust/rng.hpp"

namespace footclust {

namespace detail {

/// Fraction of ordered point pairs (i, i') whose co-membership differs
/// between two labelings, via the contingency table.
inline double comembership_disagreement(const std::vector<int>& l1, int k1, const std::vector<int>& l2, int k2) {
    const std::size_t n = l1.size();
    const auto K1 = static_cast<std::size_t>(k1), K2 = static_cast<std::size_t>(k2);
    std::vector<double> t(K1 * K2, 0.0), r1(K1, 0.0), r2(K2, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(l1[i] - 1), b = static_cast<std::size_t>(l2[i] - 1);
        t[a * K2 + b] += 1.0;
        r1[a] += 1.0;
        r2[b] += 1.0;
    }
    double s12 = 0.0, s1 = 0.0, s2 = 0.0;
    for (double v : t) s12 += v * v;
    for (double v : r1) s1 += v * v;
    for (double v : r2) s2 += v * v;
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return (s1 + s2 - 2.0 * s12) / nn;
}

}  // namespace detail

struct BootstabOptions {
    int iterations = 50;
    std::optional<Classifier> classifier;  // defaults per method
    int max_redraws = 100;
};

/// Labels for all n points from clustering one bootstrap sample: sampled
/// points keep their cluster, the others are classified.
inline std::vector<int> bootstrap_labels(const DissimilarityMatrix& d, const std::vector<std::size_t>& distinct,
                                         const FittedClustering& fit, Classifier rule) {
    const std::size_t n = d.size();
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < distinct.size(); ++i) labels[distinct[i]] = fit.clustering.labels[i];
    for (std::size_t p = 0; p < n; ++p)
        if (labels[p] == 0) labels[p] = classify(d, p, distinct, fit, rule);
    return labels;
}

/// Distinct points of a with-replacement bootstrap sample (sorted). Redraws
/// while fewer than K distinct points come up.
inline std::vector<std::size_t> draw_bootstrap(std::size_t n, int k, Rng& rng, int max_redraws) {
    for (int attempt = 0; attempt <= max_redraws; ++attempt) {
        std::vector<char> hit(n, 0);
        for (std::size_t i = 0; i < n; ++i) hit[rng.index(n)] = 1;
        std::vector<std::size_t> distinct;
        for (std::size_t i = 0; i < n; ++i)
            if (hit[i]) distinct.push_back(i);
        if (distinct.size() >= static_cast<std::size_t>(k)) return distinct;
    }
    throw NumericError("bootstab: bootstrap samples keep having fewer than K distinct points");
}

/// Bootstrap instability: B times, two bootstrap samples are clustered
/// with the same method and K, all points are labelled (classification for
/// points left out), and the share of point pairs whose co-membership
/// differs is averaged. 0 = perfectly stable.
inline double bootstab(const DissimilarityMatrix& d, Method method, int k, std::uint64_t seed,
                       const BootstabOptions& opt = {}) {
    const std::size_t n = d.size();
    if (opt.iterations < 1) throw InvalidInput("bootstab: need at least one iteration");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw InvalidInput("bootstab: K must be in 1..n");
    const Classifier rule = opt.classifier.value_or(default_classifier(method));
    double total = 0.0;
    for (int b = 0; b < opt.iterations; ++b) {
        Rng rng(derive_seed(seed, "bootstab", {static_cast<std::uint64_t>(b)}));
        std::vector<int> labels[2];
        int ks[2] = {0, 0};
        for (int t = 0; t < 2; ++t) {
            const auto distinct = draw_bootstrap(n, k, rng, opt.max_redraws);
            const auto fit = run_method(d.subset(distinct), method, k,
                                        derive_seed(seed, "bootstab-fit", {static_cast<std::uint64_t>(b),
                                                                           static_cast<std::uint64_t>(t)}));
            labels[t] = bootstrap_labels(d, distinct, fit, rule);
            ks[t] = fit.clustering.k;
        }
        total += detail::comembership_disagreement(labels[0], ks[0], labels[1], ks[1]);
    }
    return total / static_cast<double>(opt.iterations);
}

}  // namespace footclust
