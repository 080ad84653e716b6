#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "footclust/bootstab.hpp"
#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/hierarchical.hpp"
#include "footclust/indexes.hpp"
#include "footclust/methods.hpp"
#include "footclust/parallel.hpp"
#include "footclust/rng.hpp"
#include "footclust/spectral.hpp"

namespace footclust {

inline constexpr std::size_t kIndexCount = std::size(kAllIndexes);

inline std::size_t slot(IndexId id) { return static_cast<std::size_t>(id); }

/// Raw index values of one clustering. Undefined indexes are left empty.
struct PanelEntry {
    Method method = Method::pam;
    int k = 0;
    int replicate = 0;  // random clusterings: 0..B-1
    std::uint64_t seed = 0;
    std::array<std::optional<double>, kIndexCount> raw{};

    bool is_random() const { return is_random_scheme(method); }
    std::optional<double> operator[](IndexId id) const { return raw[slot(id)]; }
};

/// Method clusterings followed by the random calibration clusterings.
struct IndexPanel {
    std::vector<PanelEntry> entries;
    std::vector<Clustering> clusterings;  // method clusterings, aligned with the first entries
};

struct PanelConfig {
    int k_min = 2;
    int k_max = 10;
    std::vector<Method> methods{std::begin(kClusteringMethods), std::end(kClusteringMethods)};
    int b_calibration = 100;  // random clusterings per scheme and K
    int b_bootstab = 50;
    double sep_p = 0.1;
    std::size_t cvnn_kappa = 10;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

inline std::uint64_t clustering_seed(std::uint64_t master, Method m, int k, int replicate = 0) {
    return derive_seed(master, "cluster",
                       {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(replicate)});
}

inline std::uint64_t bootstab_seed(std::uint64_t master, Method m, int k, int replicate = 0) {
    return derive_seed(master, "bootstab",
                       {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(replicate)});
}

inline void check_k_range(const DissimilarityMatrix& d, const PanelConfig& cfg) {
    if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) throw InvalidInput("invalid K range");
    if (static_cast<std::size_t>(cfg.k_max) > d.size()) throw InvalidInput("K range exceeds the number of points");
}

/// All method clusterings over the K range, method-major then K ascending.
/// Hierarchical dendrograms and the spectral embedding are computed once per method.
inline std::vector<Clustering> cluster_grid(const DissimilarityMatrix& d, const PanelConfig& cfg) {
    check_k_range(d, cfg);
    const auto nk = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
    std::vector<Clustering> out(cfg.methods.size() * nk);
    parallel_for(cfg.methods.size(), cfg.threads, [&](std::size_t mi) {
        const Method m = cfg.methods[mi];
        std::optional<Dendrogram> dg;
        std::optional<SpectralEmbedding> emb;
        if (m == Method::single || m == Method::average || m == Method::complete || m == Method::ward)
            dg = hierarchical(d, m == Method::single    ? Linkage::single
                                 : m == Method::average ? Linkage::average
                                 : m == Method::complete ? Linkage::complete
                                                         : Linkage::ward);
        if (m == Method::spectral && d.size() > static_cast<std::size_t>(cfg.k_min)) emb.emplace(d);
        for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
            const auto seed = clustering_seed(cfg.seed, m, k);
            Clustering c;
            if (dg) {
                c = cut(*dg, k);
                c.seed = seed;
            } else if (emb && static_cast<std::size_t>(k) < d.size()) {
                c = emb->cluster(k, seed);
            } else {
                c = run_method(d, m, k, seed).clustering;
            }
            out[mi * nk + static_cast<std::size_t>(k - cfg.k_min)] = std::move(c);
        }
    });
    return out;
}

namespace detail {

template <class Fn>
std::optional<double> defined(Fn&& fn) {
    try {
        return fn();
    } catch (const UndefinedIndex&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// Aspect indexes (and, for method clusterings, ASW/CH/Dunn) of one clustering.
inline PanelEntry evaluate(const DissimilarityMatrix& d, const Clustering& c, int replicate, const PanelConfig& cfg,
                           bool literature) {
    PanelEntry e{c.method, c.k, replicate, c.seed, {}};
    e.raw[slot(IndexId::ave_within)] = ave_within(d, c);
    e.raw[slot(IndexId::separation)] = detail::defined([&] { return separation_index(d, c, cfg.sep_p); });
    e.raw[slot(IndexId::pearson_gamma)] = detail::defined([&] { return pearson_gamma(d, c); });
    e.raw[slot(IndexId::entropy)] = entropy(c);
    BootstabOptions bo;
    bo.iterations = cfg.b_bootstab;
    e.raw[slot(IndexId::bootstab)] = bootstab(d, c.method, c.k, bootstab_seed(cfg.seed, c.method, c.k, replicate), bo);
    if (literature) {
        e.raw[slot(IndexId::asw)] = detail::defined([&] { return asw(d, c); });
        e.raw[slot(IndexId::ch)] = detail::defined([&] { return ch(d, c); });
        e.raw[slot(IndexId::dunn)] = detail::defined([&] { return dunn(d, c); });
    }
    return e;
}

/// Index values of given method clusterings; CVNN is normalised over this set.
inline IndexPanel evaluate_clusterings(const DissimilarityMatrix& d, std::vector<Clustering> clusterings,
                                       const PanelConfig& cfg) {
    IndexPanel panel;
    panel.entries.resize(clusterings.size());
    parallel_for(clusterings.size(), cfg.threads,
                 [&](std::size_t i) { panel.entries[i] = evaluate(d, clusterings[i], 0, cfg, true); });
    std::vector<Clustering> multi;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < clusterings.size(); ++i)
        if (clusterings[i].k >= 2) {
            multi.push_back(clusterings[i]);
            where.push_back(i);
        }
    if (!multi.empty() && d.size() >= 2) {
        const auto v = cvnn(d, multi, cfg.cvnn_kappa);
        for (std::size_t i = 0; i < v.size(); ++i) panel.entries[where[i]].raw[slot(IndexId::cvnn)] = v[i];
    }
    panel.clusterings = std::move(clusterings);
    return panel;
}

/// Random clusterings (4 schemes x K range x B) with their aspect indexes.
inline std::vector<PanelEntry> random_pool(const DissimilarityMatrix& d, const PanelConfig& cfg) {
    check_k_range(d, cfg);
    const auto nk = static_cast<std::size_t>(cfg.k_max - cfg.k_min + 1);
    const auto B = static_cast<std::size_t>(cfg.b_calibration);
    std::vector<PanelEntry> out(std::size(kRandomSchemes) * nk * B);
    parallel_for(out.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t s = idx / (nk * B), rem = idx % (nk * B);
        const int k = cfg.k_min + static_cast<int>(rem / B);
        const int r = static_cast<int>(rem % B);
        const Method m = kRandomSchemes[s];
        const auto c = random_clustering(d, k, m, clustering_seed(cfg.seed, m, k, r));
        out[idx] = evaluate(d, c, r, cfg, false);
    });
    return out;
}

/// The full panel: method clusterings, their indexes, and the random pool.
inline IndexPanel build_panel(const DissimilarityMatrix& d, const PanelConfig& cfg) {
    auto panel = evaluate_clusterings(d, cluster_grid(d, cfg), cfg);
    auto pool = random_pool(d, cfg);
    panel.entries.insert(panel.entries.end(), pool.begin(), pool.end());
    return panel;
}

}  // namespace footclust
