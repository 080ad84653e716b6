#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "footclust/error.hpp"

namespace footclust {

enum class Method { pam, single, average, complete, ward, spectral, random_kcentroid, random_nn, random_fn, random_avg };

inline constexpr Method kClusteringMethods[] = {Method::pam,      Method::single, Method::average,
                                                Method::complete, Method::ward,   Method::spectral};
inline constexpr Method kRandomSchemes[] = {Method::random_kcentroid, Method::random_nn, Method::random_fn,
                                            Method::random_avg};

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::pam: return "pam";
        case Method::single: return "single";
        case Method::average: return "average";
        case Method::complete: return "complete";
        case Method::ward: return "ward";
        case Method::spectral: return "spectral";
        case Method::random_kcentroid: return "random_kcentroid";
        case Method::random_nn: return "random_nn";
        case Method::random_fn: return "random_fn";
        case Method::random_avg: return "random_avg";
    }
    return "?";
}

inline Method parse_method(std::string_view s) {
    for (Method m : {Method::pam, Method::single, Method::average, Method::complete, Method::ward, Method::spectral,
                     Method::random_kcentroid, Method::random_nn, Method::random_fn, Method::random_avg})
        if (to_string(m) == s) return m;
    throw InvalidInput("unknown clustering method '" + std::string(s) + "'");
}

inline bool is_random_scheme(Method m) {
    return m == Method::random_kcentroid || m == Method::random_nn || m == Method::random_fn ||
           m == Method::random_avg;
}

/// A crisp partition with labels 1..K, every label used at least once.
struct Clustering {
    std::vector<int> labels;
    int k = 0;
    Method method = Method::pam;
    std::uint64_t seed = 0;

    std::size_t size() const { return labels.size(); }
};

/// Renumbers labels 1..K in order of first appearance and returns K.
inline int canonicalize(std::vector<int>& labels) {
    std::vector<std::pair<int, int>> map;  // old -> new
    int next = 0;
    for (int& l : labels) {
        auto it = std::find_if(map.begin(), map.end(), [l](const auto& p) { return p.first == l; });
        if (it == map.end()) {
            map.emplace_back(l, ++next);
            l = next;
        } else {
            l = it->second;
        }
    }
    return next;
}

/// Labels from arbitrary nonnegative group ids (e.g. union-find roots).
inline Clustering make_clustering(std::vector<int> raw, Method method, std::uint64_t seed = 0) {
    // dense remap is O(n) when ids are < n
    std::vector<int> map;
    int next = 0;
    for (int& l : raw) {
        if (l < 0) throw InvalidInput("negative group id");
        if (static_cast<std::size_t>(l) >= map.size()) map.resize(static_cast<std::size_t>(l) + 1, 0);
        int& m = map[static_cast<std::size_t>(l)];
        if (m == 0) m = ++next;
        l = m;
    }
    return Clustering{std::move(raw), next, method, seed};
}

/// Checks the partition invariant: labels in 1..K and every cluster nonempty.
inline void validate(const Clustering& c) {
    if (c.k < 1) throw InvalidInput("clustering has no clusters");
    std::vector<std::size_t> sizes(static_cast<std::size_t>(c.k), 0);
    for (int l : c.labels) {
        if (l < 1 || l > c.k) throw InvalidInput("cluster label out of range 1..K");
        ++sizes[static_cast<std::size_t>(l - 1)];
    }
    for (std::size_t s : sizes)
        if (s == 0) throw InvalidInput("clustering has an empty cluster");
}

inline std::vector<std::size_t> cluster_sizes(const Clustering& c) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(c.k), 0);
    for (int l : c.labels) ++sizes[static_cast<std::size_t>(l - 1)];
    return sizes;
}

/// Point indices per cluster (cluster k at position k-1).
inline std::vector<std::vector<std::size_t>> members(const Clustering& c) {
    std::vector<std::vector<std::size_t>> m(static_cast<std::size_t>(c.k));
    for (std::size_t i = 0; i < c.labels.size(); ++i) m[static_cast<std::size_t>(c.labels[i] - 1)].push_back(i);
    return m;
}

}  // namespace footclust
