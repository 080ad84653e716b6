#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"

namespace footclust {

enum class Linkage { single, average, complete, ward };

inline Method to_method(Linkage l) {
    switch (l) {
        case Linkage::single: return Method::single;
        case Linkage::average: return Method::average;
        case Linkage::complete: return Method::complete;
        case Linkage::ward: return Method::ward;
    }
    return Method::average;
}

/// Cluster ids: leaves are 0..n-1, the cluster formed by merge t is n + t.
struct Merge {
    std::size_t a = 0;
    std::size_t b = 0;
    double height = 0.0;
};

struct Dendrogram {
    std::size_t n = 0;
    Linkage linkage = Linkage::average;
    std::vector<Merge> merges;  // n - 1 entries
};

/// Agglomerative clustering with Lance-Williams updates. Ward works on
/// squared dissimilarities and reports heights on the original scale
/// (the "ward.D2" convention). The closest pair (i, j), i < j, is merged
/// first; ties go to the smallest i, then the smallest j.
inline Dendrogram hierarchical(const DissimilarityMatrix& d, Linkage linkage) {
    const std::size_t n = d.size();
    if (n < 2) throw InvalidInput("hierarchical: need at least two points");
    const bool ward = linkage == Linkage::ward;

    std::vector<double> D(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = ward ? d(i, j) * d(i, j) : d(i, j);
            D[i * n + j] = D[j * n + i] = v;
        }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return D[i * n + j]; };

    std::vector<bool> active(n, true);
    std::vector<std::size_t> id(n), size(n, 1);
    std::iota(id.begin(), id.end(), std::size_t{0});
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> nn(n, none);
    std::vector<double> nnd(n, inf);

    auto refresh = [&](std::size_t i) {
        nn[i] = none;
        nnd[i] = inf;
        for (std::size_t j = i + 1; j < n; ++j)
            if (active[j] && at(i, j) < nnd[i]) {
                nnd[i] = at(i, j);
                nn[i] = j;
            }
    };
    for (std::size_t i = 0; i < n; ++i) refresh(i);

    Dendrogram out{n, linkage, {}};
    out.merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t i = none;
        for (std::size_t r = 0; r < n; ++r)
            if (active[r] && nn[r] != none && (i == none || nnd[r] < nnd[i])) i = r;
        const std::size_t j = nn[i];
        const double h = at(i, j);
        const double ni = static_cast<double>(size[i]), nj = static_cast<double>(size[j]);

        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == i || k == j) continue;
            const double dki = at(k, i), dkj = at(k, j);
            double v = 0.0;
            switch (linkage) {
                case Linkage::single: v = std::min(dki, dkj); break;
                case Linkage::complete: v = std::max(dki, dkj); break;
                case Linkage::average: v = (ni * dki + nj * dkj) / (ni + nj); break;
                case Linkage::ward: {
                    const double nk = static_cast<double>(size[k]);
                    v = ((ni + nk) * dki + (nj + nk) * dkj - nk * h) / (ni + nj + nk);
                    break;
                }
            }
            at(k, i) = at(i, k) = v;
        }
        out.merges.push_back({std::min(id[i], id[j]), std::max(id[i], id[j]), ward ? std::sqrt(std::max(h, 0.0)) : h});
        active[j] = false;
        size[i] += size[j];
        id[i] = n + step;

        refresh(i);
        for (std::size_t k = 0; k < j; ++k) {
            if (!active[k] || k == i) continue;
            if (nn[k] == i || nn[k] == j) {
                refresh(k);
            } else if (k < i && (at(k, i) < nnd[k] || (at(k, i) == nnd[k] && i < nn[k]))) {
                nnd[k] = at(k, i);
                nn[k] = i;
            }
        }
    }
    return out;
}

/// The K-cluster partition obtained by applying the first n - K merges.
inline Clustering cut(const Dendrogram& dg, int k) {
    const std::size_t n = dg.n;
    if (k < 1 || static_cast<std::size_t>(k) > n) throw InvalidInput("cut: K must be in 1..n");
    std::vector<std::size_t> parent(n), rep(2 * n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::iota(rep.begin(), rep.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t t = 0; t < n - static_cast<std::size_t>(k); ++t) {
        const auto& m = dg.merges[t];
        const std::size_t ra = find(rep[m.a]), rb = find(rep[m.b]);
        parent[std::max(ra, rb)] = std::min(ra, rb);
        rep[n + t] = std::min(ra, rb);
    }
    std::vector<int> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<int>(find(i));
    return make_clustering(std::move(raw), to_method(dg.linkage));
}

}  // namespace footclust
