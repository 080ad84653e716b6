#pragma once

// Slow reference implementations written straight from the definitions.
// They work on full square matrices and share no code with the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/rng.hpp"

namespace oracle {

using Square = std::vector<std::vector<double>>;

inline Square square(const footclust::DissimilarityMatrix& d) {
    Square m(d.size(), std::vector<double>(d.size(), 0.0));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) m[i][j] = d(i, j);
    return m;
}

inline std::map<int, std::vector<std::size_t>> groups(const std::vector<int>& l) {
    std::map<int, std::vector<std::size_t>> g;
    for (std::size_t i = 0; i < l.size(); ++i) g[l[i]].push_back(i);
    return g;
}

inline double ave_within(const Square& d, const std::vector<int>& l) {
    double total = 0.0;
    for (const auto& [k, m] : groups(l)) {
        if (m.size() < 2) continue;
        double s = 0.0;
        for (std::size_t i : m)
            for (std::size_t j : m)
                if (i != j) s += d[i][j];
        total += s / static_cast<double>(m.size() - 1);
    }
    return total / static_cast<double>(l.size());
}

inline double separation(const Square& d, const std::vector<int>& l, double p) {
    double total = 0.0;
    double count = 0.0;
    for (const auto& [k, m] : groups(l)) {
        std::multiset<double> border;
        for (std::size_t i : m) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < l.size(); ++j)
                if (l[j] != k) best = std::min(best, d[i][j]);
            border.insert(best);
        }
        int take = static_cast<int>(std::floor(p * static_cast<double>(m.size()) + 1e-9));
        if (take < 1) take = 1;
        auto it = border.begin();
        for (int t = 0; t < take; ++t, ++it) total += *it;
        count += take;
    }
    return total / count;
}

inline double pearson_gamma(const Square& d, const std::vector<int>& l) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            x.push_back(d[i][j]);
            y.push_back(l[i] == l[j] ? 0.0 : 1.0);
        }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        sx += x[t];
        sy += y[t];
    }
    const double mx = sx / n, my = sy / n;
    for (std::size_t t = 0; t < x.size(); ++t) {
        sxx += (x[t] - mx) * (x[t] - mx);
        syy += (y[t] - my) * (y[t] - my);
        sxy += (x[t] - mx) * (y[t] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double entropy(const std::vector<int>& l) {
    double h = 0.0;
    for (const auto& [k, m] : groups(l)) {
        const double q = static_cast<double>(m.size()) / static_cast<double>(l.size());
        h -= q * std::log(q);
    }
    return h;
}

inline double asw(const Square& d, const std::vector<int>& l) {
    const auto g = groups(l);
    double total = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        const auto& own = g.at(l[i]);
        if (own.size() == 1) continue;
        double a = 0.0;
        for (std::size_t j : own) a += d[i][j];
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [k, m] : g) {
            if (k == l[i]) continue;
            double s = 0.0;
            for (std::size_t j : m) s += d[i][j];
            b = std::min(b, s / static_cast<double>(m.size()));
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(l.size());
}

/// CH from coordinates: (tr B / (K-1)) / (tr W / (n-K)).
inline double ch_coordinates(const std::vector<std::vector<double>>& x, const std::vector<int>& l) {
    const std::size_t n = x.size(), dim = x[0].size();
    std::vector<double> grand(dim, 0.0);
    for (const auto& p : x)
        for (std::size_t a = 0; a < dim; ++a) grand[a] += p[a] / static_cast<double>(n);
    double within = 0.0, between = 0.0;
    const auto g = groups(l);
    for (const auto& [k, m] : g) {
        std::vector<double> c(dim, 0.0);
        for (std::size_t i : m)
            for (std::size_t a = 0; a < dim; ++a) c[a] += x[i][a] / static_cast<double>(m.size());
        for (std::size_t i : m)
            for (std::size_t a = 0; a < dim; ++a) within += (x[i][a] - c[a]) * (x[i][a] - c[a]);
        for (std::size_t a = 0; a < dim; ++a)
            between += static_cast<double>(m.size()) * (c[a] - grand[a]) * (c[a] - grand[a]);
    }
    const double K = static_cast<double>(g.size());
    return (between / (K - 1.0)) / (within / (static_cast<double>(n) - K));
}

/// CH from the squared-dissimilarity decomposition, summing ordered pairs.
inline double ch_dissimilarity(const Square& d, const std::vector<int>& l) {
    const std::size_t n = l.size();
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t += d[i][j] * d[i][j];
    t /= 2.0 * static_cast<double>(n);
    double w = 0.0;
    const auto g = groups(l);
    for (const auto& [k, m] : g) {
        double s = 0.0;
        for (std::size_t i : m)
            for (std::size_t j : m) s += d[i][j] * d[i][j];
        w += s / (2.0 * static_cast<double>(m.size()));
    }
    const double K = static_cast<double>(g.size());
    return ((t - w) / (K - 1.0)) / (w / (static_cast<double>(n) - K));
}

inline double dunn(const Square& d, const std::vector<int>& l) {
    double between = std::numeric_limits<double>::infinity(), diameter = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j) {
            if (i == j) continue;
            if (l[i] == l[j]) diameter = std::max(diameter, d[i][j]);
            else between = std::min(between, d[i][j]);
        }
    return between / diameter;
}

/// ARI from pair counts.
inline double ari(const std::vector<int>& a, const std::vector<int>& b) {
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j], sb = b[i] == b[j];
            if (sa && sb) ++n11;
            else if (sa) ++n10;
            else if (sb) ++n01;
            else ++n00;
        }
    const double den = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
    if (den == 0.0) return 1.0;
    return 2.0 * (n00 * n11 - n01 * n10) / den;
}

/// True if both label vectors describe the same partition.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [x, fx] = ab.emplace(a[i], b[i]);
        auto [y, fy] = ba.emplace(b[i], a[i]);
        if (x->second != b[i] || y->second != a[i]) return false;
    }
    return true;
}

enum class Link { single, average, complete };

/// Naive agglomeration recomputing every cluster-pair dissimilarity from the
/// points at every step (O(n^3) per step). Returns labels for cut at k and
/// the merge heights.
struct NaiveTree {
    std::vector<double> heights;
    std::vector<std::vector<std::vector<std::size_t>>> partitions;  // partitions[k] for k clusters
};

inline NaiveTree agglomerate(const Square& d, Link link) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> cl;
    for (std::size_t i = 0; i < n; ++i) cl.push_back({i});
    NaiveTree t;
    t.partitions.resize(n + 1);
    t.partitions[n] = cl;
    while (cl.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t ba = 0, bb = 1;
        for (std::size_t a = 0; a < cl.size(); ++a)
            for (std::size_t b = a + 1; b < cl.size(); ++b) {
                double v = link == Link::single ? std::numeric_limits<double>::infinity() : 0.0;
                for (std::size_t i : cl[a])
                    for (std::size_t j : cl[b]) {
                        if (link == Link::single) v = std::min(v, d[i][j]);
                        else if (link == Link::complete) v = std::max(v, d[i][j]);
                        else v += d[i][j];
                    }
                if (link == Link::average) v /= static_cast<double>(cl[a].size() * cl[b].size());
                if (v < best) {
                    best = v;
                    ba = a;
                    bb = b;
                }
            }
        cl[ba].insert(cl[ba].end(), cl[bb].begin(), cl[bb].end());
        cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(bb));
        t.heights.push_back(best);
        t.partitions[cl.size()] = cl;
    }
    return t;
}

/// Ward on Euclidean points: merge the pair with the smallest increase in
/// within-cluster sum of squares; height sqrt(2 * increase).
inline NaiveTree ward_points(const std::vector<std::vector<double>>& x) {
    const std::size_t n = x.size(), dim = x[0].size();
    std::vector<std::vector<std::size_t>> cl;
    for (std::size_t i = 0; i < n; ++i) cl.push_back({i});
    auto centroid = [&](const std::vector<std::size_t>& m) {
        std::vector<double> c(dim, 0.0);
        for (std::size_t i : m)
            for (std::size_t a = 0; a < dim; ++a) c[a] += x[i][a] / static_cast<double>(m.size());
        return c;
    };
    NaiveTree t;
    t.partitions.resize(n + 1);
    t.partitions[n] = cl;
    while (cl.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t ba = 0, bb = 1;
        for (std::size_t a = 0; a < cl.size(); ++a)
            for (std::size_t b = a + 1; b < cl.size(); ++b) {
                const auto ca = centroid(cl[a]), cb = centroid(cl[b]);
                double sq = 0.0;
                for (std::size_t k = 0; k < dim; ++k) sq += (ca[k] - cb[k]) * (ca[k] - cb[k]);
                const double na = static_cast<double>(cl[a].size()), nb = static_cast<double>(cl[b].size());
                const double inc = na * nb / (na + nb) * sq;
                if (inc < best) {
                    best = inc;
                    ba = a;
                    bb = b;
                }
            }
        cl[ba].insert(cl[ba].end(), cl[bb].begin(), cl[bb].end());
        cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(bb));
        t.heights.push_back(std::sqrt(2.0 * best));
        t.partitions[cl.size()] = cl;
    }
    return t;
}

inline std::vector<int> labels_of(const std::vector<std::vector<std::size_t>>& part, std::size_t n) {
    std::vector<int> l(n, 0);
    for (std::size_t c = 0; c < part.size(); ++c)
        for (std::size_t i : part[c]) l[i] = static_cast<int>(c) + 1;
    return l;
}

/// Smallest total dissimilarity to the nearest medoid over all K-subsets.
inline double best_medoid_objective(const Square& d, std::size_t k) {
    const std::size_t n = d.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j)
                if (pick[j]) m = std::min(m, d[i][j]);
            total += m;
        }
        best = std::min(best, total);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

inline double medoid_objective(const Square& d, const std::vector<std::size_t>& medoids) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t j : medoids) m = std::min(m, d[i][j]);
        total += m;
    }
    return total;
}

/// True when no exchange of one medoid for a non-medoid lowers the objective.
inline bool swap_local_optimum(const Square& d, const std::vector<std::size_t>& medoids, double tol = 1e-10) {
    const double base = medoid_objective(d, medoids);
    for (std::size_t m = 0; m < medoids.size(); ++m)
        for (std::size_t h = 0; h < d.size(); ++h) {
            if (std::find(medoids.begin(), medoids.end(), h) != medoids.end()) continue;
            auto alt = medoids;
            alt[m] = h;
            if (medoid_objective(d, alt) < base - tol) return false;
        }
    return true;
}

// Random instances

inline std::vector<std::vector<double>> random_points(footclust::Rng& rng, std::size_t n, std::size_t dim) {
    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    for (auto& p : x)
        for (double& v : p) v = rng.normal();
    return x;
}

inline footclust::DissimilarityMatrix euclidean(const std::vector<std::vector<double>>& x) {
    footclust::DissimilarityMatrix d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < x[i].size(); ++a) s += (x[i][a] - x[j][a]) * (x[i][a] - x[j][a]);
            d.set(i, j, std::sqrt(s));
        }
    return d;
}

/// Non-Euclidean dissimilarity with continuous random entries.
inline footclust::DissimilarityMatrix random_dissimilarity(footclust::Rng& rng, std::size_t n) {
    footclust::DissimilarityMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, rng.uniform(0.1, 10.0));
    return d;
}

/// Random labels 1..k with every cluster used.
inline std::vector<int> random_labels(footclust::Rng& rng, std::size_t n, int k) {
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) + 1
                                                                                 : static_cast<int>(rng.index(static_cast<std::size_t>(k))) + 1;
    rng.shuffle(l);
    return l;
}

/// Two tight groups far apart: within <= 0.1, between >= 10.
inline footclust::DissimilarityMatrix two_groups(footclust::Rng& rng, std::size_t n1, std::size_t n2) {
    const std::size_t n = n1 + n2;
    footclust::DissimilarityMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = (i < n1) == (j < n1);
            d.set(i, j, same ? rng.uniform(0.01, 0.1) : rng.uniform(10.0, 12.0));
        }
    return d;
}

}  // namespace oracle
