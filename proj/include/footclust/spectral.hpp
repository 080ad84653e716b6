#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "footclust/clustering.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"
#include "footclust/rng.hpp"
#include "footclust/stats.hpp"

namespace footclust {

struct KMeansResult {
    std::vector<int> labels;  // 0-based
    double inertia = 0.0;
};

/// Lloyd's algorithm from k-means++ starts; the restart with the lowest
/// within-cluster sum of squares wins (first one on ties).
inline KMeansResult kmeans(const Eigen::MatrixXd& x, int k, Rng& rng, int restarts = 10, int max_iter = 100) {
    const Eigen::Index n = x.rows();
    KMeansResult best{{}, std::numeric_limits<double>::infinity()};
    for (int r = 0; r < restarts; ++r) {
        Eigen::MatrixXd centers(k, x.cols());
        centers.row(0) = x.row(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n))));
        Eigen::VectorXd dmin = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
        for (int c = 1; c < k; ++c) {
            const double total = dmin.sum();
            Eigen::Index pick = 0;
            if (total > 0.0) {
                double u = rng.uniform() * total;
                for (pick = 0; pick < n - 1; ++pick) {
                    u -= dmin(pick);
                    if (u < 0.0) break;
                }
            } else {
                pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
            }
            centers.row(c) = x.row(pick);
            dmin = dmin.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
        }
        std::vector<int> labels(static_cast<std::size_t>(n), -1);
        double inertia = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            bool changed = false;
            inertia = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                int arg = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (int c = 0; c < k; ++c) {
                    const double dd = (x.row(i) - centers.row(c)).squaredNorm();
                    if (dd < bd) {
                        bd = dd;
                        arg = c;
                    }
                }
                inertia += bd;
                if (labels[static_cast<std::size_t>(i)] != arg) {
                    labels[static_cast<std::size_t>(i)] = arg;
                    changed = true;
                }
            }
            if (!changed) break;
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, x.cols());
            std::vector<int> count(static_cast<std::size_t>(k), 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                sum.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
                ++count[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            }
            for (int c = 0; c < k; ++c) {
                if (count[static_cast<std::size_t>(c)] > 0) {
                    centers.row(c) = sum.row(c) / count[static_cast<std::size_t>(c)];
                    continue;
                }
                // empty cluster: restart it at the point farthest from its centre
                Eigen::Index far = 0;
                double fd = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double dd = (x.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
                    if (dd > fd) {
                        fd = dd;
                        far = i;
                    }
                }
                centers.row(c) = x.row(far);
            }
        }
        if (inertia < best.inertia) best = {labels, inertia};
    }
    return best;
}

/// Normalised affinity eigendecomposition of a dissimilarity matrix,
/// computed once and reusable for every K. Affinity is
/// exp(-d^2 / (2 sigma^2)) with sigma the median off-diagonal dissimilarity,
/// diagonal included (so duplicated points cannot be split).
class SpectralEmbedding {
public:
    explicit SpectralEmbedding(const DissimilarityMatrix& d) : n_(d.size()) {
        if (n_ < 2) return;
        sigma_ = median(d.condensed());
        if (!(sigma_ > 0.0)) {
            CompensatedSum s;
            std::size_t c = 0;
            for (double v : d.condensed())
                if (v > 0.0) {
                    s.add(v);
                    ++c;
                }
            if (c == 0) throw NumericError("spectral: all dissimilarities are zero");
            sigma_ = s.value() / static_cast<double>(c);
        }
        const Eigen::Index n = static_cast<Eigen::Index>(n_);
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                a(i, j) = a(j, i) = std::exp(-v * v / (2.0 * sigma_ * sigma_));
            }
        Eigen::VectorXd deg = a.rowwise().sum();
        Eigen::VectorXd inv_sqrt(n);
        for (Eigen::Index i = 0; i < n; ++i) inv_sqrt(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
        Eigen::MatrixXd l = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
        if (es.info() != Eigen::Success)
            throw NumericError("spectral: eigendecomposition failed (n = " + std::to_string(n_) + ")");
        vectors_ = es.eigenvectors();  // ascending eigenvalues
    }

    double sigma() const { return sigma_; }

    /// Rows of the top-K eigenvectors, scaled to unit length.
    Eigen::MatrixXd embed(int k) const {
        const Eigen::Index n = static_cast<Eigen::Index>(n_);
        Eigen::MatrixXd e = vectors_.rightCols(k);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double norm = e.row(i).norm();
            if (norm > 0.0) e.row(i) /= norm;
        }
        return e;
    }

    Clustering cluster(int k, std::uint64_t seed) const {
        if (k < 1 || static_cast<std::size_t>(k) > n_) throw InvalidInput("spectral: K must be in 1..n");
        if (static_cast<std::size_t>(k) == n_ || k == 1) {
            std::vector<int> raw(n_, 0);
            if (k > 1)
                for (std::size_t i = 0; i < n_; ++i) raw[i] = static_cast<int>(i);
            return make_clustering(std::move(raw), Method::spectral, seed);
        }
        Rng rng(seed);
        auto km = kmeans(embed(k), k, rng);
        return make_clustering(std::move(km.labels), Method::spectral, seed);
    }

private:
    std::size_t n_;
    double sigma_ = 0.0;
    Eigen::MatrixXd vectors_;
};

inline Clustering spectral(const DissimilarityMatrix& d, int k, std::uint64_t seed) {
    if (k < 1 || static_cast<std::size_t>(k) > d.size()) throw InvalidInput("spectral: K must be in 1..n");
    const std::size_t n = d.size();
    if (static_cast<std::size_t>(k) == n || k == 1) {
        std::vector<int> raw(n, 0);
        if (k > 1)
            for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<int>(i);
        return make_clustering(std::move(raw), Method::spectral, seed);
    }
    return SpectralEmbedding(d).cluster(k, seed);
}

}  // namespace footclust
