#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "footclust/csv.hpp"
#include "footclust/dissimilarity_matrix.hpp"
#include "footclust/error.hpp"

namespace footclust {

struct EmbeddingResult {
    Eigen::MatrixXd coordinates;  // n x dims
    std::vector<double> eigenvalues;  // top dims, before clamping
    double clamped_fraction = 0.0;  // |negative eigenvalue mass| / total |eigenvalue mass|
};

/// Classical (Torgerson) scaling: double-centre -d^2/2 and keep the top
/// eigenpairs. Each axis is signed so its largest-magnitude entry is positive.
inline EmbeddingResult classical_mds(const DissimilarityMatrix& d, int dims = 2) {
    const auto n = static_cast<Eigen::Index>(d.size());
    if (dims < 1 || n < dims + 1) throw InvalidInput("classical MDS needs n >= dims + 1");
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            b(i, j) = b(j, i) = -0.5 * v * v;
        }
    }
    const Eigen::VectorXd row = b.rowwise().mean();
    const double all = row.mean();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) b(i, j) += all - row(i) - row(j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw NumericError("classical MDS: eigendecomposition failed");
    const auto& lambda = es.eigenvalues();  // ascending
    EmbeddingResult r;
    double neg = 0.0, total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        total += std::abs(lambda(i));
        if (lambda(i) < 0.0) neg -= lambda(i);
    }
    r.clamped_fraction = total > 0.0 ? neg / total : 0.0;
    r.coordinates.resize(n, dims);
    for (int a = 0; a < dims; ++a) {
        const Eigen::Index col = n - 1 - a;
        Eigen::VectorXd v = es.eigenvectors().col(col);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < n; ++i)
            if (std::abs(v(i)) > std::abs(v(arg)) + 1e-12) arg = i;
        if (v(arg) < 0.0) v = -v;
        r.eigenvalues.push_back(lambda(col));
        r.coordinates.col(a) = v * std::sqrt(std::max(0.0, lambda(col)));
    }
    return r;
}

/// id,x,y,label
inline void write_mds_csv(const EmbeddingResult& e, const std::vector<std::string>& ids, const std::vector<int>& labels,
                          const std::string& path) {
    if (ids.size() != static_cast<std::size_t>(e.coordinates.rows()) || e.coordinates.cols() < 2)
        throw InvalidInput("MDS output: ids do not match the embedding");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << "id,x,y,label\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        out << csv::quote(ids[i]) << ',' << csv::format_number(e.coordinates(r, 0)) << ','
            << csv::format_number(e.coordinates(r, 1)) << ',';
        if (i < labels.size()) out << labels[i];
        out << '\n';
    }
}

}  // namespace footclust
