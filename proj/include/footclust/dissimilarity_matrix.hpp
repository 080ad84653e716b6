#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "footclust/error.hpp"

namespace footclust {

/// Symmetric n x n dissimilarity with zero diagonal, stored as the condensed
/// upper triangle in row-major order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;

    explicit DissimilarityMatrix(std::size_t n) : n_(n), values_(pair_count(n), 0.0) {}

    DissimilarityMatrix(std::size_t n, std::vector<double> condensed) : n_(n), values_(std::move(condensed)) {
        if (values_.size() != pair_count(n)) throw InvalidInput("condensed vector has wrong length for n");
        for (double v : values_)
            if (!std::isfinite(v) || v < 0.0) throw InvalidInput("dissimilarities must be finite and nonnegative");
    }

    /// Builds from a full square matrix; checks symmetry and the zero diagonal.
    static DissimilarityMatrix from_square(const std::vector<std::vector<double>>& m, double tol = 1e-12) {
        const std::size_t n = m.size();
        DissimilarityMatrix d(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i].size() != n) throw InvalidInput("square matrix rows have unequal length");
            if (std::abs(m[i][i]) > tol) throw InvalidInput("nonzero diagonal");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(m[i][j] - m[j][i]) > tol) throw InvalidInput("matrix is not symmetric");
                if (!std::isfinite(m[i][j]) || m[i][j] < 0.0) throw InvalidInput("negative or non-finite entry");
                d.values_[d.index(i, j)] = m[i][j];
            }
        }
        return d;
    }

    static constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

    std::size_t size() const { return n_; }
    std::size_t pairs() const { return values_.size(); }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        return i < j ? values_[index(i, j)] : values_[index(j, i)];
    }

    void set(std::size_t i, std::size_t j, double v) {
        if (i == j) return;
        if (i > j) std::swap(i, j);
        values_[index(i, j)] = v;
    }

    const std::vector<double>& condensed() const { return values_; }

    /// Dissimilarity restricted to the listed points, in the listed order.
    DissimilarityMatrix subset(const std::vector<std::size_t>& idx) const {
        DissimilarityMatrix s(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) s.values_[s.index(a, b)] = (*this)(idx[a], idx[b]);
        return s;
    }

    std::size_t index(std::size_t i, std::size_t j) const { return n_ * i - i * (i + 1) / 2 + (j - i - 1); }

    bool operator==(const DissimilarityMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

namespace detail {

inline void put_le64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline std::uint64_t get_le64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw DataError("truncated dissimilarity file");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace detail

/// Binary layout: uint64 n, then n(n-1)/2 IEEE-754 doubles, all little-endian.
inline void write_binary(const DissimilarityMatrix& d, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot open for writing: " + path);
    detail::put_le64(os, d.size());
    for (double v : d.condensed()) detail::put_le64(os, std::bit_cast<std::uint64_t>(v));
    if (!os) throw DataError("write failed: " + path);
}

inline DissimilarityMatrix read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot open dissimilarity file: " + path);
    const std::uint64_t n = detail::get_le64(is);
    if (n > (1ULL << 24)) throw DataError("implausible matrix size in " + path);
    std::vector<double> v(DissimilarityMatrix::pair_count(n));
    for (double& x : v) x = std::bit_cast<double>(detail::get_le64(is));
    try {
        return DissimilarityMatrix(n, std::move(v));
    } catch (const InvalidInput& e) {
        throw DataError(path + ": " + e.what());
    }
}

/// Square CSV with the ids as header row and first column.
inline void write_csv(const DissimilarityMatrix& d, const std::vector<std::string>& ids, const std::string& path) {
    if (ids.size() != d.size()) throw InvalidInput("id count does not match matrix size");
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    os << std::setprecision(17) << "id";
    for (const auto& id : ids) os << ',' << id;
    os << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        os << ids[i];
        for (std::size_t j = 0; j < d.size(); ++j) os << ',' << d(i, j);
        os << '\n';
    }
}

}  // namespace footclust
