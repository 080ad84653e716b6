#include <gtest/gtest.h>

#include <cmath>

#include "footclust/mds.hpp"
#include "oracles.hpp"

using namespace footclust;

namespace {

double max_distance_error(const DissimilarityMatrix& d, const Eigen::MatrixXd& x) {
    double worst = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
            worst = std::max(worst, std::fabs((x.row(a) - x.row(b)).norm() - d(i, j)));
        }
    return worst;
}

}  // namespace

TEST(Mds, EquilateralTriangle) {
    const auto d = DissimilarityMatrix::from_square({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    const auto e = classical_mds(d);
    EXPECT_LT(max_distance_error(d, e.coordinates), 1e-12);
    EXPECT_NEAR(e.eigenvalues[0], 0.5, 1e-12);
    EXPECT_NEAR(e.eigenvalues[1], 0.5, 1e-12);
}

TEST(Mds, RecoversPlanarConfiguration) {
    Rng rng(3);
    const auto x = oracle::random_points(rng, 60, 2);
    const auto d = oracle::euclidean(x);
    const auto e = classical_mds(d);
    EXPECT_LT(max_distance_error(d, e.coordinates), 1e-8);
    EXPECT_LT(e.clamped_fraction, 1e-10);
}

TEST(Mds, CoordinatesAreCentred) {
    Rng rng(4);
    const auto e = classical_mds(oracle::random_dissimilarity(rng, 25));
    for (Eigen::Index a = 0; a < 2; ++a) EXPECT_NEAR(e.coordinates.col(a).mean(), 0.0, 1e-10);
    EXPECT_GE(e.eigenvalues[0], e.eigenvalues[1]);
}

TEST(Mds, DuplicatesShareCoordinates) {
    Rng rng(5);
    auto x = oracle::random_points(rng, 12, 2);
    x[4] = x[9];
    const auto e = classical_mds(oracle::euclidean(x));
    EXPECT_LT((e.coordinates.row(4) - e.coordinates.row(9)).norm(), 1e-9);
}

TEST(Mds, NonEuclideanInputReportsClamping) {
    // violates the triangle inequality
    const auto d = DissimilarityMatrix::from_square({{0, 1, 5, 1}, {1, 0, 1, 5}, {5, 1, 0, 1}, {1, 5, 1, 0}});
    const auto e = classical_mds(d);
    EXPECT_GT(e.clamped_fraction, 0.0);
    EXPECT_TRUE(e.coordinates.allFinite());
}

TEST(Mds, Errors) {
    const auto d = DissimilarityMatrix::from_square({{0, 1}, {1, 0}});
    EXPECT_THROW(classical_mds(d, 2), InvalidInput);
    EXPECT_THROW(classical_mds(d, 0), InvalidInput);
}
