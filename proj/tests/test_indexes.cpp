#include <gtest/gtest.h>

#include <cmath>

#include "footclust/bootstab.hpp"
#include "footclust/indexes.hpp"
#include "oracles.hpp"

using namespace footclust;

namespace {

Clustering labels(std::vector<int> l) {
    int k = 0;
    for (int v : l) k = std::max(k, v);
    return Clustering{std::move(l), k, Method::pam, 0};
}

// 4 points, 2+2 clusters, within 1, between 3
DissimilarityMatrix four_points(double within = 1, double between = 3) {
    return DissimilarityMatrix::from_square({{0, within, between, between},
                                             {within, 0, between, between},
                                             {between, between, 0, within},
                                             {between, between, within, 0}});
}

}  // namespace

TEST(AveWithin, Examples) {
    auto d = four_points(2.5, 7);
    EXPECT_DOUBLE_EQ(ave_within(d, labels({1, 1, 2, 2})), 2.5);
    EXPECT_DOUBLE_EQ(ave_within(d, labels({1, 2, 3, 4})), 0.0);
    auto e = DissimilarityMatrix::from_square({{0, 2, 9}, {2, 0, 9}, {9, 9, 0}});
    EXPECT_DOUBLE_EQ(ave_within(e, labels({1, 1, 2})), 4.0 / 3.0);
}

TEST(Separation, Examples) {
    // sizes 10,10, all cross dissimilarities g
    DissimilarityMatrix d(20);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = i + 1; j < 20; ++j) d.set(i, j, (i < 10) == (j < 10) ? 0.5 : 4.0);
    std::vector<int> l(20, 1);
    for (std::size_t i = 10; i < 20; ++i) l[i] = 2;
    EXPECT_DOUBLE_EQ(separation_index(d, labels(l), 0.1), 4.0);

    auto two = DissimilarityMatrix::from_square({{0, 5}, {5, 0}});
    EXPECT_DOUBLE_EQ(separation_index(two, labels({1, 2}), 1.0), 5.0);
    EXPECT_THROW(separation_index(two, labels({1, 1}), 0.1), UndefinedIndex);
}

TEST(Separation, SmallClustersContributeOneBorderPoint) {
    // three clusters of 3; A and B touch at distance 1, C is at least 3 from both
    DissimilarityMatrix d(9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j) d.set(i, j, i / 3 == j / 3 ? 0.1 : 10.0);
    d.set(0, 3, 1.0);
    d.set(6, 1, 3.0);
    const auto c = labels({1, 1, 1, 2, 2, 2, 3, 3, 3});
    EXPECT_DOUBLE_EQ(separation_index(d, c, 0.1), (1.0 + 1.0 + 3.0) / 3.0);
    // p = 1 averages every border distance: A {1, 3, 10}, B {1, 10, 10}, C {3, 10, 10}
    EXPECT_DOUBLE_EQ(separation_index(d, c, 1.0), (14.0 + 21.0 + 23.0) / 9.0);
}

TEST(PearsonGamma, Examples) {
    EXPECT_NEAR(pearson_gamma(four_points(1, 3), labels({1, 1, 2, 2})), 1.0, 1e-14);
    EXPECT_NEAR(pearson_gamma(four_points(3, 1), labels({1, 1, 2, 2})), -1.0, 1e-14);
    auto d = DissimilarityMatrix::from_square({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
    EXPECT_NEAR(pearson_gamma(d, labels({1, 1, 2})), 1.0, 1e-14);
    EXPECT_THROW(pearson_gamma(d, labels({1, 1, 1})), UndefinedIndex);
    EXPECT_THROW(pearson_gamma(d, labels({1, 2, 3})), UndefinedIndex);
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(entropy(labels({1, 1, 2, 2})), std::log(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(entropy(labels({1, 1, 1})), 0.0);
    EXPECT_NEAR(entropy(labels({1, 2, 2, 2})), 0.5623351446188083, 1e-12);
}

TEST(Entropy, MaximalAtEqualSizes) {
    EXPECT_GT(entropy(labels({1, 1, 2, 2, 3, 3})), entropy(labels({1, 1, 1, 2, 2, 3})));
    EXPECT_NEAR(entropy(labels({1, 1, 2, 2, 3, 3})), std::log(3.0), 1e-15);
}

TEST(Literature, Examples) {
    const auto d = four_points();
    const auto c = labels({1, 1, 2, 2});
    EXPECT_NEAR(asw(d, c), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(dunn(d, c), 3.0, 1e-15);
    EXPECT_THROW(asw(d, labels({1, 1, 1, 1})), UndefinedIndex);
    EXPECT_THROW(ch(d, labels({1, 2, 3, 4})), UndefinedIndex);
    EXPECT_THROW(dunn(d, labels({1, 1, 1, 1})), UndefinedIndex);
}

TEST(Literature, ChMatchesCoordinateDefinition) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const std::size_t n = 5 + rng.index(20);
        const auto x = oracle::random_points(rng, n, 3);
        const auto l = oracle::random_labels(rng, n, 2 + static_cast<int>(rng.index(3)));
        EXPECT_NEAR(ch(oracle::euclidean(x), labels(l)), oracle::ch_coordinates(x, l), 1e-9);
    }
}

TEST(Ari, Examples) {
    const auto c = labels({1, 1, 2, 2, 3});
    EXPECT_DOUBLE_EQ(ari(c, c), 1.0);
    EXPECT_DOUBLE_EQ(ari(c, labels({3, 3, 1, 1, 2})), 1.0);
    EXPECT_LT(ari(c, labels({1, 2, 1, 2, 1})), 0.5);
}

TEST(Cvnn, NormalisedOverSet) {
    Rng rng(4);
    const auto d = oracle::two_groups(rng, 8, 8);
    std::vector<int> good(16, 1), bad(16, 1);
    for (std::size_t i = 8; i < 16; ++i) good[i] = 2;
    for (std::size_t i = 0; i < 16; i += 2) bad[i] = 2;
    const std::vector<Clustering> set = {labels(good), labels(bad)};
    const auto v = cvnn(d, set, 5);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_LT(v[0], v[1]);
    EXPECT_NEAR(v[1], 2.0, 1e-12);  // the bad clustering attains both maxima
}

TEST(Oracle, RandomInstancesMatchNaiveDefinitions) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        const std::size_t n = 3 + rng.index(10);
        const int k = 2 + static_cast<int>(rng.index(std::min<std::size_t>(n - 2, 4)));
        const auto d = seed % 2 ? oracle::random_dissimilarity(rng, n) : oracle::euclidean(oracle::random_points(rng, n, 2));
        const auto sq = oracle::square(d);
        const auto l = oracle::random_labels(rng, n, k);
        const auto c = labels(l);
        EXPECT_NEAR(ave_within(d, c), oracle::ave_within(sq, l), 1e-10);
        for (double p : {0.1, 0.5, 1.0}) EXPECT_NEAR(separation_index(d, c, p), oracle::separation(sq, l, p), 1e-10);
        EXPECT_NEAR(pearson_gamma(d, c), oracle::pearson_gamma(sq, l), 1e-10);
        EXPECT_NEAR(entropy(c), oracle::entropy(l), 1e-10);
        if (static_cast<std::size_t>(k) < n) {
            EXPECT_NEAR(asw(d, c), oracle::asw(sq, l), 1e-10);
            EXPECT_NEAR(ch(d, c), oracle::ch_dissimilarity(sq, l), 1e-10 * std::max(1.0, oracle::ch_dissimilarity(sq, l)));
            EXPECT_NEAR(dunn(d, c), oracle::dunn(sq, l), 1e-10);
        }
        const auto other = oracle::random_labels(rng, n, 2 + static_cast<int>(rng.index(3)));
        EXPECT_NEAR(ari(c, labels(other)), oracle::ari(l, other), 1e-10);
    }
}

TEST(Properties, ScaleBehaviour) {
    Rng rng(30);
    const auto d = oracle::random_dissimilarity(rng, 15);
    auto s = d;
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = i + 1; j < 15; ++j) s.set(i, j, 2.5 * d(i, j));
    const auto c = labels(oracle::random_labels(rng, 15, 3));
    EXPECT_NEAR(ave_within(s, c), 2.5 * ave_within(d, c), 1e-12);
    EXPECT_NEAR(separation_index(s, c), 2.5 * separation_index(d, c), 1e-12);
    EXPECT_NEAR(pearson_gamma(s, c), pearson_gamma(d, c), 1e-12);
    EXPECT_NEAR(asw(s, c), asw(d, c), 1e-12);
    EXPECT_NEAR(dunn(s, c), dunn(d, c), 1e-12);
}

TEST(Properties, PointReorderingInvariant) {
    Rng rng(31);
    const std::size_t n = 12;
    const auto d = oracle::random_dissimilarity(rng, n);
    const auto l = oracle::random_labels(rng, n, 3);
    const auto perm = rng.permutation(n);
    DissimilarityMatrix pd(n);
    std::vector<int> pl(n);
    for (std::size_t i = 0; i < n; ++i) {
        pl[i] = l[perm[i]];
        for (std::size_t j = i + 1; j < n; ++j) pd.set(i, j, d(perm[i], perm[j]));
    }
    const auto c = labels(l), pc = labels(pl);
    EXPECT_NEAR(ave_within(d, c), ave_within(pd, pc), 1e-12);
    EXPECT_NEAR(separation_index(d, c), separation_index(pd, pc), 1e-12);
    EXPECT_NEAR(pearson_gamma(d, c), pearson_gamma(pd, pc), 1e-12);
    EXPECT_NEAR(asw(d, c), asw(pd, pc), 1e-12);
    EXPECT_NEAR(ch(d, c), ch(pd, pc), 1e-9);
    EXPECT_NEAR(dunn(d, c), dunn(pd, pc), 1e-12);
}

TEST(Bootstab, SeparatedGroupsAreStable) {
    Rng rng(2);
    const auto d = oracle::two_groups(rng, 10, 10);
    for (Method m : kClusteringMethods) EXPECT_EQ(bootstab(d, m, 2, 5, {10}), 0.0) << to_string(m);
}

TEST(Bootstab, InUnitInterval) {
    Rng rng(3);
    const auto d = oracle::random_dissimilarity(rng, 25);
    for (Method m : {Method::pam, Method::average, Method::random_nn, Method::random_kcentroid}) {
        const double b = bootstab(d, m, 4, 8, {20});
        EXPECT_GE(b, 0.0);
        EXPECT_LE(b, 1.0);
    }
}

TEST(Bootstab, HandReplayOfTwoIterations) {
    Rng gen(5);
    const auto d = oracle::random_dissimilarity(gen, 6);
    const auto sq = oracle::square(d);
    const std::uint64_t seed = 42;
    double expected = 0.0;
    for (std::uint64_t b = 0; b < 2; ++b) {
        Rng rng(derive_seed(seed, "bootstab", {b}));
        std::vector<int> f[2];
        for (std::uint64_t t = 0; t < 2; ++t) {
            std::vector<std::size_t> distinct;
            for (;;) {
                std::vector<bool> hit(6, false);
                for (int i = 0; i < 6; ++i) hit[rng.index(6)] = true;
                distinct.clear();
                for (std::size_t i = 0; i < 6; ++i)
                    if (hit[i]) distinct.push_back(i);
                if (distinct.size() >= 2) break;
            }
            const auto fit = pam(d.subset(distinct), 2, derive_seed(seed, "bootstab-fit", {b, t}));
            f[t].assign(6, 0);
            for (std::size_t i = 0; i < distinct.size(); ++i) f[t][distinct[i]] = fit.clustering.labels[i];
            for (std::size_t p = 0; p < 6; ++p) {
                if (f[t][p]) continue;
                const double d1 = sq[p][distinct[fit.medoids[0]]], d2 = sq[p][distinct[fit.medoids[1]]];
                f[t][p] = d2 < d1 ? 2 : 1;
            }
        }
        double diff = 0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                diff += std::fabs(double(f[0][i] == f[0][j]) - double(f[1][i] == f[1][j]));
        expected += diff / 36.0;
    }
    EXPECT_NEAR(bootstab(d, Method::pam, 2, seed, {2}), expected / 2.0, 1e-15);
}

TEST(Bootstab, Errors) {
    Rng rng(1);
    const auto d = oracle::random_dissimilarity(rng, 5);
    EXPECT_THROW(bootstab(d, Method::pam, 6, 1), InvalidInput);
    EXPECT_THROW(bootstab(d, Method::pam, 2, 1, {0}), InvalidInput);
}
