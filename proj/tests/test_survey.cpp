#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "footclust/survey.hpp"

using namespace footclust;

namespace {

SurveyDesign bundled_design() { return parse_design(load_json(fixture::data_path("survey_design.json"))); }

SurveyDesign tiny_design() {
    SurveyDesign d;
    d.selections = {{"a", Method::pam, {{2, 2}}}, {"b", Method::ward, {{2, 2}}}, {"c", Method::average, {{2, 2}}}};
    d.questions = {{3, {1, 2, 3}}, {2, {1, 1, 2}}};
    return d;
}

CalibratedCandidate candidate(Method m, int k, std::array<double, 5> v) {
    CalibratedCandidate c;
    c.method = m;
    c.k = k;
    for (std::size_t j = 0; j < 5; ++j) c.calibrated[j] = v[j];
    return c;
}

}  // namespace

TEST(ScoreRank, PublishedTable) {
    for (const auto& s : fixture::kScores) EXPECT_EQ(score_rank(s.choices, s.rank), s.score);
    EXPECT_THROW(score_rank(4, 1), InvalidInput);
    EXPECT_THROW(score_rank(3, 4), InvalidInput);
}

TEST(SelectionScores, AdditiveOverQuestions) {
    const auto d = tiny_design();
    ResponseSet r{{"x", "y"}, {{{2, 1, 3}, {1, 2}}, {{1, 2, 3}, {2, 1}}}};
    const auto m = selection_scores(d, r);
    EXPECT_EQ(m.scores[0], (std::vector<double>{20 + 30, 30 + 30, 10 + 15}));
    EXPECT_EQ(m.scores[1], (std::vector<double>{30 + 15, 20 + 15, 10 + 30}));
    EXPECT_EQ(m.totals, (std::vector<double>{95, 95, 65}));

    std::swap(r.ranks[0], r.ranks[1]);
    EXPECT_EQ(selection_scores(d, r).totals, m.totals);

    r.ranks[0][0] = {1, 1, 3};
    EXPECT_THROW(selection_scores(d, r), InvalidInput);
}

TEST(SelectionScores, BundledDesignShape) {
    const auto d = bundled_design();
    ASSERT_EQ(d.selections.size(), 8u);
    std::vector<int> counts;
    for (const auto& q : d.questions) counts.push_back(q.choices);
    EXPECT_EQ(counts, (std::vector<int>{5, 2, 3, 3, 3, 5, 5}));
    EXPECT_TRUE(d.selections[2].contains(Method::pam, 135));
    EXPECT_FALSE(d.selections[2].contains(Method::pam, 131));
    EXPECT_TRUE(d.selections[5].contains(Method::ward, 150));
}

TEST(SelectionScores, BundledMatrixLoads) {
    const auto d = bundled_design();
    const auto m = load_score_matrix(d, load_json(fixture::data_path("survey_scores.json")));
    EXPECT_EQ(m.experts.size(), 13u);
    EXPECT_EQ(m.experts.front(), "Head coach");
    ASSERT_EQ(m.totals.size(), 8u);
    for (std::size_t s = 0; s < 8; ++s)
        if (s != 6) EXPECT_EQ(m.totals[s], fixture::kSurveyTotals[s]);
}

TEST(McTest, Bounds) {
    const auto d = tiny_design();
    // equal totals: every simulation is at least as extreme
    const double flat[] = {100, 100, 100};
    const auto low = mc_randomness_test(d, flat, 4, 200, 3);
    EXPECT_DOUBLE_EQ(low.p_value, 1.0);
    const double spread[] = {1e6, 0, -1e6};
    const auto high = mc_randomness_test(d, spread, 4, 200, 3);
    EXPECT_DOUBLE_EQ(high.p_value, 1.0 / 201.0);
}

TEST(McTest, DeterministicAcrossThreads) {
    const auto d = bundled_design();
    const auto a = mc_randomness_test(d, fixture::kSurveyTotals, 13, 300, 11, 1);
    const auto b = mc_randomness_test(d, fixture::kSurveyTotals, 13, 300, 11, 4);
    EXPECT_EQ(a.exceed, b.exceed);
    EXPECT_EQ(a.statistic, b.statistic);
}

TEST(McTest, NullPValuesRoughlyUniform) {
    const auto d = tiny_design();
    std::vector<double> p;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(99, "observed", {s}));
        const auto totals = simulate_totals(d, 6, rng);
        p.push_back(mc_randomness_test(d, totals, 6, 199, s).p_value);
    }
    std::sort(p.begin(), p.end());
    double ks = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        ks = std::max(ks, std::fabs(p[i] - static_cast<double>(i + 1) / static_cast<double>(p.size())));
    // discrete statistic, so the bound is loose
    EXPECT_LT(ks, 0.2);
}

TEST(Spearman, Examples) {
    const double a[] = {1, 2, 3}, b[] = {10, 20, 30}, c[] = {3, 2, 1};
    EXPECT_NEAR(spearman(a, b), 1.0, 1e-15);
    EXPECT_NEAR(spearman(a, c), -1.0, 1e-15);
    const double t1[] = {1, 2, 2, 4}, t2[] = {1, 3, 3, 4};
    EXPECT_NEAR(spearman(t1, t2), 1.0, 1e-15);
    const double k[] = {5, 5, 5};
    EXPECT_THROW(spearman(a, k), UndefinedIndex);
    EXPECT_THROW(spearman(std::span<const double>(a, 2), std::span<const double>(b, 2)), InvalidInput);
}

TEST(Spearman, MonotoneTransformInvariant) {
    Rng rng(5);
    std::vector<double> x(20), y(20), ex(20);
    for (std::size_t i = 0; i < 20; ++i) {
        x[i] = rng.normal();
        y[i] = x[i] + rng.normal();
        ex[i] = std::exp(3 * x[i]);
    }
    EXPECT_NEAR(spearman(x, y), spearman(ex, y), 1e-14);
}

TEST(WeightGrid, Shape) {
    const auto g = default_weight_grid();
    ASSERT_EQ(g.size(), 1023u);
    EXPECT_EQ(g.front().w, (std::array<double, 5>{0, 0, 0, 0, 0.25}));
    EXPECT_EQ(g.back().w, (std::array<double, 5>{1, 1, 1, 1, 1}));
}

namespace {

// index 3 increases with the sum scores, indexes 4 and 5 decrease, 1 and 2 are scrambled
struct SearchFixture {
    std::vector<Selection> selections;
    std::vector<CalibratedCandidate> panel;
    std::vector<double> sums = {10, 40, 20, 30, 50};
};

SearchFixture search_fixture() {
    SearchFixture f;
    const double scramble1[] = {3, -1, 2, -2, 0}, scramble2[] = {0, 2, -3, 1, -1};
    for (int s = 0; s < 5; ++s) {
        const int k = 2 + s;
        f.selections.push_back({"s" + std::to_string(s), Method::pam, {{k, k}}});
        const double level = f.sums[static_cast<std::size_t>(s)] / 10.0;
        f.panel.push_back(candidate(Method::pam, k, {scramble1[s], scramble2[s], level, -level, -2 * level}));
    }
    return f;
}

}  // namespace

TEST(WeightSearch, SingletonGrid) {
    const auto f = search_fixture();
    const std::vector<WeightProfile> grid = {WeightProfile{{0, 0, 0, 0.5, 1}}};
    const auto r = weight_search(f.panel, f.selections, f.sums, grid);
    EXPECT_EQ(r.best.w, grid[0].w);
    EXPECT_NEAR(r.correlation, -1.0, 1e-14);
}

TEST(WeightSearch, ConstructedFixturePutsAllWeightOnMonotoneIndex) {
    const auto f = search_fixture();
    const auto r = weight_search(f.panel, f.selections, f.sums, default_weight_grid(), 2);
    EXPECT_NEAR(r.correlation, 1.0, 1e-14);
    for (std::size_t j = 0; j < 5; ++j)
        if (j == 2)
            EXPECT_GT(r.best.w[j], 0.0);
        else
            EXPECT_EQ(r.best.w[j], 0.0);
}

TEST(WeightSearch, RescalingGridVectorKeepsCorrelation) {
    const auto f = search_fixture();
    const auto g = default_weight_grid();
    std::vector<WeightProfile> scaled = g;
    for (auto& w : scaled)
        for (double& x : w.w) x *= 3.0;
    const auto a = weight_search(f.panel, f.selections, f.sums, g);
    const auto b = weight_search(f.panel, f.selections, f.sums, scaled);
    for (std::size_t i = 0; i < g.size(); ++i) {
        ASSERT_EQ(a.all[i].correlation.has_value(), b.all[i].correlation.has_value());
        if (a.all[i].correlation) EXPECT_NEAR(*a.all[i].correlation, *b.all[i].correlation, 1e-12);
    }
}

TEST(WeightSearch, Errors) {
    auto f = search_fixture();
    EXPECT_THROW(weight_search(f.panel, f.selections, f.sums, {}), InvalidInput);
    f.selections.back().k_ranges = {{40, 50}};
    EXPECT_THROW(weight_search(f.panel, f.selections, f.sums, default_weight_grid()), InvalidInput);
}

TEST(SurveyJson, BadDocuments) {
    EXPECT_THROW(load_json(fixture::data_path("no_such_file.json")), DataError);
    EXPECT_THROW(parse_design(nlohmann::json::parse(R"({"selections": []})")), DataError);
    EXPECT_THROW(parse_design(nlohmann::json::parse(
                     R"({"selections":[{"method":"pam","k":[[2,3]]}],"questions":[{"choices":4,"choice_of_selection":[1]}]})")),
                 InvalidInput);
}
