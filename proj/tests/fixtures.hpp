#pragma once

// Published reference values used as expected results.

#include <array>
#include <string>

namespace fixture {

/// Squared position distances; order DC DL DR DMC MC ML MR AMC AML AMR FW.
inline constexpr int kPositionDistanceSquared[11][11] = {
    {0, 1, 1, 1, 4, 5, 5, 9, 10, 10, 16},  {1, 0, 1, 2, 5, 4, 5, 10, 9, 10, 17},
    {1, 1, 0, 2, 5, 5, 4, 10, 10, 9, 17},  {1, 2, 2, 0, 1, 2, 2, 4, 5, 5, 9},
    {4, 5, 5, 1, 0, 1, 1, 1, 2, 2, 4},     {5, 4, 5, 2, 1, 0, 1, 2, 1, 2, 5},
    {5, 5, 4, 2, 1, 1, 0, 2, 2, 1, 5},     {9, 10, 10, 4, 1, 2, 2, 0, 1, 1, 1},
    {10, 9, 10, 5, 2, 1, 2, 1, 0, 1, 2},   {10, 10, 9, 5, 2, 2, 1, 1, 1, 0, 2},
    {16, 17, 17, 9, 4, 5, 5, 1, 2, 2, 0},
};

struct ScoreCase {
    int choices;
    int rank;
    double score;
};

/// Score assignment for ranked survey choices.
inline constexpr ScoreCase kScores[] = {{5, 1, 30}, {5, 2, 24}, {5, 3, 18}, {5, 4, 12}, {5, 5, 6},
                                        {3, 1, 30}, {3, 2, 20}, {3, 3, 10}, {2, 1, 30}, {2, 2, 15}};

/// Column totals of the published expert score matrix.
inline constexpr std::array<double, 8> kSurveyTotals = {1870, 1780, 1822, 1942, 1774, 1896, 1531, 1797};

inline constexpr double kPublishedMcP = 0.048;

inline std::string data_path(const std::string& name) { return std::string(FOOTCLUST_DATA_DIR) + "/" + name; }

}  // namespace fixture
