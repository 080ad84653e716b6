#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "footclust/error.hpp"

namespace footclust {

/// The eleven outfield positions, ordered as in the distance table.
enum class Position { DC, DL, DR, DMC, MC, ML, MR, AMC, AML, AMR, FW };

inline constexpr std::array<std::string_view, 11> kPositionCodes = {"DC", "DL",  "DR",  "DMC", "MC", "ML",
                                                                    "MR", "AMC", "AML", "AMR", "FW"};

using PositionSet = std::vector<Position>;

inline std::string_view to_string(Position p) { return kPositionCodes[static_cast<std::size_t>(p)]; }

inline Position parse_position(std::string_view code) {
    for (std::size_t i = 0; i < kPositionCodes.size(); ++i)
        if (kPositionCodes[i] == code) return static_cast<Position>(i);
    throw InvalidInput("unknown position code '" + std::string(code) + "'");
}

/// Parses a ';'-separated list such as "DMC;MC". Result is sorted and unique.
inline PositionSet parse_position_set(std::string_view text) {
    PositionSet out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(start, end - start);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (!tok.empty()) out.push_back(parse_position(tok));
        start = end + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw InvalidInput("empty position set");
    return out;
}

inline std::string format_position_set(const PositionSet& s) {
    std::string out;
    for (Position p : s) {
        if (!out.empty()) out += ';';
        out += to_string(p);
    }
    return out;
}

namespace detail {

// defence -> attack depth
inline int depth(Position p) {
    switch (p) {
        case Position::DC:
        case Position::DL:
        case Position::DR: return 0;
        case Position::DMC: return 1;
        case Position::MC:
        case Position::ML:
        case Position::MR: return 2;
        case Position::AMC:
        case Position::AML:
        case Position::AMR: return 3;
        case Position::FW: return 4;
    }
    return 0;
}

// 0 = central (FW included), 1 = left, 2 = right
inline int lateral(Position p) {
    switch (p) {
        case Position::DL:
        case Position::ML:
        case Position::AML: return 1;
        case Position::DR:
        case Position::MR:
        case Position::AMR: return 2;
        default: return 0;
    }
}

}  // namespace detail

/// Pitch distance between two positions: depth difference combined with a
/// 0/1 lateral mismatch. Left and right flanks are one unit apart, not two.
inline double position_distance(Position a, Position b) {
    const int dx = detail::depth(a) - detail::depth(b);
    const int dl = detail::lateral(a) == detail::lateral(b) ? 0 : 1;
    return std::sqrt(static_cast<double>(dx * dx + dl));
}

/// Squared distance as an exact integer.
inline int position_distance_squared(Position a, Position b) {
    const int dx = detail::depth(a) - detail::depth(b);
    const int dl = detail::lateral(a) == detail::lateral(b) ? 0 : 1;
    return dx * dx + dl;
}

inline double position_distance(std::string_view a, std::string_view b) {
    return position_distance(parse_position(a), parse_position(b));
}

}  // namespace footclust
