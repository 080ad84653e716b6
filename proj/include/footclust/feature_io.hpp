#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "footclust/csv.hpp"
#include "footclust/features.hpp"

namespace footclust {

/// Players CSV: id, minutes, positions (';'-separated codes), league_score,
/// team_points, then any number of raw numeric columns. Empty cell = missing.
inline std::vector<PlayerRecord> read_players(const std::string& path) {
    auto t = csv::read(path);
    const std::size_t c_id = t.require_column("id"), c_min = t.require_column("minutes"),
                      c_pos = t.require_column("positions"), c_league = t.require_column("league_score"),
                      c_team = t.require_column("team_points");
    std::set<std::size_t> reserved{c_id, c_min, c_pos, c_league, c_team};
    std::vector<PlayerRecord> out;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::string where = path + ":" + std::to_string(r + 2);
        PlayerRecord p;
        p.id = row[c_id];
        if (p.id.empty()) throw DataError(where + ": column 'id' is empty");
        if (!seen.insert(p.id).second) throw DataError(where + ": duplicate id '" + p.id + "'");
        p.minutes_played = csv::parse_number(row[c_min], where + " column 'minutes'");
        try {
            p.positions = parse_position_set(row[c_pos]);
        } catch (const InvalidInput& e) {
            throw DataError(where + " column 'positions': " + e.what());
        }
        p.league_score = csv::parse_number(row[c_league], where + " column 'league_score'");
        p.team_points = csv::parse_number(row[c_team], where + " column 'team_points'");
        if (is_missing(p.league_score) || is_missing(p.team_points))
            throw DataError(where + ": league_score and team_points are required");
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            if (reserved.count(c)) continue;
            p.raw_values[t.header[c]] = csv::parse_number(row[c], where + " column '" + t.header[c] + "'");
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Metadata CSV: name, kind, source, parent, composition_id, weight, transform.
/// transform is empty/"none", "fit", or a positive shift constant.
/// Rows of kind position/league_team are accepted and describe the
/// reserved columns; they do not create quantitative variables.
inline std::vector<VariableGroupSpec> read_metadata(const std::string& path, const std::vector<std::string>& player_columns = {}) {
    auto t = csv::read(path);
    const std::size_t c_name = t.require_column("name"), c_kind = t.require_column("kind");
    auto opt = [&](const char* n) { return t.column(n); };
    const auto c_source = opt("source"), c_parent = opt("parent"), c_comp = opt("composition_id"),
               c_weight = opt("weight"), c_transform = opt("transform");
    std::vector<VariableGroupSpec> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const std::string where = path + ":" + std::to_string(r + 2);
        VariableGroupSpec s;
        s.name = row[c_name];
        try {
            s.kind = parse_variable_kind(row[c_kind]);
        } catch (const InvalidInput& e) {
            throw DataError(where + " column 'kind': " + e.what());
        }
        s.source = c_source && !row[*c_source].empty() ? row[*c_source] : s.name;
        if (c_parent && !row[*c_parent].empty()) s.parent = row[*c_parent];
        if (c_comp && !row[*c_comp].empty()) s.composition_id = row[*c_comp];
        if (c_weight && !row[*c_weight].empty()) {
            s.weight = csv::parse_number(row[*c_weight], where + " column 'weight'");
            if (!(s.weight > 0.0)) throw DataError(where + " column 'weight': must be positive");
        }
        if (c_transform) {
            const std::string& tr = row[*c_transform];
            if (tr.empty() || tr == "none") {
                s.transform = TransformMode::none;
            } else if (tr == "fit") {
                s.transform = TransformMode::fit;
            } else {
                s.transform = TransformMode::fixed;
                s.shift = csv::parse_number(tr, where + " column 'transform'");
                if (!(s.shift > 0.0)) throw DataError(where + " column 'transform': shift must be positive");
            }
        }
        if (!player_columns.empty() && is_quantitative(s.kind)) {
            auto has = [&](const std::string& c) {
                return std::find(player_columns.begin(), player_columns.end(), c) != player_columns.end();
            };
            if (!has(s.source)) throw DataError(where + ": column '" + s.source + "' not found in players file");
            if (s.parent && !has(*s.parent))
                throw DataError(where + ": parent column '" + *s.parent + "' not found in players file");
        }
        if (is_quantitative(s.kind)) out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<std::string> player_columns(const std::string& path) { return csv::read(path).header; }

/// Staged table as CSV (one row per player) plus a JSON sidecar manifest.
inline void write_feature_table(const FeatureTable& t, const std::string& csv_path, const std::string& manifest_path) {
    std::ofstream os(csv_path);
    if (!os) throw DataError("cannot open for writing: " + csv_path);
    os << "id,positions,league_score,team_points";
    for (const auto& c : t.columns) os << ',' << csv::quote(c.spec.name);
    os << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << csv::quote(t.ids[i]) << ',' << format_position_set(t.positions[i]) << ','
           << csv::format_number(t.league_score[i]) << ',' << csv::format_number(t.team_points[i]);
        for (const auto& c : t.columns) os << ',' << csv::format_number(c.values[i]);
        os << '\n';
    }
    if (!os) throw DataError("write failed: " + csv_path);

    nlohmann::ordered_json m;
    m["stages"] = {{"represented", t.represented}, {"transformed", t.transformed}, {"standardized", t.standardized}};
    m["players"] = t.size();
    auto& cols = m["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : t.columns) {
        nlohmann::ordered_json j;
        j["name"] = c.spec.name;
        j["kind"] = to_string(c.spec.kind);
        j["source"] = c.spec.source;
        j["parent"] = c.spec.parent ? nlohmann::ordered_json(*c.spec.parent) : nlohmann::ordered_json(nullptr);
        j["composition_id"] =
            c.spec.composition_id ? nlohmann::ordered_json(*c.spec.composition_id) : nlohmann::ordered_json(nullptr);
        j["weight"] = c.spec.weight;
        j["effective_weight"] = c.effective_weight;
        j["shift"] = c.shift ? nlohmann::ordered_json(*c.shift) : nlohmann::ordered_json(nullptr);
        j["center"] = c.center;
        j["scale"] = c.scale;
        cols.push_back(std::move(j));
    }
    m["dropped"] = t.dropped;
    std::ofstream ms(manifest_path);
    if (!ms) throw DataError("cannot open for writing: " + manifest_path);
    ms << m.dump(2) << '\n';
}

}  // namespace footclust
