#pragma once

// CSV formats for ids, clusterings, index panels and rankings.

#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "footclust/calibration.hpp"
#include "footclust/clustering.hpp"
#include "footclust/csv.hpp"
#include "footclust/error.hpp"
#include "footclust/panel.hpp"

namespace footclust {

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    return os;
}

inline int parse_int(const std::string& cell, const std::string& where) {
    const double v = csv::parse_number(cell, where);
    if (is_missing(v) || v != static_cast<double>(static_cast<int>(v))) throw DataError(where + ": expected an integer");
    return static_cast<int>(v);
}

inline std::uint64_t parse_u64(const std::string& cell, const std::string& where) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) throw DataError(where + ": expected an unsigned integer");
    return v;
}

inline std::string where(const csv::Table& t, std::size_t row, std::string_view column) {
    return t.path + ":" + std::to_string(row + 2) + " column '" + std::string(column) + "'";
}

inline std::string opt_number(const std::optional<double>& v) { return v ? csv::format_number(*v) : ""; }

inline std::optional<double> parse_opt(const std::string& cell, const std::string& where) {
    const double v = csv::parse_number(cell, where);
    if (is_missing(v)) return std::nullopt;
    return v;
}

}  // namespace detail

inline void write_ids(const std::vector<std::string>& ids, const std::string& path) {
    auto os = detail::open_out(path);
    os << "id\n";
    for (const auto& id : ids) os << csv::quote(id) << '\n';
}

inline std::vector<std::string> read_ids(const std::string& path) {
    const auto t = csv::read(path);
    const auto c = t.require_column("id");
    std::vector<std::string> ids;
    for (const auto& r : t.rows) ids.push_back(r[c]);
    return ids;
}

/// Long format: id,method,K,label,seed.
inline void write_clusterings(const std::vector<Clustering>& cs, const std::vector<std::string>& ids,
                              const std::string& path) {
    auto os = detail::open_out(path);
    os << "id,method,K,label,seed\n";
    for (const auto& c : cs) {
        if (c.size() != ids.size()) throw InvalidInput("clustering size does not match the ids");
        for (std::size_t i = 0; i < c.size(); ++i)
            os << csv::quote(ids[i]) << ',' << to_string(c.method) << ',' << c.k << ',' << c.labels[i] << ',' << c.seed
               << '\n';
    }
}

/// Clusterings in file order of first appearance; rows are matched to `ids`.
inline std::vector<Clustering> read_clusterings(const std::string& path, const std::vector<std::string>& ids) {
    const auto t = csv::read(path);
    const auto ci = t.require_column("id"), cm = t.require_column("method"), ck = t.require_column("K"),
               cl = t.require_column("label"), cs = t.require_column("seed");
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
    std::vector<Clustering> out;
    std::map<std::pair<std::string, int>, std::size_t> which;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        Method m;
        try {
            m = parse_method(row[cm]);
        } catch (const InvalidInput& e) {
            throw DataError(detail::where(t, r, "method") + ": " + e.what());
        }
        const int k = detail::parse_int(row[ck], detail::where(t, r, "K"));
        auto [it, fresh] = which.try_emplace({row[cm], k}, out.size());
        if (fresh) {
            Clustering c;
            c.method = m;
            c.k = k;
            c.seed = detail::parse_u64(row[cs], detail::where(t, r, "seed"));
            c.labels.assign(ids.size(), 0);
            out.push_back(std::move(c));
        }
        auto p = pos.find(row[ci]);
        if (p == pos.end()) throw DataError(detail::where(t, r, "id") + ": unknown id '" + row[ci] + "'");
        out[it->second].labels[p->second] = detail::parse_int(row[cl], detail::where(t, r, "label"));
    }
    for (const auto& c : out) {
        try {
            validate(c);
        } catch (const InvalidInput& e) {
            throw DataError(path + ": " + std::string(to_string(c.method)) + " K=" + std::to_string(c.k) + ": " +
                            e.what());
        }
    }
    return out;
}

/// method,K,replicate,seed,index,raw,orientation; an empty raw cell marks an undefined index.
inline void write_panel(const std::vector<PanelEntry>& entries, const std::string& path) {
    auto os = detail::open_out(path);
    os << "method,K,replicate,seed,index,raw,orientation\n";
    for (const auto& e : entries)
        for (IndexId id : kAllIndexes) {
            if (e.is_random() && !e[id]) continue;
            if (id == IndexId::asw || id == IndexId::ch || id == IndexId::dunn || id == IndexId::cvnn)
                if (e.is_random()) continue;
            os << to_string(e.method) << ',' << e.k << ',' << e.replicate << ',' << e.seed << ',' << to_string(id) << ','
               << detail::opt_number(e[id]) << ',' << to_string(orientation(id)) << '\n';
        }
}

inline std::vector<PanelEntry> read_panel(const std::string& path) {
    const auto t = csv::read(path);
    const auto cm = t.require_column("method"), ck = t.require_column("K"), cr = t.require_column("replicate"),
               cs = t.require_column("seed"), ci = t.require_column("index"), cv = t.require_column("raw");
    std::vector<PanelEntry> out;
    std::map<std::tuple<std::string, int, int>, std::size_t> which;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        PanelEntry e;
        IndexId id;
        try {
            e.method = parse_method(row[cm]);
            id = parse_index_id(row[ci]);
        } catch (const InvalidInput& ex) {
            throw DataError(t.path + ":" + std::to_string(r + 2) + ": " + ex.what());
        }
        e.k = detail::parse_int(row[ck], detail::where(t, r, "K"));
        e.replicate = detail::parse_int(row[cr], detail::where(t, r, "replicate"));
        e.seed = detail::parse_u64(row[cs], detail::where(t, r, "seed"));
        auto [it, fresh] = which.try_emplace({row[cm], e.k, e.replicate}, out.size());
        if (fresh) out.push_back(e);
        out[it->second].raw[slot(id)] = detail::parse_opt(row[cv], detail::where(t, r, "raw"));
    }
    return out;
}

/// method,K,index,raw,orientation,calibrated for the non-random candidates.
inline void write_calibrated(const std::vector<CalibratedCandidate>& cands, CalibrationMode mode,
                             const std::string& path) {
    auto os = detail::open_out(path);
    os << "method,K,index,raw,orientation,calibrated,mode\n";
    for (const auto& c : cands)
        for (IndexId id : kAllIndexes) {
            std::optional<double> cal;
            for (std::size_t a = 0; a < std::size(kAspectIndexes); ++a)
                if (kAspectIndexes[a] == id) cal = c.calibrated[a];
            os << to_string(c.method) << ',' << c.k << ',' << to_string(id) << ',' << detail::opt_number(c.raw[slot(id)])
               << ',' << to_string(orientation(id)) << ',' << detail::opt_number(cal) << ',' << to_string(mode) << '\n';
        }
}

inline std::vector<CalibratedCandidate> read_calibrated(const std::string& path) {
    const auto t = csv::read(path);
    const auto cm = t.require_column("method"), ck = t.require_column("K"), ci = t.require_column("index"),
               cr = t.require_column("raw"), cc = t.require_column("calibrated");
    std::vector<CalibratedCandidate> out;
    std::map<std::pair<std::string, int>, std::size_t> which;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        CalibratedCandidate c;
        IndexId id;
        try {
            c.method = parse_method(row[cm]);
            id = parse_index_id(row[ci]);
        } catch (const InvalidInput& ex) {
            throw DataError(t.path + ":" + std::to_string(r + 2) + ": " + ex.what());
        }
        c.k = detail::parse_int(row[ck], detail::where(t, r, "K"));
        auto [it, fresh] = which.try_emplace({row[cm], c.k}, out.size());
        if (fresh) out.push_back(c);
        auto& dst = out[it->second];
        dst.raw[slot(id)] = detail::parse_opt(row[cr], detail::where(t, r, "raw"));
        for (std::size_t a = 0; a < std::size(kAspectIndexes); ++a)
            if (kAspectIndexes[a] == id) dst.calibrated[a] = detail::parse_opt(row[cc], detail::where(t, r, "calibrated"));
    }
    return out;
}

/// One row of the ranking table: a label and its top candidates.
struct RankingRow {
    std::string label;
    std::vector<RankedCandidate> top;
};

inline std::string candidate_label(const RankedCandidate& c) {
    return std::string(to_string(c.method)) + "(" + std::to_string(c.k) + ")";
}

/// index,first,first_value,...,fifth,fifth_value
inline void write_ranking_table(const std::vector<RankingRow>& rows, const std::string& path, std::size_t top = 5) {
    static const char* const names[] = {"first", "second", "third", "fourth", "fifth",
                                        "sixth", "seventh", "eighth", "ninth", "tenth"};
    top = std::min<std::size_t>(top, std::size(names));
    auto os = detail::open_out(path);
    os << "index";
    for (std::size_t r = 0; r < top; ++r) os << ',' << names[r] << ',' << names[r] << "_value";
    os << '\n';
    for (const auto& row : rows) {
        os << csv::quote(row.label);
        for (std::size_t r = 0; r < top; ++r) {
            if (r < row.top.size())
                os << ',' << candidate_label(row.top[r]) << ',' << csv::format_number(row.top[r].value);
            else
                os << ",,";
        }
        os << '\n';
    }
}

/// profile,rank,method,K,value for complete composite rankings.
inline void write_full_ranking(const std::vector<RankingRow>& rows, const std::string& path) {
    auto os = detail::open_out(path);
    os << "profile,rank,method,K,value\n";
    for (const auto& row : rows)
        for (std::size_t r = 0; r < row.top.size(); ++r)
            os << csv::quote(row.label) << ',' << r + 1 << ',' << to_string(row.top[r].method) << ',' << row.top[r].k
               << ',' << csv::format_number(row.top[r].value) << '\n';
}

}  // namespace footclust
