// footclust command line: one subcommand per stage, plus `run` for the whole workflow.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "footclust.hpp"

using namespace footclust;
namespace fs = std::filesystem;

namespace {

// Flags shared by every subcommand; anything set here beats the config file.
struct Common {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

struct Overrides {
    std::optional<std::string> players, metadata, previous, design, responses;
    std::optional<int> k_min, k_max, b_calibration, b_bootstab;
    std::vector<std::string> methods, profiles;
    std::optional<std::string> mode;
    std::optional<double> sep_p, geco_cutoff;
    std::vector<double> group_weights;
    std::optional<std::size_t> cvnn_kappa, mc_sims;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON run configuration");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

RunConfig resolve(const Common& cm, const Overrides& o) {
    RunConfig c = cm.config ? load_config(*cm.config) : RunConfig{};
    if (cm.out) c.out = *cm.out;
    if (cm.seed) c.seed = *cm.seed;
    if (cm.threads) c.threads = *cm.threads;
    if (o.players) c.players = *o.players;
    if (o.metadata) c.metadata = *o.metadata;
    if (o.previous) c.previous = *o.previous;
    if (o.design) c.survey_design = *o.design;
    if (o.responses) c.survey_responses = *o.responses;
    if (o.k_min) c.k_min = *o.k_min;
    if (o.k_max) c.k_max = *o.k_max;
    if (o.b_calibration) c.b_calibration = *o.b_calibration;
    if (o.b_bootstab) c.b_bootstab = *o.b_bootstab;
    if (!o.methods.empty()) {
        c.methods.clear();
        for (const auto& m : o.methods) c.methods.push_back(parse_method(m));
    }
    if (!o.profiles.empty()) {
        c.profiles.clear();
        for (const auto& p : o.profiles) {
            const auto eq = p.find('=');
            const std::string name = eq == std::string::npos ? p : p.substr(0, eq);
            c.profiles.push_back({name, parse_profile(eq == std::string::npos ? p : p.substr(eq + 1))});
        }
    }
    if (o.mode) c.mode = parse_calibration_mode(*o.mode);
    if (o.sep_p) c.sep_p = *o.sep_p;
    if (o.geco_cutoff) c.geco_cutoff = *o.geco_cutoff;
    if (o.cvnn_kappa) c.cvnn_kappa = *o.cvnn_kappa;
    if (o.mc_sims) c.mc_sims = *o.mc_sims;
    if (!o.group_weights.empty()) {
        if (o.group_weights.size() != 3) throw Error(ErrorKind::usage, "--group-weights takes three values");
        c.group_weights = std::array<double, 3>{o.group_weights[0], o.group_weights[1], o.group_weights[2]};
    }
    return c;
}

std::string in_out(const RunConfig& c, const std::optional<std::string>& given, const char* name) {
    return given ? *given : (fs::path(c.out) / name).string();
}

void ensure_out(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw DataError("cannot create output directory " + c.out + ": " + ec.message());
}

void say(const std::string& s) { std::cerr << s << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"footclust: dissimilarity-based clustering of player performance data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common cm;
    Overrides o;
    std::optional<std::string> dissim_in, ids_in, clusterings_in, panel_in, calibrated_in;
    std::optional<std::string> mds_method;
    std::optional<int> mds_k;

    auto* dissim = app.add_subcommand("dissim", "features and the combined dissimilarity matrix");
    auto* cluster = app.add_subcommand("cluster", "run the clusterers over the K range");
    auto* validate = app.add_subcommand("validate", "index panel for clusterings plus the random pool");
    auto* calibrate = app.add_subcommand("calibrate", "standardise the aspect indexes against the random pool");
    auto* rank = app.add_subcommand("rank", "rank candidates by composite and single indexes");
    auto* survey = app.add_subcommand("survey", "expert survey scores, randomness test and weight search");
    auto* mds = app.add_subcommand("mds", "two-dimensional classical scaling of the dissimilarity");
    auto* run = app.add_subcommand("run", "the whole workflow, with a manifest");

    for (auto* s : {dissim, cluster, validate, calibrate, rank, survey, mds, run}) add_common(s, cm);
    for (auto* s : {dissim, run}) {
        s->add_option("--players", o.players, "players CSV");
        s->add_option("--metadata", o.metadata, "variable metadata CSV");
        s->add_option("--previous", o.previous, "previous-season players CSV (for fitted shifts)");
        s->add_option("--geco-cutoff", o.geco_cutoff, "position distance cutoff");
        s->add_option("--group-weights", o.group_weights, "weights of the quantitative, position and league/team parts")
            ->expected(3);
    }
    for (auto* s : {cluster, validate, run}) {
        s->add_option("--k-min", o.k_min);
        s->add_option("--k-max", o.k_max);
        s->add_option("--methods", o.methods, "pam single average complete ward spectral");
    }
    for (auto* s : {validate, run}) {
        s->add_option("--b-calibration", o.b_calibration, "random clusterings per scheme and K");
        s->add_option("--b-bootstab", o.b_bootstab, "bootstrap iterations for the stability index");
        s->add_option("--sep-p", o.sep_p, "border fraction of the separation index");
        s->add_option("--cvnn-kappa", o.cvnn_kappa, "neighbourhood size of CVNN");
    }
    for (auto* s : {calibrate, run}) s->add_option("--mode", o.mode, "C1 (pooled over K) or C2 (per K)");
    for (auto* s : {rank, run}) s->add_option("--profile", o.profiles, "NAME=W1|W2|w1,w2,w3,w4,w5 (repeatable)");
    for (auto* s : {survey, run}) {
        s->add_option("--design", o.design, "survey design JSON");
        s->add_option("--responses", o.responses, "expert ranks or published scores JSON");
        s->add_option("--sims", o.mc_sims, "Monte Carlo simulations");
    }
    for (auto* s : {cluster, validate, mds}) {
        s->add_option("--dissim", dissim_in, "dissimilarity binary (default OUT/dissim.bin)");
        s->add_option("--ids", ids_in, "player ids CSV (default OUT/ids.csv)");
    }
    for (auto* s : {validate, mds}) s->add_option("--clusterings", clusterings_in, "default OUT/clusterings.csv");
    calibrate->add_option("--panel", panel_in, "default OUT/panel.csv");
    for (auto* s : {rank, survey}) s->add_option("--calibrated", calibrated_in, "default OUT/calibrated.csv");
    mds->add_option("--method", mds_method, "clustering whose labels go into the output");
    mds->add_option("--k", mds_k);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig c = resolve(cm, o);
        const auto pc = [&] {
            if (c.k_min < 2 || c.k_max < c.k_min) throw Error(ErrorKind::usage, "need 2 <= k-min <= k-max");
            return c.panel();
        };

        if (*run) {
            const auto r = run_pipeline(c);
            say("wrote " + std::to_string(r.artifacts.size() + 1) + " files to " + c.out);
            for (const auto& row : r.rankings)
                if (!row.top.empty()) say(row.label + ": " + candidate_label(row.top.front()));
        } else if (*dissim) {
            if (c.players.empty() || c.metadata.empty()) throw Error(ErrorKind::usage, "dissim needs --players and --metadata");
            ensure_out(c);
            const auto s = compute_dissimilarity(c);
            const fs::path out = c.out;
            write_feature_table(s.features, (out / "features.csv").string(), (out / "features.json").string());
            write_binary(s.dissimilarity.final, (out / "dissim.bin").string());
            write_ids(s.features.ids, (out / "ids.csv").string());
            say(std::to_string(s.features.size()) + " players, " + std::to_string(s.features.columns.size()) + " variables");
        } else if (*cluster) {
            const auto d = read_binary(in_out(c, dissim_in, "dissim.bin"));
            const auto ids = read_ids(in_out(c, ids_in, "ids.csv"));
            if (ids.size() != d.size()) throw DataError("ids file does not match the dissimilarity matrix");
            ensure_out(c);
            const auto cs = cluster_grid(d, pc());
            write_clusterings(cs, ids, (fs::path(c.out) / "clusterings.csv").string());
            say(std::to_string(cs.size()) + " clusterings");
        } else if (*validate) {
            const auto d = read_binary(in_out(c, dissim_in, "dissim.bin"));
            const auto ids = read_ids(in_out(c, ids_in, "ids.csv"));
            if (ids.size() != d.size()) throw DataError("ids file does not match the dissimilarity matrix");
            const auto cfg = pc();
            auto panel = evaluate_clusterings(d, read_clusterings(in_out(c, clusterings_in, "clusterings.csv"), ids), cfg);
            const auto pool = random_pool(d, cfg);
            panel.entries.insert(panel.entries.end(), pool.begin(), pool.end());
            ensure_out(c);
            write_panel(panel.entries, (fs::path(c.out) / "panel.csv").string());
            say(std::to_string(panel.entries.size()) + " panel entries");
        } else if (*calibrate) {
            const auto entries = read_panel(in_out(c, panel_in, "panel.csv"));
            ensure_out(c);
            const auto cands = calibrate_panel(entries, c.mode);
            write_calibrated(cands, c.mode, (fs::path(c.out) / "calibrated.csv").string());
            say(std::to_string(cands.size()) + " candidates calibrated (" + std::string(to_string(c.mode)) + ")");
        } else if (*rank) {
            const auto cands = read_calibrated(in_out(c, calibrated_in, "calibrated.csv"));
            ensure_out(c);
            const auto rows = ranking_rows(cands, c);
            write_ranking_table(rows, (fs::path(c.out) / "ranking.csv").string());
            write_full_ranking({rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(c.profiles.size())},
                               (fs::path(c.out) / "ranking_full.csv").string());
            for (const auto& row : rows)
                if (!row.top.empty()) say(row.label + ": " + candidate_label(row.top.front()));
        } else if (*survey) {
            if (!c.survey_design || !c.survey_responses)
                throw Error(ErrorKind::usage, "survey needs --design and --responses");
            const auto design = parse_design(load_json(*c.survey_design));
            const auto scores = load_score_matrix(design, load_json(*c.survey_responses));
            std::optional<std::vector<CalibratedCandidate>> cands;
            if (calibrated_in) cands = read_calibrated(*calibrated_in);
            const auto report = run_survey(design, scores, cands ? &*cands : nullptr, default_weight_grid(), c.mc_sims,
                                           c.seed, c.threads);
            ensure_out(c);
            write_json(to_json(report), (fs::path(c.out) / "survey.json").string());
            std::string totals;
            for (double t : report.scores.totals) totals += " " + csv::format_number(t);
            say("totals" + totals);
            say("variance " + csv::format_number(report.mc.statistic) + ", p = " + csv::format_number(report.mc.p_value));
            if (report.search) say("best Spearman " + csv::format_number(report.search->correlation));
        } else if (*mds) {
            const auto d = read_binary(in_out(c, dissim_in, "dissim.bin"));
            const auto ids = read_ids(in_out(c, ids_in, "ids.csv"));
            if (ids.size() != d.size()) throw DataError("ids file does not match the dissimilarity matrix");
            std::vector<int> labels;
            if (mds_method || mds_k) {
                if (!mds_method || !mds_k) throw Error(ErrorKind::usage, "--method and --k go together");
                const Method m = parse_method(*mds_method);
                for (const auto& cl : read_clusterings(in_out(c, clusterings_in, "clusterings.csv"), ids))
                    if (cl.method == m && cl.k == *mds_k) labels = cl.labels;
                if (labels.empty()) throw DataError("no " + *mds_method + " clustering with K=" + std::to_string(*mds_k));
            }
            ensure_out(c);
            const auto e = classical_mds(d, 2);
            write_mds_csv(e, ids, labels, (fs::path(c.out) / "mds.csv").string());
            say("negative eigenvalue mass " + csv::format_number(e.clamped_fraction));
        }
    } catch (const Error& e) {
        std::cerr << "footclust: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::usage: return 1;
            case ErrorKind::data: return 2;
            case ErrorKind::numeric: return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "footclust: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
