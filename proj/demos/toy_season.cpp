// Clusters the bundled toy season and prints the best candidates under each profile.
//
//   toy_season [data-dir]

#include <cstdio>
#include <string>

#include "footclust.hpp"

using namespace footclust;

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : FOOTCLUST_DATA_DIR;
    RunConfig c;
    c.players = dir + "/toy_players.csv";
    c.metadata = dir + "/toy_metadata.csv";
    c.previous = dir + "/toy_previous.csv";
    c.k_max = 6;
    c.b_calibration = 30;
    c.b_bootstab = 20;
    c.seed = 17;

    try {
        const auto s = compute_dissimilarity(c);
        const auto& d = s.dissimilarity.final;
        std::printf("%zu players, %zu variables, group scales", d.size(), s.features.columns.size());
        for (double v : s.dissimilarity.scales) std::printf(" %.3f", v);
        std::printf("\n");

        const auto panel = build_panel(d, c.panel());
        const auto cands = calibrate_panel(panel.entries, CalibrationMode::C1);
        for (const auto& p : c.profiles) {
            const auto r = rank_candidates(cands, p.weights);
            std::printf("%-3s", p.name.c_str());
            for (std::size_t i = 0; i < std::min<std::size_t>(5, r.size()); ++i)
                std::printf("  %-12s %6.3f", candidate_label(r[i]).c_str(), r[i].value);
            std::printf("\n");
        }

        // how close are PAM and Ward at the K the first profile prefers?
        const int k = rank_candidates(cands, c.profiles.front().weights).front().k;
        const Clustering* a = nullptr;
        const Clustering* b = nullptr;
        for (const auto& cl : panel.clusterings) {
            if (cl.k != k) continue;
            if (cl.method == Method::pam) a = &cl;
            if (cl.method == Method::ward) b = &cl;
        }
        if (a && b) std::printf("ARI(pam, ward) at K=%d: %.3f\n", k, ari(*a, *b));

        const auto e = classical_mds(d, 2);
        std::printf("MDS eigenvalues %.2f %.2f, negative mass %.3f\n", e.eigenvalues[0], e.eigenvalues[1],
                    e.clamped_fraction);
    } catch (const Error& e) {
        std::fprintf(stderr, "toy_season: %s\n", e.what());
        return 1;
    }
}
