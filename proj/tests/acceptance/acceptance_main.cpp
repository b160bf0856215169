// Acceptance suite: one numbered criterion per run (or all with no argument).
// Prints one PASS/FAIL line per criterion; exit 0 iff everything run passed.

#include "sandlab/electro.hpp"
#include "sandlab/harness.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/rng.hpp"
#include "sandlab/sandpile.hpp"
#include "sandlab/walks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace sandlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome bad(std::string detail) { return {false, std::move(detail)}; }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

Outcome from_reports(const std::vector<LemmaReport>& reports, const std::string& label) {
    std::size_t failed = 0;
    std::string first;
    for (const auto& r : reports)
        if (!r.pass) {
            if (failed == 0) first = r.lemma_id + " " + r.params.dump();
            ++failed;
        }
    if (failed == 0) return ok(label + ": " + std::to_string(reports.size()) + " checks");
    return bad(label + ": " + std::to_string(failed) + "/" +
               std::to_string(reports.size()) + " failed, first " + first);
}

// 1. Abelianness + conservation: 200 random 8x8 configs x 50 random orders.
Outcome criterion_abelian() {
    const Json j = harness::check_abelianness_conservation(8, 2, 200, 50, 2024, 0);
    const auto fails = j["details"]["failures"].get<std::uint64_t>();
    if (!j["pass"].get<bool>())
        return bad(std::to_string(fails) + " of 200 configs disagreed across orders");
    return ok("200 configs x 50 orders: identical results, exact conservation");
}

// 2. Burning test vs SCC classification on the full 2x2 and path-3 spaces.
Outcome criterion_burning_oracle() {
    for (const GridShape& g : {GridShape(2, 2), GridShape(3, 1)}) {
        const Json j = harness::check_burning_oracle(g);
        if (!j["pass"].get<bool>())
            return bad(g.to_string() + ": " + j["details"].dump());
    }
    return ok("exact agreement on 256 + 8 stable states");
}

// 3. tcl scaling at the corner, d=2.
Outcome criterion_tcl_scaling() {
    const FitResult fit = harness::fit_drive_scaling({8, 12, 16, 24, 32, 48}, 2, 0);
    const std::string detail =
        "slope " + fmt(fit.slope) + " (target 4.0 +- 0.4), r2 " + fmt(fit.r2);
    return fit.pass ? ok(detail) : bad(detail);
}

// 4. Corner potential scaling + literal sandwich at every tested point.
Outcome criterion_corner_potential() {
    const std::vector<int> grid = {8, 16, 32, 64, 128};
    const FitResult fit = harness::fit_corner_potential_scaling(grid, 2);
    std::string detail = "slope " + fmt(fit.slope) + " (target -4.0 +- 0.3), r2 " + fmt(fit.r2);
    if (!fit.pass) return bad(detail);
    std::vector<LemmaReport> sandwich;
    for (int n : grid)
        for (auto& r : electro::check_corner_potential_sandwich(n))
            sandwich.push_back(std::move(r));
    const Outcome lit = from_reports(sandwich, "sandwich");
    if (!lit.pass) return lit;
    return ok(detail + "; sandwich holds at all " + std::to_string(grid.size()) + " sizes");
}

// 5. Resistance bounds at every vertex, n in 2..48.
Outcome criterion_resistance_bounds() {
    std::size_t checked = 0;
    for (int n = 2; n <= 48; ++n) {
        for (const auto& r : electro::check_resistance_bounds(n))
            if (!r.pass) return bad("n=" + std::to_string(n) + ": " + r.params.dump());
        checked += GridShape(n, 2).num_vertices();
    }
    return ok(std::to_string(checked) + " vertices, zero violations");
}

// 6. Reciprocity: exact on all pairs among 6 sampled vertices, float at n=32.
Outcome criterion_reciprocity() {
    std::vector<LemmaReport> reports;
    for (int n : {4, 8, 12}) {
        const GridShape g(n, 2);
        std::vector<std::size_t> picks = {0, g.num_vertices() - 1, g.num_vertices() / 2};
        CounterRng rng(31, 6, static_cast<std::uint64_t>(n));
        while (picks.size() < 6) {
            const std::size_t v = rng.below(g.num_vertices());
            if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
        }
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (std::size_t a = 0; a < picks.size(); ++a)
            for (std::size_t b = 0; b < picks.size(); ++b)
                if (a != b) pairs.emplace_back(g.vertex_at(picks[a]), g.vertex_at(picks[b]));
        for (auto& r : electro::verify_reciprocity(g, pairs, electro::Backend::Exact))
            reports.push_back(std::move(r));
    }
    {
        const GridShape g(32, 2);
        const std::vector<std::pair<Vertex, Vertex>> pairs = {
            {{1, 1}, {32, 32}}, {{1, 32}, {32, 1}}, {{5, 9}, {20, 30}}, {{16, 16}, {1, 1}}};
        for (auto& r : electro::verify_reciprocity(g, pairs, electro::Backend::Float))
            reports.push_back(std::move(r));
    }
    return from_reports(reports, "reciprocity");
}

// 7. Potential lemma suite: nnIsMin, swapSourceTarget, decoupling, corner min d=3.
Outcome criterion_potential_lemmas() {
    std::vector<LemmaReport> reports;
    for (int n : {4, 8, 16})
        for (auto& r : electro::check_opposite_corner_min(n, 2)) reports.push_back(std::move(r));
    for (int n : {4, 8, 16, 32})
        for (auto& r : electro::check_swap_source_target(n, 2, 12, 777))
            reports.push_back(std::move(r));
    for (int n : {4, 8, 16})
        for (auto& r : electro::check_decoupling_bound(n)) reports.push_back(std::move(r));
    for (auto& r : electro::check_opposite_corner_min(8, 3)) reports.push_back(std::move(r));
    return from_reports(reports, "potential lemmas");
}

// 8. Walk exactness against enumeration: t <= 16, corridor t <= 20.
Outcome criterion_walk_exactness() {
    for (int t = 0; t <= 16; ++t) {
        std::vector<std::vector<std::uint64_t>> end_max(
            static_cast<std::size_t>(2 * t + 1),
            std::vector<std::uint64_t>(static_cast<std::size_t>(t + 1), 0));
        walks::brute_force_count(t, [&](std::span<const int> path) {
            int mx = 0;
            for (int p : path) mx = std::max(mx, p);
            end_max[static_cast<std::size_t>(path.back() + t)][static_cast<std::size_t>(mx)]++;
            return false;
        });
        for (long k = -t; k <= t; ++k) {
            BigInt total = 0;
            for (int mx = 0; mx <= t; ++mx)
                total += end_max[static_cast<std::size_t>(k + t)][static_cast<std::size_t>(mx)];
            if (total != walks::count_end(t, k))
                return bad("count_end mismatch at t=" + std::to_string(t) +
                           " k=" + std::to_string(k));
            for (long m = std::max<long>(k, 0); m <= t; ++m) {
                const BigInt got =
                    end_max[static_cast<std::size_t>(k + t)][static_cast<std::size_t>(m)];
                if (got != walks::count_end_max(t, k, m))
                    return bad("count_end_max mismatch at t=" + std::to_string(t) +
                               " k=" + std::to_string(k) + " m=" + std::to_string(m));
            }
        }
    }
    // corridor: tally (end, max, min) once per t, then answer every (i, n)
    for (int t = 0; t <= 20; ++t) {
        const std::size_t W = static_cast<std::size_t>(2 * t + 1);
        std::vector<std::uint64_t> tally(W * W * W, 0);
        walks::brute_force_count(t, [&](std::span<const int> path) {
            int mx = 0, mn = 0;
            for (int p : path) {
                mx = std::max(mx, p);
                mn = std::min(mn, p);
            }
            tally[(static_cast<std::size_t>(path.back() + t) * W +
                   static_cast<std::size_t>(mx + t)) *
                      W +
                  static_cast<std::size_t>(mn + t)]++;
            return false;
        });
        for (int n = 2; n <= 8; ++n) {
            for (int i = 1; i <= n; ++i) {
                // shifted by i, the walk must stay in [1-i, n-i] and end at
                // n-i; staying below n-i forces max == end exactly
                BigInt brute = 0;
                const int end = n - i;
                if (end <= t) {
                    for (int mn = std::max(1 - i, -t); mn <= 0; ++mn)
                        brute += tally[(static_cast<std::size_t>(end + t) * W +
                                        static_cast<std::size_t>(end + t)) *
                                           W +
                                       static_cast<std::size_t>(mn + t)];
                }
                if (brute != walks::corridor_count({i, n, t}))
                    return bad("corridor mismatch at t=" + std::to_string(t) +
                               " i=" + std::to_string(i) + " n=" + std::to_string(n));
            }
        }
    }
    return ok("count_end, count_end_max (t <= 16) and corridor (t <= 20) exact");
}

// 9. The full section-5 inequality suite at the stated grids.
Outcome criterion_walk_lemmas() {
    std::vector<LemmaReport> reports;
    for (int id = 0; id <= static_cast<int>(walks::WalkLemma::upperBoundSum); ++id) {
        auto rows =
            walks::verify_walk_lemma(static_cast<walks::WalkLemma>(id), walks::ParamGrid{});
        for (auto& r : rows) reports.push_back(std::move(r));
    }
    return from_reports(reports, "section-5 suite");
}

// 10. Higher dimension: d=3 potential and drive exponents.
Outcome criterion_dim3() {
    const FitResult pot = harness::fit_corner_potential_scaling({6, 8, 12, 16}, 3);
    const FitResult drive = harness::fit_drive_scaling({4, 6, 8}, 3, 0);
    const std::string detail = "potential slope " + fmt(pot.slope) +
                               " (target -7.0 +- 0.6), drive slope " + fmt(drive.slope) +
                               " (target 7.0 +- 0.8)";
    return (pot.pass && drive.pass) ? ok(detail) : bad(detail);
}

// 11. Figure-style renders at n=128 with monotone odometer support.
Outcome criterion_render() {
    const GridShape g(128, 2);
    const std::vector<std::uint64_t> checkpoints = {1u << 20, 1u << 22, 1u << 24};
    const auto dir = std::filesystem::temp_directory_path() / "sandlab_acceptance_frames";
    std::filesystem::remove_all(dir);
    const auto files = sandpile::render_frames(g, {1, 1}, checkpoints, dir);
    if (files.size() != 3) return bad("expected 3 frames");
    for (const auto& f : files) {
        std::ifstream is(f);
        std::string magic;
        is >> magic;
        int w = 0, h = 0, maxval = 0;
        is >> w >> h >> maxval;
        if (magic != "P3" || w != 128 || h != 128 || maxval != 255)
            return bad("bad header in " + f.string());
        const std::set<std::array<int, 3>> palette = {
            {255, 255, 255}, {80, 160, 255}, {255, 200, 60}, {160, 40, 40}};
        std::size_t count = 0;
        std::array<int, 3> px{};
        while (is >> px[0] >> px[1] >> px[2]) {
            if (!palette.count(px)) return bad("off-palette pixel in " + f.string());
            ++count;
        }
        if (count != 128 * 128) return bad("pixel count " + std::to_string(count));
    }
    // odometer support is non-decreasing across checkpoints
    std::vector<std::vector<std::uint64_t>> supports;
    for (std::uint64_t m : checkpoints) {
        sandpile::Config c(g);
        c.grains[0] = m;
        supports.push_back(sandpile::stabilize(c).second.topples);
    }
    for (std::size_t k = 1; k < supports.size(); ++k)
        for (std::size_t v = 0; v < supports[k].size(); ++v)
            if (supports[k - 1][v] > 0 && supports[k][v] == 0)
                return bad("odometer support shrank at checkpoint " + std::to_string(k));
    std::filesystem::remove_all(dir);
    return ok("3 valid P3 frames, odometer support monotone");
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "abelianness-conservation", criterion_abelian},
    {2, "burning-test-oracle", criterion_burning_oracle},
    {3, "tcl-scaling-d2", criterion_tcl_scaling},
    {4, "corner-potential-d2", criterion_corner_potential},
    {5, "resistance-bounds", criterion_resistance_bounds},
    {6, "reciprocity", criterion_reciprocity},
    {7, "potential-lemmas", criterion_potential_lemmas},
    {8, "walk-exactness", criterion_walk_exactness},
    {9, "walk-inequality-suite", criterion_walk_lemmas},
    {10, "higher-dimension", criterion_dim3},
    {11, "render-frames", criterion_render},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_pass = true;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = bad(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%2d] %s  %-24s (%.1fs)  %s\n", c.id, outcome.pass ? "PASS" : "FAIL",
                    c.name, secs, outcome.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
