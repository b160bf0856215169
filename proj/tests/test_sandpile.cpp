#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sandlab/harness.hpp"
#include "sandlab/rng.hpp"
#include "sandlab/sandpile.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace sandlab;
using namespace sandlab::sandpile;

TEST_CASE("grid shape invariants") {
    GridShape g(4, 2);
    CHECK(g.degree() == 4);
    CHECK(g.num_vertices() == 16);
    CHECK(g.sink_edges({1, 1}) == 2);
    CHECK(g.sink_edges({1, 2}) == 1);
    CHECK(g.sink_edges({2, 2}) == 0);
    CHECK(g.sink_edges({4, 4}) == 2);

    GridShape one(1, 2);
    CHECK(one.sink_edges({1, 1}) == 4);

    GridShape cube(3, 3);
    CHECK(cube.degree() == 6);
    CHECK(cube.sink_edges({1, 1, 1}) == 3);
    CHECK(cube.sink_edges({2, 2, 2}) == 0);

    // lattice degree + sink edges is always 2d
    const GridIndex gi(cube);
    for (std::size_t v = 0; v < cube.num_vertices(); ++v) {
        int lattice = 0;
        for (int e = 0; e < cube.degree(); ++e)
            if (gi.row(v)[e] >= 0) ++lattice;
        CHECK(lattice + gi.sink_count[v] == cube.degree());
    }

    CHECK_THROWS_AS(GridShape(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(GridShape(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.index({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(g.index({1, 5}), std::invalid_argument);
    CHECK(g.vertex_at(g.index({3, 2})) == Vertex{3, 2});
}

TEST_CASE("new_config starts empty") {
    for (auto [n, d] : {std::pair{2, 2}, {1, 2}, {3, 3}}) {
        const Config c = new_config(GridShape(n, d));
        CHECK(c.total_grains() == 0);
        CHECK(c.stable());
    }
}

TEST_CASE("single toppling on the 2x2 grid") {
    const GridShape g(2, 2);
    Config c(g);
    c.grains[g.index({1, 1})] = 4;
    const auto [stable, odo] = stabilize(c);
    CHECK(stable.grains == std::vector<std::uint64_t>{0, 1, 1, 0});
    CHECK(odo.topples == std::vector<std::uint64_t>{1, 0, 0, 0});
    const GridIndex gi(g);
    CHECK(odo.grains_to_sink(gi) == 2);
}

TEST_CASE("isolated vertex sends everything to the sink") {
    const GridShape g(1, 2);
    Config c(g);
    c.grains[0] = 4;
    const auto [stable, odo] = stabilize(c);
    CHECK(stable.grains[0] == 0);
    CHECK(odo.topples[0] == 1);
    CHECK(odo.grains_to_sink(GridIndex(g)) == 4);
}

TEST_CASE("stabilize is idempotent on stable configs") {
    const GridShape g(3, 2);
    Config c(g);
    c.grains = {0, 1, 2, 3, 0, 1, 2, 3, 1};
    const auto [out, odo] = stabilize(c);
    CHECK(out == c);
    CHECK(odo.total() == 0);
}

TEST_CASE("conservation holds exactly") {
    const GridShape g(5, 2);
    const GridIndex gi(g);
    for (std::uint64_t s = 0; s < 20; ++s) {
        Config c(g);
        CounterRng rng(42, 1, s);
        for (auto& x : c.grains) x = rng.below(500);
        const auto [stable, odo] = stabilize(c);
        CHECK(stable.stable());
        CHECK(c.total_grains() == stable.total_grains() + odo.grains_to_sink(gi));
    }
}

TEST_CASE("random toppling orders agree with the queue engine") {
    const GridShape g(8, 2);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Config c(g);
        CounterRng rng(7, 2, s);
        for (auto& x : c.grains) x = rng.below(101);
        const auto ref = stabilize(c);
        for (std::uint64_t o = 0; o < 5; ++o) {
            const auto alt = stabilize(c,
                                       o % 2 ? TopplingOrder::RandomSingle
                                             : TopplingOrder::RandomBatched,
                                       splitmix64(s * 100 + o));
            CHECK(alt.first == ref.first);
            CHECK(alt.second == ref.second);
        }
    }
}

TEST_CASE("stabilization can be interleaved with further additions") {
    // stabilize(a + b) equals stabilize(stabilize(a) + b), grain for grain,
    // with the odometers adding up
    const GridShape g(6, 2);
    for (std::uint64_t s = 0; s < 8; ++s) {
        Config a(g), b(g);
        CounterRng rng(13, 4, s);
        for (auto& x : a.grains) x = rng.below(12);
        for (auto& x : b.grains) x = rng.below(12);

        Config sum(g);
        for (std::size_t v = 0; v < sum.grains.size(); ++v)
            sum.grains[v] = a.grains[v] + b.grains[v];
        const auto direct = stabilize(sum);

        const auto first = stabilize(a);
        Config staged = first.first;
        for (std::size_t v = 0; v < staged.grains.size(); ++v) staged.grains[v] += b.grains[v];
        const auto second = stabilize(staged);

        CHECK(direct.first == second.first);
        for (std::size_t v = 0; v < g.num_vertices(); ++v)
            CHECK(direct.second.topples[v] ==
                  first.second.topples[v] + second.second.topples[v]);
    }
}

TEST_CASE("add_and_stabilize equals iterated single grains") {
    const GridShape g(4, 2);
    Config c(g);
    CounterRng rng(11, 3, 0);
    for (auto& x : c.grains) x = rng.below(4);
    const Vertex site{2, 3};
    const std::uint64_t k = 16;
    const auto batched = add_and_stabilize(c, site, k);
    Config iterated = c;
    Odometer acc(g);
    for (std::uint64_t i = 0; i < k; ++i) {
        auto [cfg, odo] = add_and_stabilize(iterated, site, 1);
        iterated = cfg;
        for (std::size_t v = 0; v < acc.topples.size(); ++v) acc.topples[v] += odo.topples[v];
    }
    CHECK(batched.first == iterated);
    CHECK(batched.second == acc);
}

TEST_CASE("add_and_stabilize argument validation") {
    const GridShape g(3, 2);
    Config c(g);
    CHECK_THROWS_AS(add_and_stabilize(c, {2, 2}, 0), std::invalid_argument);
    CHECK_THROWS_AS(add_and_stabilize(c, {4, 1}, 1), std::invalid_argument);

    // threshold crossing: one grain on a vertex holding 2d-1 topples it
    c.grains[g.index({2, 2})] = 3;
    const auto [stable, odo] = add_and_stabilize(c, {2, 2}, 1);
    CHECK(odo.topples[g.index({2, 2})] >= 1);
    CHECK(stable.stable());
}

TEST_CASE("burning test basics") {
    const GridShape g(2, 2);
    Config maxed(g);
    maxed.grains = {3, 3, 3, 3};
    CHECK(burning_test(maxed));
    CHECK_FALSE(burning_test(Config(g)));

    Config unstable(g);
    unstable.grains = {4, 0, 0, 0};
    CHECK_THROWS_AS(burning_test(unstable), std::invalid_argument);
}

TEST_CASE("burning test matches the SCC classification") {
    for (const GridShape& g : {GridShape(2, 2), GridShape(3, 1)}) {
        const auto recurrent = harness::recurrent_states_by_scc(g);
        const std::uint64_t S = harness::stable_state_count(g);
        for (std::uint64_t code = 0; code < S; ++code) {
            const Config c = harness::config_from_code(g, code);
            CHECK(burning_test(c) == static_cast<bool>(recurrent[code]));
        }
    }
}

TEST_CASE("drive to recurrence matches the linear scan") {
    const GridShape g(2, 2);
    const auto report = drive_to_recurrence(g, {1, 1});
    CHECK(report.recurrent_at == 6);  // frozen via the per-grain scan
    CHECK(report.recurrent_at == harness::recurrent_at_by_linear_scan(g, {1, 1}));
    CHECK(report.recurrent_at <= report.grains_added);

    const GridShape one(1, 2);
    CHECK(drive_to_recurrence(one, {1, 1}).recurrent_at == 0);

    const GridShape path(3, 1);
    CHECK(drive_to_recurrence(path, {1}).recurrent_at ==
          harness::recurrent_at_by_linear_scan(path, {1}));
}

TEST_CASE("tcl_exact goldens from the exhaustive oracle") {
    CHECK(tcl_exact(GridShape(2, 2)) == 8);
    CHECK(tcl_exact(GridShape(3, 2)) == 50);
    CHECK(tcl_exact(GridShape(1, 2)) == 0);
    CHECK(tcl_exact(GridShape(2, 1)) == 0);
    CHECK(tcl_exact(GridShape(3, 1)) == 2);
    CHECK(tcl_exact(GridShape(4, 1)) == 5);

    // corner driving is one admissible strategy
    const auto drive = drive_to_recurrence(GridShape(2, 2), {1, 1});
    CHECK(tcl_exact(GridShape(2, 2)) + 1 >= drive.recurrent_at);

    CHECK_THROWS_AS(tcl_exact(GridShape(3, 2), 256), std::invalid_argument);
}

TEST_CASE("grain counter overflow is detected") {
    const GridShape g(2, 2);
    Config c(g);
    c.grains[0] = ~0ull - 1;
    c.grains[1] = ~0ull - 1;
    CHECK_THROWS_AS(stabilize(c), std::overflow_error);
    Config d(g);
    d.grains[0] = ~0ull;
    CHECK_THROWS_AS(add_and_stabilize(d, {1, 1}, 1), std::overflow_error);
}

namespace {

struct Ppm {
    int width = 0, height = 0, maxval = 0;
    std::vector<std::array<int, 3>> pixels;
};

Ppm read_ppm(const std::filesystem::path& file) {
    std::ifstream is(file);
    REQUIRE(is.good());
    std::string magic;
    is >> magic;
    REQUIRE(magic == "P3");
    Ppm img;
    is >> img.width >> img.height >> img.maxval;
    int r, g, b;
    while (is >> r >> g >> b) img.pixels.push_back({r, g, b});
    return img;
}

}  // namespace

TEST_CASE("render frames emit valid images") {
    const auto dir = std::filesystem::temp_directory_path() / "sandlab_render_test";
    std::filesystem::remove_all(dir);

    const GridShape g(8, 2);
    const auto files = render_frames(g, {1, 1}, {0, 16, 64}, dir);
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == "frame_0.ppm");
    CHECK(files[2].filename() == "frame_64.ppm");

    const Ppm empty = read_ppm(files[0]);
    CHECK(empty.width == 8);
    CHECK(empty.height == 8);
    CHECK(empty.maxval == 255);
    REQUIRE(empty.pixels.size() == 64);
    for (const auto& px : empty.pixels) CHECK(px == std::array<int, 3>{255, 255, 255});

    const std::set<std::array<int, 3>> palette = {
        {255, 255, 255}, {80, 160, 255}, {255, 200, 60}, {160, 40, 40}};
    for (const auto& px : read_ppm(files[2]).pixels) CHECK(palette.count(px) == 1);

    CHECK_THROWS_AS(render_frames(GridShape(3, 3), {1, 1, 1}, {4}, dir), std::invalid_argument);
    CHECK_THROWS_AS(render_frames(g, {1, 1}, {8, 8}, dir), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("deep in the recurrent regime every vertex has toppled") {
    // all-toppled implies recurrent, not the reverse: at exactly
    // recurrent_at a few far vertices may still be untouched
    const GridShape g(16, 2);
    const auto at = drive_to_recurrence(g, {1, 1}).recurrent_at;
    Config c(g);
    c.grains[0] = 2 * at;
    const auto odo = stabilize(c).second;
    for (std::uint64_t t : odo.topples) CHECK(t > 0);
}
