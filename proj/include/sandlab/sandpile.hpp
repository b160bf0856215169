#ifndef SANDLAB_SANDPILE_HPP
#define SANDLAB_SANDPILE_HPP

#include "sandlab/grid.hpp"
#include "sandlab/report.hpp"

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace sandlab::sandpile {

// Grain counts sigma(v) on the non-sink vertices; the sink is never stored.
struct Config {
    GridShape shape;
    std::vector<std::uint64_t> grains;

    explicit Config(const GridShape& s) : shape(s), grains(s.num_vertices(), 0) {}

    bool stable() const {
        const std::uint64_t deg = static_cast<std::uint64_t>(shape.degree());
        for (std::uint64_t g : grains)
            if (g >= deg) return false;
        return true;
    }

    std::uint64_t total_grains() const {
        std::uint64_t t = 0;
        for (std::uint64_t g : grains) t = checked_add_u64(t, g);
        return t;
    }

    bool operator==(const Config& o) const { return shape == o.shape && grains == o.grains; }
};

// Per-vertex toppling counts accumulated during one stabilization.
struct Odometer {
    GridShape shape;
    std::vector<std::uint64_t> topples;

    explicit Odometer(const GridShape& s) : shape(s), topples(s.num_vertices(), 0) {}

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (std::uint64_t x : topples) t = checked_add_u64(t, x);
        return t;
    }

    // grains a stabilization sent to the sink
    std::uint64_t grains_to_sink(const GridIndex& gi) const;

    bool operator==(const Odometer& o) const { return shape == o.shape && topples == o.topples; }
};

enum class TopplingOrder {
    BatchedQueue,   // FIFO work queue, q = floor(sigma/2d) simultaneous topplings
    RandomSingle,   // uniformly random unstable vertex, one toppling at a time
    RandomBatched,  // uniformly random unstable vertex, batched
};

struct DriveReport {
    Vertex site;
    std::uint64_t grains_added = 0;
    std::uint64_t recurrent_at = 0;
    std::uint64_t total_topplings = 0;
    double wall_time = 0.0;

    Json to_json() const;
};

Config new_config(const GridShape& shape);

std::pair<Config, Odometer> stabilize(const Config& config,
                                      TopplingOrder order = TopplingOrder::BatchedQueue,
                                      std::uint64_t seed = 0);

std::pair<Config, Odometer> add_and_stabilize(const Config& config, const Vertex& site,
                                              std::uint64_t k);

// Dhar's test: seed the burnt set with the sink, burn any v with
// sigma(v) >= deg(v) - (#edges into the burnt set); recurrent iff all burn.
bool burning_test(const Config& config);

// Smallest m such that m grains dropped at `site` on the empty configuration
// stabilize to a recurrent state; exponential doubling then binary search,
// each probe re-stabilized from empty.
DriveReport drive_to_recurrence(const GridShape& shape, const Vertex& site);

// Longest path (in grain additions) from the empty configuration through
// transient states of the add-any-vertex-then-stabilize graph.
std::uint64_t tcl_exact(const GridShape& shape, std::uint64_t state_cap = 1ull << 20);

// One P3 image per checkpoint, written as frame_<grains>.ppm.
std::vector<std::filesystem::path> render_frames(const GridShape& shape, const Vertex& site,
                                                 const std::vector<std::uint64_t>& checkpoints,
                                                 const std::filesystem::path& out_dir);

}  // namespace sandlab::sandpile

#endif
