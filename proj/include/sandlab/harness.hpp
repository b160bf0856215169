#ifndef SANDLAB_HARNESS_HPP
#define SANDLAB_HARNESS_HPP

#include "sandlab/electro.hpp"
#include "sandlab/report.hpp"
#include "sandlab/sandpile.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace sandlab::harness {

struct SuiteConfig {
    std::string suite;              // sandpile-oracles | electro | walks | dimd
    std::vector<int> n_grid;        // nonempty ascending
    int d = 2;
    std::uint64_t seed = 0;
    electro::Backend backend = electro::Backend::Float;
    std::filesystem::path out_dir;
    int jobs = 1;
    std::uint64_t trials = 1000000;

    void validate() const;
};

// Runs every check of the selected suite; partial failures are recorded and
// the suite keeps going. Output is byte-deterministic for a fixed config.
Json run_suite(const SuiteConfig& config);

bool suite_passed(const Json& suite_report);

// --- enumeration oracles over tiny state spaces ----------------------------
// Stable states are exactly the base-(2d) digit strings over the vertices.
std::uint64_t stable_state_count(const GridShape& shape);
sandpile::Config config_from_code(const GridShape& shape, std::uint64_t code);
std::uint64_t code_from_config(const sandpile::Config& config);

// Recurrence classification by strongly connected components of the
// add-any-vertex-then-stabilize graph: a state is recurrent iff it lies in
// the unique terminal SCC. Independent of the burning test.
std::vector<std::uint8_t> recurrent_states_by_scc(const GridShape& shape);

// Linear-scan drive oracle: grains added one at a time until the burning
// test first passes.
std::uint64_t recurrent_at_by_linear_scan(const GridShape& shape, const Vertex& site,
                                          std::uint64_t cap = 1u << 20);

// Log-log scaling of drive_to_recurrence at the low corner over n_grid.
FitResult fit_drive_scaling(const std::vector<int>& n_grid, int d, int jobs);
// Log-log scaling of pi_(n,..,n)((1,..,1)) over n_grid (float backend).
FitResult fit_corner_potential_scaling(const std::vector<int>& n_grid, int d);

// Randomized toppling orders against the production queue: identical stable
// configs, identical odometers, exact conservation.
Json check_abelianness_conservation(int n, int d, int configs, int orders, std::uint64_t seed,
                                    int jobs = 0);
// Burning test against the SCC classification on the full stable state space.
Json check_burning_oracle(const GridShape& shape);

int cli(int argc, char** argv);

}  // namespace sandlab::harness

#endif
