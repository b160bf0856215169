#include "sandlab/harness.hpp"
#include "sandlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace sandlab::harness {

std::uint64_t stable_state_count(const GridShape& shape) {
    const std::size_t N = shape.num_vertices();
    const std::uint64_t deg = static_cast<std::uint64_t>(shape.degree());
    if (static_cast<double>(N) * std::log2(static_cast<double>(deg)) > 40.0)
        throw std::invalid_argument("state space too large to enumerate");
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < N; ++i) count = checked_mul_u64(count, deg);
    return count;
}

sandpile::Config config_from_code(const GridShape& shape, std::uint64_t code) {
    const std::uint64_t deg = static_cast<std::uint64_t>(shape.degree());
    sandpile::Config c(shape);
    for (std::size_t i = c.grains.size(); i-- > 0;) {
        c.grains[i] = code % deg;
        code /= deg;
    }
    return c;
}

std::uint64_t code_from_config(const sandpile::Config& config) {
    const std::uint64_t deg = static_cast<std::uint64_t>(config.shape.degree());
    std::uint64_t code = 0;
    for (std::uint64_t g : config.grains) {
        if (g >= deg) throw std::invalid_argument("code_from_config requires a stable config");
        code = code * deg + g;
    }
    return code;
}

std::vector<std::uint8_t> recurrent_states_by_scc(const GridShape& shape) {
    const std::uint64_t S = stable_state_count(shape);
    const std::size_t N = shape.num_vertices();
    if (S > (1u << 22))
        throw std::invalid_argument("SCC oracle limited to 2^22 stable states");

    // successor table: add one grain at each vertex, stabilize
    std::vector<std::uint32_t> succ(S * N);
    for (std::uint64_t code = 0; code < S; ++code) {
        sandpile::Config base = config_from_code(shape, code);
        for (std::size_t v = 0; v < N; ++v) {
            sandpile::Config c = base;
            c.grains[v] += 1;
            succ[code * N + v] =
                static_cast<std::uint32_t>(code_from_config(sandpile::stabilize(c).first));
        }
    }

    // iterative Tarjan
    constexpr std::uint32_t kNone = ~0u;
    std::vector<std::uint32_t> index(S, kNone), low(S, 0), scc_id(S, kNone);
    std::vector<std::uint8_t> on_stack(S, 0);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0, next_scc = 0;
    struct Frame {
        std::uint32_t v;
        std::size_t edge;
    };
    std::vector<Frame> frames;
    for (std::uint64_t root = 0; root < S; ++root) {
        if (index[root] != kNone) continue;
        frames.push_back({static_cast<std::uint32_t>(root), 0});
        index[root] = low[root] = next_index++;
        stack.push_back(static_cast<std::uint32_t>(root));
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < N) {
                const std::uint32_t w = succ[static_cast<std::uint64_t>(f.v) * N + f.edge];
                ++f.edge;
                if (index[w] == kNone) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            if (low[f.v] == index[f.v]) {
                for (;;) {
                    const std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    scc_id[w] = next_scc;
                    if (w == f.v) break;
                }
                ++next_scc;
            }
            const std::uint32_t child = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[child]);
        }
    }

    // terminal SCCs have no edge into another component
    std::vector<std::uint8_t> terminal(next_scc, 1);
    for (std::uint64_t code = 0; code < S; ++code)
        for (std::size_t v = 0; v < N; ++v)
            if (scc_id[succ[code * N + v]] != scc_id[code]) terminal[scc_id[code]] = 0;
    const std::size_t terminal_count =
        static_cast<std::size_t>(std::count(terminal.begin(), terminal.end(), 1));
    if (terminal_count != 1)
        throw std::logic_error("expected a unique terminal SCC, found " +
                               std::to_string(terminal_count));

    std::vector<std::uint8_t> recurrent(S, 0);
    for (std::uint64_t code = 0; code < S; ++code) recurrent[code] = terminal[scc_id[code]];
    return recurrent;
}

std::uint64_t recurrent_at_by_linear_scan(const GridShape& shape, const Vertex& site,
                                          std::uint64_t cap) {
    const std::size_t s = shape.index(site);
    sandpile::Config c(shape);
    if (sandpile::burning_test(c)) return 0;
    for (std::uint64_t m = 1; m <= cap; ++m) {
        c.grains[s] += 1;
        c = sandpile::stabilize(c).first;
        if (sandpile::burning_test(c)) return m;
    }
    throw std::runtime_error("linear scan cap exceeded before recurrence");
}

FitResult fit_drive_scaling(const std::vector<int>& n_grid, int d, int jobs) {
    std::vector<std::pair<double, double>> points(n_grid.size());
    parallel_for(n_grid.size(), jobs, [&](std::size_t k) {
        const GridShape shape(n_grid[k], d);
        const Vertex corner(static_cast<std::size_t>(d), 1);
        const auto report = sandpile::drive_to_recurrence(shape, corner);
        points[k] = {static_cast<double>(n_grid[k]), static_cast<double>(report.recurrent_at)};
    });
    const double expected = 3.0 * d - 2.0;
    const double tolerance = (d == 2) ? 0.4 : 0.8;
    return fit_loglog("tcl_d" + std::to_string(d), std::move(points), expected, tolerance);
}

FitResult fit_corner_potential_scaling(const std::vector<int>& n_grid, int d) {
    std::vector<std::pair<double, double>> points(n_grid.size());
    parallel_for(n_grid.size(), 0, [&](std::size_t k) {
        const GridShape shape(n_grid[k], d);
        const std::size_t N = shape.num_vertices();
        const auto x = electro::solve_unit_source(shape, N - 1);
        points[k] = {static_cast<double>(n_grid[k]), x[0] / x[N - 1]};
    });
    const double expected = -(3.0 * d - 2.0);
    const double tolerance = (d == 2) ? 0.3 : 0.6;
    return fit_loglog("corner_potential_d" + std::to_string(d), std::move(points), expected,
                      tolerance);
}

}  // namespace sandlab::harness
