#ifndef SANDLAB_ELECTRO_HPP
#define SANDLAB_ELECTRO_HPP

#include "sandlab/grid.hpp"
#include "sandlab/numeric.hpp"
#include "sandlab/report.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sandlab::electro {

enum class Backend { Exact, Float };

// Dirichlet potentials with boundary values 1 at the source and 0 at the sink.
struct PotentialField {
    GridShape shape;
    std::size_t source = 0;
    Backend backend = Backend::Float;
    std::vector<double> values;        // always populated
    std::vector<Rational> exact;       // populated for Backend::Exact

    double value(std::size_t v) const { return values[v]; }
    const Rational& exact_value(std::size_t v) const;
    double sum() const;
    Rational exact_sum() const;
};

struct Resistance {
    GridShape shape;
    Vertex u;
    Backend backend = Backend::Float;
    double ohms = 0.0;
    std::optional<Rational> exact;
};

struct ReductionQuantities {
    GridShape shape;
    double upper_q = 0.0;  // max_{u,v} (sum_x pi_u(x)) / pi_u(v)
    double lower_q = 0.0;  // max_{u,v} 1 / pi_u(v)
    std::size_t upper_u = 0, upper_v = 0;
    std::size_t lower_u = 0, lower_v = 0;
};

struct EscapeEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
};

inline constexpr std::size_t kExactVariableCap = 4096;

PotentialField potentials(const GridShape& shape, const Vertex& source, Backend backend);

// Closed-form path potential with source v1 evaluated at u1.
Rational path_potential(int n, int u1, int v1);

Resistance effective_resistance(const GridShape& shape, const Vertex& u, Backend backend);

// Effective resistance between opposite corners of the sink-free n x n
// resistor network.
double corner_to_corner_resistance(int n);

std::vector<LemmaReport> verify_reciprocity(const GridShape& shape,
                                            const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                            Backend backend);

ReductionQuantities reduction_quantities(const GridShape& shape, std::size_t variable_cap = 1024);

EscapeEstimate monte_carlo_escape(const GridShape& shape, const Vertex& start,
                                  const Vertex& target, std::uint64_t trials,
                                  std::uint64_t seed, std::uint64_t stream = 0);

// Exact dense inverse of the grid Laplacian: inv[i][j] = num[i][j] / den.
struct ExactInverse {
    std::vector<std::vector<BigInt>> num;
    BigInt den;
    Rational potential(std::size_t source, std::size_t at) const;  // pi_source(at)
};
ExactInverse exact_laplacian_inverse(const GridShape& shape);

// Float solve of L x = e_source done in long double; x[source] is
// R_eff(sink, source) and x[v]/x[source] is pi_source(v).
std::vector<double> solve_unit_source(const GridShape& shape, std::size_t source);

// Literal-constant potential lemma suites (see the verify CLI subcommand).
std::vector<LemmaReport> check_opposite_corner_min(int n, int d);
std::vector<LemmaReport> check_swap_source_target(int n, int d, int sample_pairs,
                                                  std::uint64_t seed);
std::vector<LemmaReport> check_corner_potential_sandwich(int n);
std::vector<LemmaReport> check_decoupling_bound(int n);
std::vector<LemmaReport> check_resistance_bounds(int n);
std::vector<LemmaReport> check_corner_to_corner(int n);
LemmaReport check_potential_sum_growth(const std::vector<int>& n_grid, int d);

// Default per-shape suite used by `verify --suite electro`.
std::vector<LemmaReport> verify_potential_lemmas(const GridShape& shape);

}  // namespace sandlab::electro

#endif
