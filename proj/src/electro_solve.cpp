#include "sandlab/electro.hpp"

#include <cmath>
#include <string>

namespace sandlab::electro {

namespace {

// Grid Laplacian over non-sink vertices: diag 2d, -1 per lattice edge. Sink
// edges only contribute to the diagonal, which makes the system SPD.
std::vector<std::vector<BigInt>> laplacian_rows(const GridIndex& gi) {
    const std::size_t N = gi.shape.num_vertices();
    const int deg = gi.shape.degree();
    std::vector<std::vector<BigInt>> L(N, std::vector<BigInt>(N, 0));
    for (std::size_t v = 0; v < N; ++v) {
        L[v][v] = deg;
        const std::int64_t* row = gi.row(v);
        for (int e = 0; e < deg; ++e)
            if (row[e] >= 0) L[v][static_cast<std::size_t>(row[e])] -= 1;
    }
    return L;
}

// Fraction-free Gaussian elimination on [L | B]; returns the numerators of
// L^-1 B with the common denominator det(L).
struct ExactColumns {
    std::vector<std::vector<BigInt>> num;  // num[column][vertex]
    BigInt den;
};

ExactColumns bareiss_solve(const GridShape& shape, const std::vector<std::size_t>& columns) {
    const std::size_t N = shape.num_vertices();
    if (N > kExactVariableCap)
        throw std::invalid_argument("exact backend limited to " +
                                    std::to_string(kExactVariableCap) + " variables");
    const GridIndex gi(shape);
    auto A = laplacian_rows(gi);
    const std::size_t K = columns.size();
    for (std::size_t r = 0; r < N; ++r) {
        A[r].resize(N + K, 0);
        for (std::size_t c = 0; c < K; ++c)
            if (columns[c] == r) A[r][N + c] = 1;
    }

    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const BigInt piv = A[k][k];
        if (piv.is_zero()) throw std::logic_error("zero pivot in SPD elimination");
        for (std::size_t i = k + 1; i < N; ++i) {
            const BigInt lik = A[i][k];
            if (lik.is_zero()) {
                // row still needs the pivot rescale step
                for (std::size_t j = k + 1; j < N + K; ++j) {
                    if (A[i][j].is_zero()) continue;
                    A[i][j] = A[i][j] * piv / prev;
                }
                continue;
            }
            for (std::size_t j = k + 1; j < N + K; ++j)
                A[i][j] = (A[i][j] * piv - lik * A[k][j]) / prev;
            A[i][k] = 0;
        }
        prev = piv;
    }
    const BigInt det = A[N - 1][N - 1];

    // fraction-free back substitution: num[i] = det * x[i]
    ExactColumns out;
    out.den = det;
    out.num.assign(K, std::vector<BigInt>(N, 0));
    for (std::size_t c = 0; c < K; ++c) {
        auto& num = out.num[c];
        num[N - 1] = A[N - 1][N + c];
        for (std::size_t ii = N - 1; ii-- > 0;) {
            BigInt acc = A[ii][N + c] * det;
            for (std::size_t j = ii + 1; j < N; ++j) {
                if (A[ii][j].is_zero() || num[j].is_zero()) continue;
                acc -= A[ii][j] * num[j];
            }
            num[ii] = acc / A[ii][ii];
        }
    }
    return out;
}

}  // namespace

Rational ExactInverse::potential(std::size_t source, std::size_t at) const {
    return Rational(num[at][source], num[source][source]);
}

ExactInverse exact_laplacian_inverse(const GridShape& shape) {
    const std::size_t N = shape.num_vertices();
    std::vector<std::size_t> cols(N);
    for (std::size_t i = 0; i < N; ++i) cols[i] = i;
    ExactColumns sol = bareiss_solve(shape, cols);
    ExactInverse inv;
    inv.den = std::move(sol.den);
    inv.num.assign(N, std::vector<BigInt>(N));
    for (std::size_t c = 0; c < N; ++c)
        for (std::size_t v = 0; v < N; ++v) inv.num[v][c] = std::move(sol.num[c][v]);
    return inv;
}

namespace {

// Jacobi-preconditioned conjugate gradient in long double on the implicit
// grid Laplacian; relative residual 1e-12, iteration cap 50 n^d.
std::vector<long double> conjugate_gradient(const GridIndex& gi,
                                            const std::vector<long double>& b) {
    const std::size_t N = gi.shape.num_vertices();
    const int deg = gi.shape.degree();
    const long double inv_diag = 1.0L / deg;
    auto apply = [&](const std::vector<long double>& x, std::vector<long double>& y) {
        for (std::size_t v = 0; v < N; ++v) {
            long double acc = deg * x[v];
            const std::int64_t* row = gi.row(v);
            for (int e = 0; e < deg; ++e)
                if (row[e] >= 0) acc -= x[static_cast<std::size_t>(row[e])];
            y[v] = acc;
        }
    };
    auto dot = [&](const std::vector<long double>& a, const std::vector<long double>& c) {
        long double s = 0;
        for (std::size_t v = 0; v < N; ++v) s += a[v] * c[v];
        return s;
    };

    std::vector<long double> x(N, 0.0L), r = b, z(N), p(N), q(N);
    long double b_norm = std::sqrt(dot(b, b));
    if (b_norm == 0.0L) return x;
    for (std::size_t v = 0; v < N; ++v) z[v] = r[v] * inv_diag;
    p = z;
    long double rz = dot(r, z);
    const long double target = 1e-12L * b_norm;
    const std::uint64_t cap = 50ull * N;
    for (std::uint64_t it = 0; it < cap; ++it) {
        apply(p, q);
        const long double alpha = rz / dot(p, q);
        for (std::size_t v = 0; v < N; ++v) {
            x[v] += alpha * p[v];
            r[v] -= alpha * q[v];
        }
        const long double r_norm = std::sqrt(dot(r, r));
        if (r_norm <= target) return x;
        for (std::size_t v = 0; v < N; ++v) z[v] = r[v] * inv_diag;
        const long double rz_new = dot(r, z);
        const long double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t v = 0; v < N; ++v) p[v] = z[v] + beta * p[v];
    }
    apply(x, q);
    long double res = 0;
    for (std::size_t v = 0; v < N; ++v) res += (q[v] - b[v]) * (q[v] - b[v]);
    throw std::runtime_error("conjugate gradient did not converge; residual " +
                             std::to_string(static_cast<double>(std::sqrt(res) / b_norm)));
}

}  // namespace

std::vector<double> solve_unit_source(const GridShape& shape, std::size_t source) {
    const GridIndex gi(shape);
    std::vector<long double> b(shape.num_vertices(), 0.0L);
    b[source] = 1.0L;
    const auto x = conjugate_gradient(gi, b);
    std::vector<double> out(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) out[v] = static_cast<double>(x[v]);
    return out;
}

double corner_to_corner_resistance(int n) {
    if (n < 2) throw std::invalid_argument("corner_to_corner_resistance requires n >= 2");
    const GridShape shape(n, 2);
    const GridIndex gi(shape);
    const std::size_t N = shape.num_vertices();
    const std::size_t a = 0, ground = N - 1;
    const int deg = shape.degree();
    // sink-free Laplacian with the far corner grounded
    auto apply = [&](const std::vector<long double>& x, std::vector<long double>& y) {
        for (std::size_t v = 0; v < N; ++v) {
            if (v == ground) {
                y[v] = x[v];
                continue;
            }
            const std::int64_t* row = gi.row(v);
            int lattice_deg = 0;
            long double acc = 0;
            for (int e = 0; e < deg; ++e) {
                if (row[e] < 0) continue;
                ++lattice_deg;
                const std::size_t nb = static_cast<std::size_t>(row[e]);
                if (nb != ground) acc -= x[nb];
            }
            y[v] = lattice_deg * x[v] + acc;
        }
    };
    auto dot = [&](const std::vector<long double>& u, const std::vector<long double>& w) {
        long double s = 0;
        for (std::size_t v = 0; v < N; ++v) s += u[v] * w[v];
        return s;
    };
    std::vector<long double> b(N, 0.0L), x(N, 0.0L), r(N), p(N), q(N);
    b[a] = 1.0L;
    r = b;
    p = r;
    long double rr = dot(r, r);
    const long double target = 1e-13L;
    const std::uint64_t cap = 200ull * N;
    for (std::uint64_t it = 0; it < cap; ++it) {
        apply(p, q);
        const long double alpha = rr / dot(p, q);
        for (std::size_t v = 0; v < N; ++v) {
            x[v] += alpha * p[v];
            r[v] -= alpha * q[v];
        }
        const long double rr_new = dot(r, r);
        if (std::sqrt(rr_new) <= target) return static_cast<double>(x[a]);
        const long double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t v = 0; v < N; ++v) p[v] = r[v] + beta * p[v];
    }
    throw std::runtime_error("corner_to_corner_resistance: solver did not converge");
}

PotentialField potentials(const GridShape& shape, const Vertex& source, Backend backend) {
    const std::size_t s = shape.index(source);
    PotentialField field;
    field.shape = shape;
    field.source = s;
    field.backend = backend;
    const std::size_t N = shape.num_vertices();
    if (backend == Backend::Float) {
        const auto x = solve_unit_source(shape, s);
        field.values.resize(N);
        for (std::size_t v = 0; v < N; ++v) field.values[v] = x[v] / x[s];
        field.values[s] = 1.0;
    } else {
        const ExactColumns sol = bareiss_solve(shape, {s});
        const auto& num = sol.num[0];
        field.exact.resize(N);
        field.values.resize(N);
        for (std::size_t v = 0; v < N; ++v) {
            field.exact[v] = Rational(num[v], num[s]);
            field.values[v] = to_double(field.exact[v]);
        }
    }
    return field;
}

const Rational& PotentialField::exact_value(std::size_t v) const {
    if (backend != Backend::Exact)
        throw std::logic_error("exact_value on a float-backed potential field");
    return exact[v];
}

double PotentialField::sum() const {
    double s = 0;
    for (double v : values) s += v;
    return s;
}

Rational PotentialField::exact_sum() const {
    if (backend != Backend::Exact)
        throw std::logic_error("exact_sum on a float-backed potential field");
    Rational s = 0;
    for (const Rational& v : exact) s += v;
    return s;
}

}  // namespace sandlab::electro
