#ifndef SANDLAB_GRID_HPP
#define SANDLAB_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandlab {

// 1-based lattice coordinates, one entry per dimension.
using Vertex = std::vector<int>;

inline std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("grain counter overflow in 64-bit addition");
    return r;
}

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("grain counter overflow in 64-bit multiplication");
    return r;
}

// Sinked n^d grid. Vertices are {1..n}^d; the sink is virtual and attached to
// boundary vertices so that every vertex has total degree exactly 2d.
struct GridShape {
    int n = 0;
    int d = 0;

    GridShape() = default;
    GridShape(int side, int dim) : n(side), d(dim) {
        if (n < 1) throw std::invalid_argument("GridShape: side length must be >= 1");
        if (d < 1) throw std::invalid_argument("GridShape: dimension must be >= 1");
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count = checked_mul_u64(count, static_cast<std::uint64_t>(n));
        if (count > (1ull << 31))
            throw std::invalid_argument("GridShape: n^d too large");
        vertex_count_ = static_cast<std::size_t>(count);
    }

    int degree() const { return 2 * d; }
    std::size_t num_vertices() const { return vertex_count_; }

    bool contains(const Vertex& v) const {
        if (static_cast<int>(v.size()) != d) return false;
        for (int c : v)
            if (c < 1 || c > n) return false;
        return true;
    }

    // Row-major flat index, first coordinate slowest.
    std::size_t index(const Vertex& v) const {
        if (!contains(v))
            throw std::invalid_argument("vertex out of range for " + to_string());
        std::size_t k = 0;
        for (int c : v) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(c - 1);
        return k;
    }

    Vertex vertex_at(std::size_t idx) const {
        if (idx >= vertex_count_) throw std::invalid_argument("flat index out of range");
        Vertex v(static_cast<std::size_t>(d));
        for (int i = d - 1; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(n)) + 1;
            idx /= static_cast<std::size_t>(n);
        }
        return v;
    }

    int sink_edges(const Vertex& v) const {
        if (!contains(v))
            throw std::invalid_argument("vertex out of range for " + to_string());
        int s = 0;
        for (int c : v) {
            if (n == 1) s += 2;
            else if (c == 1 || c == n) s += 1;
        }
        return s;
    }

    std::string to_string() const {
        return "grid(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")";
    }

    bool operator==(const GridShape& o) const { return n == o.n && d == o.d; }

  private:
    std::size_t vertex_count_ = 0;
};

// Flat adjacency for the hot loops: 2d neighbor slots per vertex, -1 = sink.
struct GridIndex {
    explicit GridIndex(const GridShape& s) : shape(s) {
        const std::size_t N = s.num_vertices();
        const int deg = s.degree();
        neighbors.assign(N * static_cast<std::size_t>(deg), -1);
        sink_count.assign(N, 0);
        std::vector<int> coord(static_cast<std::size_t>(s.d), 1);
        for (std::size_t v = 0; v < N; ++v) {
            std::int64_t* row = &neighbors[v * static_cast<std::size_t>(deg)];
            int slot = 0;
            std::size_t st = N;
            for (int ax = 0; ax < s.d; ++ax) {
                st /= static_cast<std::size_t>(s.n);
                const int c = coord[static_cast<std::size_t>(ax)];
                row[slot++] = (c > 1) ? static_cast<std::int64_t>(v - st) : -1;
                row[slot++] = (c < s.n) ? static_cast<std::int64_t>(v + st) : -1;
            }
            for (int k = 0; k < deg; ++k)
                if (row[k] < 0) sink_count[v]++;
            // advance odometer-style coordinates
            for (int ax = s.d - 1; ax >= 0; --ax) {
                if (++coord[static_cast<std::size_t>(ax)] <= s.n) break;
                coord[static_cast<std::size_t>(ax)] = 1;
            }
        }
    }

    const std::int64_t* row(std::size_t v) const {
        return &neighbors[v * static_cast<std::size_t>(shape.degree())];
    }

    GridShape shape;
    std::vector<std::int64_t> neighbors;
    std::vector<int> sink_count;
};

}  // namespace sandlab

#endif
