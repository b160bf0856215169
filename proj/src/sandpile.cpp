#include "sandlab/sandpile.hpp"

#include "sandlab/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace sandlab::sandpile {

namespace {

// Ring-buffer FIFO over vertex indices; the in-queue flag keeps entries
// unique, so capacity N+1 suffices.
class VertexQueue {
  public:
    explicit VertexQueue(std::size_t n) : buf_(n + 1), in_queue_(n, 0) {}

    bool empty() const { return head_ == tail_; }

    void push(std::uint32_t v) {
        if (in_queue_[v]) return;
        in_queue_[v] = 1;
        buf_[tail_] = v;
        tail_ = (tail_ + 1) % buf_.size();
    }

    std::uint32_t pop() {
        std::uint32_t v = buf_[head_];
        head_ = (head_ + 1) % buf_.size();
        in_queue_[v] = 0;
        return v;
    }

  private:
    std::vector<std::uint32_t> buf_;
    std::vector<std::uint8_t> in_queue_;
    std::size_t head_ = 0, tail_ = 0;
};

void stabilize_batched_queue(const GridIndex& gi, std::vector<std::uint64_t>& grains,
                             std::vector<std::uint64_t>& topples) {
    const std::size_t N = gi.shape.num_vertices();
    const std::uint64_t deg = static_cast<std::uint64_t>(gi.shape.degree());
    VertexQueue queue(N);
    for (std::size_t v = 0; v < N; ++v)
        if (grains[v] >= deg) queue.push(static_cast<std::uint32_t>(v));
    while (!queue.empty()) {
        const std::uint32_t v = queue.pop();
        const std::uint64_t q = grains[v] / deg;
        if (q == 0) continue;
        grains[v] -= q * deg;
        topples[v] = checked_add_u64(topples[v], q);
        const std::int64_t* row = gi.row(v);
        for (std::uint64_t e = 0; e < deg; ++e) {
            const std::int64_t nb = row[e];
            if (nb < 0) continue;  // sink absorbs
            const std::uint64_t g = checked_add_u64(grains[nb], q);
            grains[static_cast<std::size_t>(nb)] = g;
            if (g >= deg) queue.push(static_cast<std::uint32_t>(nb));
        }
    }
}

// Uniformly random unstable vertex each step; used to exercise the Abelian
// property against the production queue.
void stabilize_random(const GridIndex& gi, std::vector<std::uint64_t>& grains,
                      std::vector<std::uint64_t>& topples, bool batched, std::uint64_t seed) {
    const std::size_t N = gi.shape.num_vertices();
    const std::uint64_t deg = static_cast<std::uint64_t>(gi.shape.degree());
    std::vector<std::uint32_t> active;
    std::vector<std::int64_t> pos(N, -1);
    auto activate = [&](std::size_t v) {
        if (pos[v] >= 0 || grains[v] < deg) return;
        pos[v] = static_cast<std::int64_t>(active.size());
        active.push_back(static_cast<std::uint32_t>(v));
    };
    auto deactivate = [&](std::size_t v) {
        if (pos[v] < 0) return;
        const std::size_t p = static_cast<std::size_t>(pos[v]);
        const std::uint32_t last = active.back();
        active[p] = last;
        pos[last] = static_cast<std::int64_t>(p);
        active.pop_back();
        pos[v] = -1;
    };
    for (std::size_t v = 0; v < N; ++v) activate(v);
    CounterRng rng(seed, /*stream=*/0x70706c65ull, /*counter=*/0);
    while (!active.empty()) {
        const std::size_t p = static_cast<std::size_t>(rng.below(active.size()));
        const std::uint32_t v = active[p];
        const std::uint64_t q = batched ? grains[v] / deg : 1;
        grains[v] -= q * deg;
        topples[v] = checked_add_u64(topples[v], q);
        if (grains[v] < deg) deactivate(v);
        const std::int64_t* row = gi.row(v);
        for (std::uint64_t e = 0; e < deg; ++e) {
            const std::int64_t nb = row[e];
            if (nb < 0) continue;
            grains[static_cast<std::size_t>(nb)] =
                checked_add_u64(grains[static_cast<std::size_t>(nb)], q);
            activate(static_cast<std::size_t>(nb));
        }
    }
}

}  // namespace

std::uint64_t Odometer::grains_to_sink(const GridIndex& gi) const {
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < topples.size(); ++v)
        total = checked_add_u64(
            total, checked_mul_u64(topples[v], static_cast<std::uint64_t>(gi.sink_count[v])));
    return total;
}

Config new_config(const GridShape& shape) { return Config(shape); }

std::pair<Config, Odometer> stabilize(const Config& config, TopplingOrder order,
                                      std::uint64_t seed) {
    const GridIndex gi(config.shape);
    Config out = config;
    Odometer odo(config.shape);
    switch (order) {
        case TopplingOrder::BatchedQueue:
            stabilize_batched_queue(gi, out.grains, odo.topples);
            break;
        case TopplingOrder::RandomSingle:
            stabilize_random(gi, out.grains, odo.topples, false, seed);
            break;
        case TopplingOrder::RandomBatched:
            stabilize_random(gi, out.grains, odo.topples, true, seed);
            break;
    }
    return {std::move(out), std::move(odo)};
}

std::pair<Config, Odometer> add_and_stabilize(const Config& config, const Vertex& site,
                                              std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("add_and_stabilize: k must be >= 1");
    const std::size_t s = config.shape.index(site);
    Config c = config;
    c.grains[s] = checked_add_u64(c.grains[s], k);
    return stabilize(c);
}

bool burning_test(const Config& config) {
    if (!config.stable()) throw std::invalid_argument("burning_test requires a stable configuration");
    const GridIndex gi(config.shape);
    const std::size_t N = config.shape.num_vertices();
    const int deg = config.shape.degree();
    std::vector<int> burnt_edges(gi.sink_count);  // sink starts burnt
    std::vector<std::uint8_t> burnt(N, 0);
    std::vector<std::uint32_t> frontier;
    auto burnable = [&](std::size_t v) {
        return !burnt[v] &&
               config.grains[v] >= static_cast<std::uint64_t>(deg - burnt_edges[v]);
    };
    for (std::size_t v = 0; v < N; ++v)
        if (burnable(v)) frontier.push_back(static_cast<std::uint32_t>(v));
    std::size_t burned = 0;
    while (!frontier.empty()) {
        const std::uint32_t v = frontier.back();
        frontier.pop_back();
        if (burnt[v]) continue;
        if (!burnable(v)) continue;
        burnt[v] = 1;
        ++burned;
        const std::int64_t* row = gi.row(v);
        for (int e = 0; e < deg; ++e) {
            const std::int64_t nb = row[e];
            if (nb < 0) continue;
            burnt_edges[static_cast<std::size_t>(nb)]++;
            if (burnable(static_cast<std::size_t>(nb)))
                frontier.push_back(static_cast<std::uint32_t>(nb));
        }
    }
    return burned == N;
}

namespace {

struct Probe {
    bool recurrent;
    std::uint64_t total_topplings;
};

Probe probe_drive(const GridShape& shape, std::size_t site, std::uint64_t m) {
    Config c(shape);
    c.grains[site] = m;
    auto [stable, odo] = stabilize(c);
    return {burning_test(stable), odo.total()};
}

}  // namespace

DriveReport drive_to_recurrence(const GridShape& shape, const Vertex& site) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t s = shape.index(site);
    DriveReport report;
    report.site = site;

    std::uint64_t topplings_at_min = 0;
    Probe p0 = probe_drive(shape, s, 0);
    if (p0.recurrent) {
        report.recurrent_at = 0;
        report.grains_added = 0;
        report.total_topplings = 0;
    } else {
        // exponential doubling until recurrent, then binary search on
        // (last transient, first recurrent]
        std::uint64_t lo = 0, hi = 1;
        Probe p = probe_drive(shape, s, hi);
        while (!p.recurrent) {
            lo = hi;
            hi = checked_mul_u64(hi, 2);
            p = probe_drive(shape, s, hi);
        }
        report.grains_added = hi;
        topplings_at_min = p.total_topplings;
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            Probe pm = probe_drive(shape, s, mid);
            if (pm.recurrent) {
                hi = mid;
                topplings_at_min = pm.total_topplings;
            } else {
                lo = mid;
            }
        }
        report.recurrent_at = hi;
        report.total_topplings = topplings_at_min;
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

std::uint64_t encode_state(const std::vector<std::uint64_t>& grains, std::uint64_t deg) {
    std::uint64_t code = 0;
    for (std::uint64_t g : grains) code = code * deg + g;
    return code;
}

void decode_state(std::uint64_t code, std::uint64_t deg, std::vector<std::uint64_t>& grains) {
    for (std::size_t i = grains.size(); i-- > 0;) {
        grains[i] = code % deg;
        code /= deg;
    }
}

}  // namespace

std::uint64_t tcl_exact(const GridShape& shape, std::uint64_t state_cap) {
    const std::size_t N = shape.num_vertices();
    const std::uint64_t deg = static_cast<std::uint64_t>(shape.degree());
    if (static_cast<double>(N) * std::log2(static_cast<double>(deg)) > 62.0)
        throw std::invalid_argument("tcl_exact: state space exceeds cap");
    std::uint64_t num_states = 1;
    for (std::size_t i = 0; i < N; ++i) num_states = checked_mul_u64(num_states, deg);
    if (num_states > state_cap) throw std::invalid_argument("tcl_exact: state space exceeds cap");

    // recurrence flag per stable state
    std::vector<std::uint8_t> recurrent(num_states, 0);
    {
        Config c(shape);
        for (std::uint64_t code = 0; code < num_states; ++code) {
            decode_state(code, deg, c.grains);
            recurrent[code] = burning_test(c) ? 1 : 0;
        }
    }

    // successor: add one grain at a vertex, stabilize
    auto successor = [&](std::uint64_t code, std::size_t v) {
        Config c(shape);
        decode_state(code, deg, c.grains);
        c.grains[v] += 1;
        auto stable = stabilize(c).first;
        return encode_state(stable.grains, deg);
    };

    // Memoized longest path over transient states. The transient subgraph is
    // acyclic (a revisited state would be recurrent), which the gray marks
    // double-check.
    constexpr std::int64_t kUnvisited = -1;
    enum : std::uint8_t { kWhite = 0, kGray = 1, kDone = 2 };
    std::vector<std::int64_t> best(num_states, kUnvisited);
    std::vector<std::uint8_t> color(num_states, kWhite);
    const std::uint64_t empty_code = 0;
    if (recurrent[empty_code]) return 0;

    struct Frame {
        std::uint64_t code;
        std::size_t next_vertex;
        std::int64_t acc;
    };
    std::vector<Frame> stack{{empty_code, 0, 0}};
    color[empty_code] = kGray;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_vertex == N) {
            best[f.code] = f.acc;
            color[f.code] = kDone;
            stack.pop_back();
            continue;
        }
        const std::uint64_t succ = successor(f.code, f.next_vertex);
        if (recurrent[succ]) {
            f.next_vertex++;
            continue;
        }
        if (color[succ] == kDone) {
            f.acc = std::max(f.acc, best[succ] + 1);
            f.next_vertex++;
            continue;
        }
        if (color[succ] == kGray)
            throw std::logic_error("tcl_exact: cycle among transient states");
        color[succ] = kGray;
        stack.push_back({succ, 0, 0});
    }
    return static_cast<std::uint64_t>(best[empty_code]);
}

Json DriveReport::to_json() const {
    Json j;
    j["site"] = site;
    j["grains_added"] = grains_added;
    j["recurrent_at"] = recurrent_at;
    j["total_topplings"] = total_topplings;
    j["wall_time"] = wall_time;
    return j;
}

}  // namespace sandlab::sandpile
