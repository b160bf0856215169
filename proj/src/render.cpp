#include "sandlab/sandpile.hpp"

#include <array>
#include <fstream>

namespace sandlab::sandpile {

namespace {

constexpr std::array<std::array<int, 3>, 4> kPalette{{
    {255, 255, 255},  // 0 grains
    {80, 160, 255},   // 1
    {255, 200, 60},   // 2
    {160, 40, 40},    // 3
}};

void write_ppm(const Config& config, const std::filesystem::path& file) {
    const int n = config.shape.n;
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot open " + file.string());
    os << "P3\n" << n << " " << n << "\n255\n";
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            const std::uint64_t g = config.grains[config.shape.index({r, c})];
            const auto& rgb = kPalette[static_cast<std::size_t>(g)];
            os << rgb[0] << " " << rgb[1] << " " << rgb[2];
            os << (c == n ? '\n' : ' ');
        }
    }
    if (!os) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace

std::vector<std::filesystem::path> render_frames(const GridShape& shape, const Vertex& site,
                                                 const std::vector<std::uint64_t>& checkpoints,
                                                 const std::filesystem::path& out_dir) {
    if (shape.d != 2) throw std::invalid_argument("render_frames requires d = 2");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("render_frames: checkpoints must be ascending");
    const std::size_t s = shape.index(site);
    std::filesystem::create_directories(out_dir);

    std::vector<std::filesystem::path> files;
    Config config(shape);
    std::uint64_t placed = 0;
    for (std::uint64_t checkpoint : checkpoints) {
        const std::uint64_t delta = checkpoint - placed;
        if (delta > 0) {
            config.grains[s] = checked_add_u64(config.grains[s], delta);
            config = stabilize(config).first;
            placed = checkpoint;
        }
        const auto file = out_dir / ("frame_" + std::to_string(checkpoint) + ".ppm");
        write_ppm(config, file);
        files.push_back(file);
    }
    return files;
}

}  // namespace sandlab::sandpile
