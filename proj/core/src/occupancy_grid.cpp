#include "lmcx/occupancy_grid.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lmcx {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution)
    : width_(width), height_(height), resolution_(resolution),
      occ_(static_cast<std::size_t>(width) * height, 0) {
    if (width <= 0 || height <= 0 || resolution <= 0.0)
        throw std::invalid_argument("occupancy grid dimensions must be positive");
}

double OccupancyGrid::diagonal_m() const {
    return std::hypot(width_m(), height_m());
}

void OccupancyGrid::set_occupied(int i, int j, bool value) {
    if (!in_bounds(i, j)) throw std::out_of_range("set_occupied: cell out of bounds");
    occ_[idx(i, j)] = value ? 1 : 0;
}

void OccupancyGrid::close_boundary() {
    for (int i = 0; i < width_; ++i) {
        occ_[idx(i, 0)] = 1;
        occ_[idx(i, height_ - 1)] = 1;
    }
    for (int j = 0; j < height_; ++j) {
        occ_[idx(0, j)] = 1;
        occ_[idx(width_ - 1, j)] = 1;
    }
}

long OccupancyGrid::occupied_count() const {
    long n = 0;
    for (auto v : occ_) n += v != 0;
    return n;
}

Cell OccupancyGrid::cell_at(double x, double y) const {
    return Cell{static_cast<int>(std::floor(x / resolution_)),
                static_cast<int>(std::floor(y / resolution_))};
}

bool OccupancyGrid::occupied_at(double x, double y) const {
    const Cell c = cell_at(x, y);
    return occupied(c.i, c.j);
}

bool OccupancyGrid::segment_clear(double x0, double y0, double x1, double y1) const {
    // Amanatides-Woo traversal over the cells crossed by the segment. The set
    // of crossed cells is a geometric property of the segment, so the result
    // is symmetric in the endpoints.
    const double gx0 = x0 / resolution_, gy0 = y0 / resolution_;
    const double gx1 = x1 / resolution_, gy1 = y1 / resolution_;
    int i = static_cast<int>(std::floor(gx0));
    int j = static_cast<int>(std::floor(gy0));
    const int i1 = static_cast<int>(std::floor(gx1));
    const int j1 = static_cast<int>(std::floor(gy1));

    if (occupied(i, j)) return false;

    const double dx = gx1 - gx0, dy = gy1 - gy0;
    const int step_i = dx > 0 ? 1 : -1;
    const int step_j = dy > 0 ? 1 : -1;
    const double inf = std::numeric_limits<double>::infinity();
    const double t_delta_x = dx == 0.0 ? inf : std::abs(1.0 / dx);
    const double t_delta_y = dy == 0.0 ? inf : std::abs(1.0 / dy);
    double t_max_x = inf, t_max_y = inf;
    if (dx != 0.0) {
        const double border = step_i > 0 ? std::floor(gx0) + 1.0 : std::floor(gx0);
        t_max_x = (border - gx0) / dx;
    }
    if (dy != 0.0) {
        const double border = step_j > 0 ? std::floor(gy0) + 1.0 : std::floor(gy0);
        t_max_y = (border - gy0) / dy;
    }

    const long max_steps = std::abs(i1 - i) + std::abs(j1 - j) + 4;
    for (long step = 0; (i != i1 || j != j1) && step < max_steps; ++step) {
        if (t_max_x < t_max_y) {
            t_max_x += t_delta_x;
            i += step_i;
        } else if (t_max_y < t_max_x) {
            t_max_y += t_delta_y;
            j += step_j;
        } else {
            // Exact corner crossing: step diagonally.
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
            i += step_i;
            j += step_j;
        }
        if (occupied(i, j)) return false;
    }
    return true;
}

Cell OccupancyGrid::nearest_free_cell(double x, double y) const {
    double best = std::numeric_limits<double>::infinity();
    Cell best_cell{-1, -1};
    for (int j = 0; j < height_; ++j) {
        for (int i = 0; i < width_; ++i) {
            if (occ_[idx(i, j)]) continue;
            const double dx = cell_center_x(i) - x;
            const double dy = cell_center_y(j) - y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) {
                best = d2;
                best_cell = Cell{i, j};
            }
        }
    }
    if (best_cell.i < 0) throw std::runtime_error("nearest_free_cell: grid has no free cell");
    return best_cell;
}

namespace {

int read_pgm_token(std::istream& in) {
    // Skips whitespace and '#' comments, then reads one unsigned integer.
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("malformed PGM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

OccupancyGrid grid_from_gray(const std::vector<std::uint8_t>& gray, int w, int h,
                             const std::string& path) {
    OccupancyGrid grid(w, h, 1.0);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            if (gray[static_cast<std::size_t>(j) * w + i] < 128) grid.set_occupied(i, j);
    if (grid.free_count() == 0)
        throw std::runtime_error("no free space in map: " + path);
    return grid;
}

OccupancyGrid load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        throw std::runtime_error("not a binary PGM (P5) file: " + path);
    const int w = read_pgm_token(in);
    const int h = read_pgm_token(in);
    const int maxval = read_pgm_token(in);
    if (w <= 0 || h <= 0) throw std::runtime_error("bad PGM dimensions: " + path);
    if (maxval <= 0 || maxval > 255)
        throw std::runtime_error("only 8-bit PGM supported: " + path);
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
    if (in.gcount() != static_cast<std::streamsize>(gray.size()))
        throw std::runtime_error("truncated PGM pixel data: " + path);
    return grid_from_gray(gray, w, h, path);
}

OccupancyGrid load_png(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw std::runtime_error("cannot read PNG map: " + path);
    image.format = PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
        png_image_free(&image);
        throw std::runtime_error("failed to decode PNG map: " + path);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    return grid_from_gray(gray, w, h, path);
}

}  // namespace

OccupancyGrid load_map(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open map file: " + path);
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && magic[1] == '5') return load_pgm(path);
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') return load_png(path);
    throw std::runtime_error("unsupported map format (expect PGM P5 or PNG): " + path);
}

double ConfigGrid::theta(int k) const {
    return 2.0 * std::numbers::pi * k / n_theta;
}

void CoverageMask::or_with(const CoverageMask& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
}

void CoverageMask::and_not(const CoverageMask& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
}

long CoverageMask::count() const {
    long n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

long CoverageMask::count_and(const CoverageMask& other) const {
    long n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) n += std::popcount(words_[w] & other.words_[w]);
    return n;
}

bool CoverageMask::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

}  // namespace lmcx
