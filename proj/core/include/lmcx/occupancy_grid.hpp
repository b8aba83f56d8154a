#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lmcx {

struct Cell {
    int i = 0;  // column
    int j = 0;  // row
    bool operator==(const Cell&) const = default;
};

// Binary occupancy grid over a closed rectangular world. Cell (i, j) spans
// [i*res, (i+1)*res) x [j*res, (j+1)*res) in world coordinates.
class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height, double resolution = 1.0);

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }
    double width_m() const { return width_ * resolution_; }
    double height_m() const { return height_ * resolution_; }
    double diagonal_m() const;

    bool in_bounds(int i, int j) const { return i >= 0 && i < width_ && j >= 0 && j < height_; }
    // Out-of-bounds cells count as occupied (the world is closed).
    bool occupied(int i, int j) const { return !in_bounds(i, j) || occ_[idx(i, j)] != 0; }
    bool free_cell(int i, int j) const { return !occupied(i, j); }
    void set_occupied(int i, int j, bool value = true);
    void close_boundary();

    long cell_count() const { return static_cast<long>(width_) * height_; }
    long occupied_count() const;
    long free_count() const { return cell_count() - occupied_count(); }

    Cell cell_at(double x, double y) const;
    double cell_center_x(int i) const { return (i + 0.5) * resolution_; }
    double cell_center_y(int j) const { return (j + 0.5) * resolution_; }
    bool occupied_at(double x, double y) const;

    // True when the straight segment between the two world points crosses no
    // occupied cell (endpoints' cells included).
    bool segment_clear(double x0, double y0, double x1, double y1) const;

    // Closest free cell (by Euclidean distance from the given point to cell
    // centers, ties broken by linear index). Throws if the grid has no free cell.
    Cell nearest_free_cell(double x, double y) const;

    bool operator==(const OccupancyGrid&) const = default;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * width_ + i; }

    int width_ = 0;
    int height_ = 0;
    double resolution_ = 1.0;
    std::vector<std::uint8_t> occ_;
};

// Reads an 8-bit grayscale PGM (P5) or PNG image; pixels < 128 are occupied.
// Throws std::runtime_error on unreadable files and on maps with no free cell.
OccupancyGrid load_map(const std::string& path);

// Discretized configuration grid: the base grid crossed with n_theta heading
// slices (n_theta == 1 for the planar R^2 case).
struct ConfigGrid {
    OccupancyGrid base;
    int n_theta = 1;

    double theta(int k) const;
    long cells() const { return base.cell_count() * n_theta; }
    long index(int i, int j, int k) const {
        return (static_cast<long>(k) * base.height() + j) * base.width() + i;
    }
    int slice_of(long index) const { return static_cast<int>(index / base.cell_count()); }
    Cell cell_of(long index) const {
        const long in_slice = index % base.cell_count();
        return Cell{static_cast<int>(in_slice % base.width()), static_cast<int>(in_slice / base.width())};
    }
    bool valid(int i, int j, int k) const {
        return k >= 0 && k < n_theta && base.free_cell(i, j);
    }
    long valid_count() const { return base.free_count() * n_theta; }
};

// Bitset over configuration-grid cells.
class CoverageMask {
public:
    CoverageMask() = default;
    explicit CoverageMask(long size) : size_(size), words_((size + 63) / 64, 0) {}

    long size() const { return size_; }
    bool test(long i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(long i, bool v = true) {
        if (v)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void or_with(const CoverageMask& other);
    void and_not(const CoverageMask& other);  // this &= ~other
    long count() const;
    long count_and(const CoverageMask& other) const;  // popcount(this & other)
    bool any() const;

    bool operator==(const CoverageMask&) const = default;

private:
    long size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace lmcx
