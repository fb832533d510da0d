#pragma once

#include <filesystem>
#include <iosfwd>

#include "tlm/grid.hpp"

namespace tlm {

/// CSV with one row per node: node coordinates, then real and imaginary
/// parts. Header "x0,re,im" (n = 1) or "x0,x1,re,im" (n = 2).
void write_csv(std::ostream& out, const GridFunction& f);
void write_csv(const std::filesystem::path& path, const GridFunction& f);

/// Reads a CSV written by `write_csv`; rows must list exactly the nodes of
/// `grid` in linear-index order.
GridFunction read_csv(std::istream& in, const Grid& grid);
GridFunction read_csv(const std::filesystem::path& path, const Grid& grid);

/// Raw format: a text line "tlmgrid <n> <N> <L>\n" followed by N^n
/// (re, im) pairs as little-endian float64.
void write_raw(std::ostream& out, const GridFunction& f);
void write_raw(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_raw(std::istream& in);
GridFunction read_raw(const std::filesystem::path& path);

/// Dispatches on extension: ".csv" is CSV, anything else raw.
GridFunction read_grid_function(const std::filesystem::path& path,
                                const Grid& grid);

}  // namespace tlm
