#include "tlm/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "tlm/errors.hpp"

namespace tlm {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

void put_le_double(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le_double(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw InputError("raw grid file is truncated");
  }
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= std::uint64_t{bytes[b]} << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_csv(std::ostream& out, const GridFunction& f) {
  const Grid& grid = f.grid();
  out << (grid.dimension() == 1 ? "x0,re,im\n" : "x0,x1,re,im\n");
  out << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = grid.point(i);
    out << x[0] << ',';
    if (grid.dimension() == 2) out << x[1] << ',';
    out << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const GridFunction& f) {
  auto out = open_out(path, false);
  write_csv(out, f);
}

GridFunction read_csv(std::istream& in, const Grid& grid) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV input");
  const int columns = grid.dimension() + 2;
  const double tol = 1e-9 * grid.half_extent();
  GridFunction f(grid);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= grid.size()) throw InputError("CSV has more rows than nodes");
    std::stringstream ss(line);
    std::string cell;
    double v[4] = {0, 0, 0, 0};
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= columns) throw InputError("CSV row has too many columns");
      try {
        v[c++] = std::stod(cell);
      } catch (const std::exception&) {
        throw InputError("CSV cell is not a number: '" + cell + "'");
      }
    }
    if (c != columns) throw InputError("CSV row has too few columns");
    const Point x = grid.point(row);
    for (int a = 0; a < grid.dimension(); ++a) {
      if (std::abs(v[a] - x[a]) > tol) {
        std::ostringstream msg;
        msg << "CSV row " << row << " coordinate " << v[a]
            << " does not match grid node " << x[a];
        throw InputError(msg.str());
      }
    }
    f[row] = Complex(v[columns - 2], v[columns - 1]);
    ++row;
  }
  if (row != grid.size()) {
    std::ostringstream msg;
    msg << "CSV has " << row << " rows, grid has " << grid.size() << " nodes";
    throw InputError(msg.str());
  }
  return f;
}

GridFunction read_csv(const std::filesystem::path& path, const Grid& grid) {
  auto in = open_in(path, false);
  return read_csv(in, grid);
}

void write_raw(std::ostream& out, const GridFunction& f) {
  const Grid& grid = f.grid();
  out << "tlmgrid " << grid.dimension() << ' ' << grid.samples_per_axis()
      << ' ' << std::setprecision(17) << grid.half_extent() << '\n';
  for (auto z : f.samples()) {
    put_le_double(out, z.real());
    put_le_double(out, z.imag());
  }
}

void write_raw(const std::filesystem::path& path, const GridFunction& f) {
  auto out = open_out(path, true);
  write_raw(out, f);
}

GridFunction read_raw(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InputError("empty raw grid file");
  std::istringstream hs(header);
  std::string magic;
  int n = 0;
  std::size_t N = 0;
  double L = 0.0;
  if (!(hs >> magic >> n >> N >> L) || magic != "tlmgrid") {
    throw InputError("raw grid header must read 'tlmgrid <n> <N> <L>'");
  }
  Grid grid(n, N, L);
  GridFunction f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double re = get_le_double(in);
    const double im = get_le_double(in);
    f[i] = Complex(re, im);
  }
  return f;
}

GridFunction read_raw(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  return read_raw(in);
}

GridFunction read_grid_function(const std::filesystem::path& path,
                                const Grid& grid) {
  if (path.extension() == ".csv") return read_csv(path, grid);
  GridFunction f = read_raw(path);
  if (!(f.grid() == grid)) {
    std::ostringstream msg;
    msg << "raw file grid (n=" << f.grid().dimension()
        << ", N=" << f.grid().samples_per_axis()
        << ", L=" << f.grid().half_extent()
        << ") does not match the configured grid";
    throw InputError(msg.str());
  }
  return f;
}

}  // namespace tlm
