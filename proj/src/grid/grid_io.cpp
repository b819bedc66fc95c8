#include "morrey/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "morrey/error.hpp"

namespace morrey {

namespace {

constexpr char kMagic[8] = {'M', 'R', 'Y', 'G', 'R', 'I', 'D', '1'};

static_assert(std::endian::native == std::endian::little, "binary grid layout assumes little-endian");

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("truncated grid file");
  return v;
}

std::size_t cells_from_extent(double extent, double h) {
  double c = extent / h;
  double r = std::round(c);
  if (!(r >= 1.0) || std::fabs(c - r) > 1e-9 * r) throw Error("extent is not a multiple of h");
  return static_cast<std::size_t>(r);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw Error("bad number in grid CSV: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw Error("bad number in grid CSV: " + s);
  }
}

GridSpec make_spec(std::size_t n, const std::vector<double>& corner, const std::vector<double>& extent,
                   double h) {
  if (n < 1 || n > kMaxDim) throw Error("grid dimension must be in [1, 3]");
  Point c(n);
  std::array<std::size_t, kMaxDim> cells{1, 1, 1};
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = corner[i];
    cells[i] = cells_from_extent(extent[i], h);
  }
  return GridSpec(c, cells, h);
}

}  // namespace

void write_grid_binary(std::ostream& out, const GridFunction& g) {
  const GridSpec& s = g.spec();
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) put(out, s.corner()[i]);
  for (std::size_t i = 0; i < s.dim(); ++i) put(out, s.extent(i));
  put(out, s.step());
  out.write(reinterpret_cast<const char*>(g.values().data()),
            static_cast<std::streamsize>(g.size() * sizeof(double)));
  if (!out) throw Error("failed writing grid");
}

GridFunction read_grid_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw Error("not a grid file");
  auto n = get<std::uint32_t>(in);
  if (n < 1 || n > kMaxDim) throw Error("grid dimension must be in [1, 3]");
  std::vector<double> corner(n), extent(n);
  for (auto& v : corner) v = get<double>(in);
  for (auto& v : extent) v = get<double>(in);
  double h = get<double>(in);
  GridSpec spec = make_spec(n, corner, extent, h);
  std::vector<double> values(spec.cell_count());
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw Error("truncated grid file");
  return GridFunction(spec, std::move(values));
}

void write_grid_csv(std::ostream& out, const GridFunction& g, const std::string& comment) {
  const GridSpec& s = g.spec();
  if (!comment.empty()) {
    std::stringstream ss(comment);
    std::string line;
    while (std::getline(ss, line)) out << "# " << line << '\n';
  }
  out << "n," << s.dim() << '\n' << "corner";
  for (std::size_t i = 0; i < s.dim(); ++i) out << ',' << fmt(s.corner()[i]);
  out << '\n' << "extent";
  for (std::size_t i = 0; i < s.dim(); ++i) out << ',' << fmt(s.extent(i));
  out << '\n' << "h," << fmt(s.step()) << '\n';
  const std::size_t row = s.cells(s.dim() - 1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    out << fmt(g[k]) << ((k + 1) % row == 0 ? '\n' : ',');
  }
  if (!out) throw Error("failed writing grid");
}

GridFunction read_grid_csv(std::istream& in) {
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split(line));
  }
  auto header = [&](std::size_t r, const char* key) -> const std::vector<std::string>& {
    if (r >= rows.size() || rows[r].empty() || rows[r][0] != key)
      throw Error(std::string("grid CSV missing '") + key + "' row");
    return rows[r];
  };
  const auto& nrow = header(0, "n");
  if (nrow.size() != 2) throw Error("grid CSV 'n' row malformed");
  double nd = parse_double(nrow[1]);
  if (nd != 1.0 && nd != 2.0 && nd != 3.0) throw Error("grid dimension must be in [1, 3]");
  const auto n = static_cast<std::size_t>(nd);
  auto vec = [&](std::size_t r, const char* key) {
    const auto& row = header(r, key);
    if (row.size() != n + 1) throw Error(std::string("grid CSV '") + key + "' row has wrong length");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = parse_double(row[i + 1]);
    return v;
  };
  auto corner = vec(1, "corner");
  auto extent = vec(2, "extent");
  const auto& hrow = header(3, "h");
  if (hrow.size() != 2) throw Error("grid CSV 'h' row malformed");
  GridSpec spec = make_spec(n, corner, extent, parse_double(hrow[1]));
  std::vector<double> values;
  values.reserve(spec.cell_count());
  for (std::size_t r = 4; r < rows.size(); ++r)
    for (const auto& cell : rows[r]) values.push_back(parse_double(cell));
  if (values.size() != spec.cell_count()) throw Error("grid CSV value count does not match header");
  return GridFunction(spec, std::move(values));
}

void save_grid(const std::string& path, const GridFunction& g, const std::string& comment) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ofstream out(path, csv ? std::ios::out : std::ios::binary);
  if (!out) throw Error("cannot open " + path);
  if (csv) write_grid_csv(out, g, comment);
  else write_grid_binary(out, g);
}

GridFunction load_grid(const std::string& path) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return csv ? read_grid_csv(in) : read_grid_binary(in);
}

}  // namespace morrey
