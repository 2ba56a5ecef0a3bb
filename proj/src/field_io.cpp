#include "czlab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "czlab/error.hpp"

namespace czlab {

using nlohmann::json;

json field_to_json(const MatrixField& f) {
  const GridSpec& g = f.spec();
  json cells = json::array();
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    json c = json::array();
    const auto cell = f.cell(i);
    for (int r = 0; r < g.m; ++r)
      for (int k = 0; k < g.m; ++k) c.push_back(json::array({cell(r, k).real(), cell(r, k).imag()}));
    cells.push_back(std::move(c));
  }
  return json{{"spec", {{"d", g.d}, {"L", g.L}, {"m", g.m}}}, {"cells", std::move(cells)}};
}

MatrixField field_from_json(const json& j) {
  try {
    GridSpec g{j.at("spec").at("d").get<int>(), j.at("spec").at("L").get<int>(), j.at("spec").at("m").get<int>()};
    g.validate();
    const json& cells = j.at("cells");
    if (!cells.is_array() || cells.size() != g.cells()) throw IoError("field json: wrong number of cells");
    MatrixField f(g);
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const json& c = cells[i];
      if (!c.is_array() || c.size() != g.matrix_entries()) throw IoError("field json: wrong cell size");
      auto cell = f.cell(i);
      for (int r = 0; r < g.m; ++r)
        for (int k = 0; k < g.m; ++k) {
          const json& e = c[static_cast<std::size_t>(r * g.m + k)];
          cell(r, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    if (!f.all_finite()) throw IoError("field json: non-finite entry");
    return f;
  } catch (const json::exception& e) {
    throw IoError(std::string("field json: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("field json: ") + e.what());
  }
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary field format assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("binary field: truncated input");
  return v;
}

}  // namespace

void write_field_binary(std::ostream& os, const MatrixField& f) {
  const GridSpec& g = f.spec();
  os.write("NCMF", 4);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(g.d));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(g.L));
  put<std::uint16_t>(os, static_cast<std::uint16_t>(g.m));
  put<std::uint32_t>(os, 0);
  put<std::uint32_t>(os, 0);
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const auto cell = f.cell(i);
    for (int r = 0; r < g.m; ++r)
      for (int k = 0; k < g.m; ++k) {
        put<double>(os, cell(r, k).real());
        put<double>(os, cell(r, k).imag());
      }
  }
  if (!os) throw IoError("binary field: write failed");
}

MatrixField read_field_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "NCMF", 4) != 0) throw IoError("binary field: bad magic");
  GridSpec g;
  g.d = get<std::uint8_t>(is);
  g.L = get<std::uint8_t>(is);
  g.m = get<std::uint16_t>(is);
  get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("binary field: ") + e.what());
  }
  MatrixField f(g);
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    auto cell = f.cell(i);
    for (int r = 0; r < g.m; ++r)
      for (int k = 0; k < g.m; ++k) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        cell(r, k) = cplx(re, im);
      }
  }
  if (!f.all_finite()) throw IoError("binary field: non-finite entry");
  return f;
}

void save_field(const std::filesystem::path& path, const MatrixField& f) {
  if (path.extension() == ".json") {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path.string());
    os << field_to_json(f).dump() << '\n';
    if (!os) throw IoError("write failed: " + path.string());
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string());
  write_field_binary(os, f);
}

MatrixField load_field(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    json j;
    try {
      is >> j;
    } catch (const json::exception& e) {
      throw IoError(path.string() + ": " + e.what());
    }
    return field_from_json(j);
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_field_binary(is);
}

}  // namespace czlab
