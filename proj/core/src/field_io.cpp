#include "sublinear/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace sublinear {

namespace {

void append_number(std::string& line, double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  line.append(buf.data(), end);
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  std::array<char, 8> bytes{};
  std::memcpy(bytes.data(), &bits, 8);
  out.write(bytes.data(), 8);
}

double get_le(std::istream& in) {
  std::array<char, 8> bytes{};
  if (!in.read(bytes.data(), 8)) throw std::runtime_error("truncated binary field file");
  std::uint64_t bits = 0;
  std::memcpy(&bits, bytes.data(), 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

std::size_t as_count(double v, const char* what) {
  if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw std::runtime_error(std::string("invalid ") + what + " in binary header");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void write_csv(std::ostream& out, const ScalarField& field) {
  const Grid& g = field.grid();
  out << "x,y,u\n";
  std::string line;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const Point p = g.coordinate(node);
    line.clear();
    append_number(line, p.x);
    line.push_back(',');
    append_number(line, p.y);
    line.push_back(',');
    append_number(line, field[node]);
    line.push_back('\n');
    out << line;
  }
}

void write_csv(const std::filesystem::path& path, const ScalarField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, field);
}

void write_binary(std::ostream& out, std::span<const ScalarField> fields) {
  if (fields.empty()) throw std::invalid_argument("no fields to write");
  const Grid& g = fields.front().grid();
  for (const auto& f : fields) {
    if (!f.aligned_with(g)) throw std::invalid_argument("binary fields must share one grid");
  }
  put_le(out, BinaryHeader::kMagic);
  put_le(out, BinaryHeader::kVersion);
  put_le(out, static_cast<double>(g.nx()));
  put_le(out, static_cast<double>(g.ny()));
  put_le(out, g.spacing());
  put_le(out, g.origin().x);
  put_le(out, g.origin().y);
  put_le(out, static_cast<double>(fields.size()));
  for (const auto& f : fields) {
    for (double v : f.values()) put_le(out, v);
  }
}

void write_binary(const std::filesystem::path& path, std::span<const ScalarField> fields) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_binary(out, fields);
}

BinaryFields read_binary(std::istream& in) {
  if (get_le(in) != BinaryHeader::kMagic) throw std::runtime_error("bad magic in binary field file");
  if (get_le(in) != BinaryHeader::kVersion) throw std::runtime_error("unsupported binary version");
  BinaryFields result;
  auto& h = result.header;
  h.nx = as_count(get_le(in), "nx");
  h.ny = as_count(get_le(in), "ny");
  h.spacing = get_le(in);
  h.origin.x = get_le(in);
  h.origin.y = get_le(in);
  h.field_count = as_count(get_le(in), "field_count");
  result.fields.resize(h.field_count);
  for (auto& values : result.fields) {
    values.resize(h.nx * h.ny);
    for (double& v : values) v = get_le(in);
  }
  return result;
}

BinaryFields read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_binary(in);
}

}  // namespace sublinear
