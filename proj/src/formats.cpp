#include "emg/formats.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace emg::io {

namespace {

void put_u64(std::ostream& out, std::uint64_t value) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  out.write(bytes.data(), 8);
}

std::uint64_t get_u64(std::istream& in, std::uint64_t record) {
  std::array<unsigned char, 8> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), 8)) throw IoError(record, "truncated binary graph");
  std::uint64_t value = 0;
  for (int i = 7; i >= 0; --i) value = (value << 8) | bytes[i];
  return value;
}

}  // namespace

void write_edge_list(std::ostream& out, const ExternalGraph& g) {
  out << "# n=" << g.n << '\n';
  em::for_each(g.arcs, [&](const Arc& a) {
    if (g.directed || a.from < a.to) out << a.from << ' ' << a.to << '\n';
  });
}

void write_binary_graph(std::ostream& out, const ExternalGraph& g) {
  out.write(kBinaryMagic, sizeof(kBinaryMagic));
  put_u64(out, g.n);
  put_u64(out, g.arc_count());
  put_u64(out, g.directed ? 1 : 0);
  em::for_each(g.arcs, [&](const Arc& a) {
    put_u64(out, a.from);
    put_u64(out, a.to);
  });
  const auto block = g.arcs.storage() ? g.arcs.storage()->config().block : 1;
  const auto padding = (block - g.arc_count() % block) % block;
  for (std::uint64_t i = 0; i < 2 * padding; ++i) put_u64(out, 0);
}

ExternalGraph read_binary_graph(std::istream& in, em::Storage& storage) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kBinaryMagic, 8) != 0) throw ParseError(0, "not a binary graph");
  const auto n = get_u64(in, 0);
  const auto m = get_u64(in, 0);
  const auto flags = get_u64(in, 0);
  if (n > std::uint64_t{kMaxVertexId} + 1) throw RangeError("vertex count exceeds the id range");
  em::RunWriter<Arc> writer(storage);
  for (std::uint64_t i = 0; i < m; ++i) {
    const auto u = get_u64(in, i);
    const auto v = get_u64(in, i);
    if (u >= n || v >= n) throw RangeError("arc " + std::to_string(i) + " has an id outside 0..n-1");
    writer.push({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  return build_graph(storage, n, flags & 1, writer.finish()).graph;
}

void write_ordering(std::ostream& out, const em::Run<VertexId>& order, double epsilon, std::uint64_t certified_bound) {
  em::for_each(order, [&](VertexId v) { out << v << '\n'; });
  out << "# epsilon=" << epsilon << " certified_bound=" << certified_bound << '\n';
}

OrderingFile read_ordering(std::istream& in, em::Storage& storage) {
  OrderingFile result;
  em::RunWriter<VertexId> writer(storage);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    if (token[0] == '#') {
      std::string rest = token.substr(1);
      try {
        do {
          if (rest.rfind("epsilon=", 0) == 0) result.epsilon = std::stod(rest.substr(8));
          if (rest.rfind("certified_bound=", 0) == 0) result.certified_bound = std::stoull(rest.substr(16));
        } while (tokens >> rest);
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "malformed ordering footer");
      }
      continue;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(line_no, "not a vertex id: '" + token + "'");
    }
    if (v > kMaxVertexId) throw RangeError("line " + std::to_string(line_no) + ": vertex id overflow");
    if (tokens >> token) throw ParseError(line_no, "expected one vertex id per line");
    writer.push(static_cast<VertexId>(v));
  }
  result.order = writer.finish();
  return result;
}

}  // namespace emg::io
