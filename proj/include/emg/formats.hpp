#pragma once

#include <iosfwd>
#include <optional>

#include "emg/graph.hpp"

namespace emg::io {

/// Text edge list with a "# n=<count>" header; undirected edges once (u < v).
void write_edge_list(std::ostream& out, const ExternalGraph& g);

/// Binary graph: 32-byte header (magic "EMGRAPH1", n, arc count, flags with
/// bit 0 = directed), then little-endian u64 (from, to) pairs for every
/// stored arc, zero-padded to a whole number of blocks of B pairs.
inline constexpr char kBinaryMagic[8] = {'E', 'M', 'G', 'R', 'A', 'P', 'H', '1'};
void write_binary_graph(std::ostream& out, const ExternalGraph& g);
ExternalGraph read_binary_graph(std::istream& in, em::Storage& storage);

struct OrderingFile {
  em::Run<VertexId> order;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> certified_bound;
};

/// One vertex id per line in rank order, then "# epsilon=<e> certified_bound=<d>".
void write_ordering(std::ostream& out, const em::Run<VertexId>& order, double epsilon, std::uint64_t certified_bound);
OrderingFile read_ordering(std::istream& in, em::Storage& storage);

}  // namespace emg::io
