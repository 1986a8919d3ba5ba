#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emg/degeneracy.hpp"
#include "emg/graph.hpp"
#include "emg/paths.hpp"

namespace emg {

using Cycle = std::vector<VertexId>;

/// A simple cycle of exactly k vertices through v, listed from v, or nothing
/// iff none exists. Built from representatives of the families of inner
/// vertex sets of u -> v paths, one layer per path length.
std::optional<Cycle> cycle_through(const ExternalGraph& g, std::size_t k, VertexId v);

struct CycleSearchReport {
  std::optional<Cycle> witness;
  bool fallback = false;           // the degenerate search delegated to the general one
  double threshold = 0;            // Delta
  std::uint64_t high_degree = 0;   // vertices handled by cycle_through
  std::uint64_t max_low_degree = 0;
  std::size_t f_length = 0;        // arcs per F path
  std::size_t g_length = 0;        // arcs per G path
  PathGenStats f_stats;
  PathGenStats g_stats;
  std::uint64_t pairs = 0;         // family pairs examined
};

/// Decides whether G has a simple cycle of exactly c vertices.
CycleSearchReport find_cycle_general(const ExternalGraph& g, std::size_t c);

struct DegenerateOptions {
  bool force_degenerate = false;  // skip the fallback to the general search
};

/// Same decision for a graph with a degeneracy ordering; answers agree with
/// find_cycle_general. Witnesses use the original ids.
CycleSearchReport find_cycle_degenerate(const ExternalGraph& g, const DegeneracyOrdering& ordering, std::size_t c,
                                        DegenerateOptions options = {});

/// Backward-arc prefix required of G paths in the degenerate search.
std::size_t degenerate_prefix(bool directed, std::size_t c);

/// Distinct vertices, length c, every arc present including the closing one.
bool validate_cycle(const ExternalGraph& g, const Cycle& cycle, std::size_t c);

}  // namespace emg
