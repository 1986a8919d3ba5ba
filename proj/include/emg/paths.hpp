#pragma once

// Path generation by sequence decoding.
//
// A path of `len` arcs is encoded as a first arc followed by len - 1 steps.
// A step ("E", i) moves to the i-th out-neighbor of the current end, ("L", i)
// to its i-th out-neighbor ranked later, and ("P", i) prepends the i-th
// in-neighbor of the current start that is ranked later. All sequences are
// written out first; decoding then runs one round per step, sorting the
// sequences by (current vertex, step) and joining them against the ranked
// adjacency lists. Invalid and non-simple decodings are dropped.

#include <array>
#include <cstdint>
#include <vector>

#include "emg/graph.hpp"
#include "emg/representatives.hpp"

namespace emg {

inline constexpr std::size_t kMaxPathArcs = 16;

struct PathRec {
  std::uint8_t size = 0;  // vertex count
  std::array<VertexId, kMaxPathArcs + 1> v{};

  VertexId front() const { return v[0]; }
  VertexId back() const { return v[size - 1]; }
  std::vector<VertexId> to_vector() const { return {v.begin(), v.begin() + size}; }
  bool contains(VertexId x) const;
  PSet inner() const;  // vertices strictly between the endpoints

  friend auto operator<=>(const PathRec&, const PathRec&) = default;
};

PathRec make_path(const std::vector<VertexId>& vertices);

enum class PathMode {
  forward,              // at most floor(len/2) unrestricted steps after the first arc
  backward,             // reverse of forward generation on the transposed graph
  all,                  // forward and backward combined, deduplicated
  one_backward_prefix,  // first arc goes to an earlier vertex
  two_backward_prefix,  // first two arcs go to earlier vertices
};

const char* to_string(PathMode mode);

struct PathGenStats {
  std::uint64_t sequences = 0;  // sequences written before decoding
  std::uint64_t paths = 0;      // distinct paths emitted
  std::uint64_t max_degree = 0;        // alphabet size of "E" steps
  std::uint64_t max_later_degree = 0;  // alphabet size of "L" and "P" steps
};

/// Every simple directed path with `len` arcs exactly once, sorted.
em::Run<PathRec> generate_paths(const ExternalGraph& g, std::size_t len, PathGenStats* stats = nullptr);

/// Restricted generation on a graph whose ids are ranks of a degeneracy
/// ordering (see reorder_graph). Output is sorted and duplicate free; ids stay
/// in rank space.
em::Run<PathRec> generate_paths_degenerate(const ExternalGraph& ranked, std::size_t len, PathMode mode,
                                           PathGenStats* stats = nullptr);

/// Upper bound on the sequences generate_paths writes: m * Delta^(len-1).
double general_sequence_bound(std::uint64_t m, std::uint64_t delta, std::size_t len);
/// Upper bound for the restricted modes: C * 2^(2k) * m * Delta^k * delta^k with
/// len in {2k, 2k+1} and delta at least 1; C = 2 covers the two directions
/// of `all`.
double degenerate_sequence_bound(std::uint64_t m, std::uint64_t delta, std::uint64_t later_delta, std::size_t len,
                                 PathMode mode);

em::Run<PathRec> reverse_paths(const em::Run<PathRec>& paths);
/// Maps every vertex x to order[x]. Result sorted.
em::Run<PathRec> unrank_paths(const em::Run<PathRec>& paths, const em::Run<VertexId>& order);

struct FamilyPair {
  VertexId u;
  VertexId v;
  std::uint64_t f_begin, f_end;  // F_uv: inner sets of u -> v paths
  std::uint64_t g_begin, g_end;  // G_vu: inner sets of v -> u paths
};

struct FamilyPairs {
  std::size_t p = 0;  // inner size of F members
  std::size_t q = 0;  // inner size of G members
  em::Run<PSet> sets;
  em::Run<FamilyPair> pairs;

  PSetFamily f(const FamilyPair& pair) const { return {p, sets, pair.f_begin, pair.f_end}; }
  PSetFamily g(const FamilyPair& pair) const { return {q, sets, pair.g_begin, pair.g_end}; }
};

/// Pairs F_uv with F_vu for u < v over one run of equal-length paths: each
/// path u -> v is tagged (min, max, 1 or 2, inner), sorted, and scanned.
FamilyPairs group_families(const em::Run<PathRec>& paths);
/// Pairs F_uv (from `f_paths`) with G_vu (from `g_paths`) for every (u, v).
FamilyPairs group_families(const em::Run<PathRec>& f_paths, const em::Run<PathRec>& g_paths);

}  // namespace emg
