#pragma once

// Shared expectations for the unit tests and the acceptance run.

#include <vector>

#include "emg/oracles.hpp"
#include "emg/paths.hpp"
#include "emg/representatives.hpp"

namespace emg::fixtures {

inline RepNode labeled(std::uint64_t parent, std::uint64_t first_child, VertexId edge, std::uint8_t depth,
                       PSet label) {
  return {parent, first_child, edge, depth, 0, label};
}

inline RepNode lambda(std::uint64_t parent, VertexId edge, std::uint8_t depth) {
  return {parent, kNoNode, edge, depth, 1, {}};
}

// The 2-family of the worked example, elements listed in the order of the
// edges leaving each node of its 3-representative tree.
inline const PSet s24{4, 2}, s15{1, 5}, s16{1, 6}, s17{7, 1}, s36{3, 6}, s38{8, 3}, s47{4, 7}, s48{8, 4};
inline const std::vector<PSet> figure_family{s24, s15, s16, s17, s36, s38, s47, s48};

// Breadth-first: 14 set labels and one lambda leaf.
inline std::vector<RepNode> figure_tree() {
  return {
      labeled(kNoNode, 1, kNoVertex, 0, s16),
      labeled(0, 3, 1, 1, s38),
      labeled(0, 5, 6, 1, s47),
      labeled(1, 7, 8, 2, s24),
      labeled(1, 9, 3, 2, s48),
      labeled(2, 11, 4, 2, s17),
      labeled(2, 13, 7, 2, s15),
      labeled(3, kNoNode, 4, 3, s36),
      labeled(3, kNoNode, 2, 3, s47),
      labeled(4, kNoNode, 8, 3, s24),
      lambda(4, 4, 3),
      labeled(5, kNoNode, 7, 3, s15),
      labeled(5, kNoNode, 1, 3, s38),
      labeled(6, kNoNode, 1, 3, s24),
      labeled(6, kNoNode, 5, 3, s38),
  };
}

using oracle::Path;

inline std::size_t backward_steps(const Path& p) {
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) count += p[i + 1] < p[i];
  return count;
}

// Membership rules of the restricted path modes, on rank ids.
inline bool forward_ok(const Path& p) { return backward_steps(p) <= (p.size() - 1) / 2; }

inline bool all_ok(const Path& p) {
  Path r(p.rbegin(), p.rend());
  return forward_ok(p) || forward_ok(r);
}

inline bool mode_ok(const Path& p, PathMode mode) {
  const std::size_t len = p.size() - 1;
  Path r(p.rbegin(), p.rend());
  switch (mode) {
    case PathMode::forward: return forward_ok(p);
    case PathMode::backward: return forward_ok(r);
    case PathMode::all: return all_ok(p);
    case PathMode::one_backward_prefix:
    case PathMode::two_backward_prefix: {
      const std::size_t prefix = mode == PathMode::one_backward_prefix ? 1 : 2;
      if (len < prefix) return false;
      for (std::size_t i = 0; i < prefix; ++i)
        if (p[i + 1] > p[i]) return false;
      return len == prefix || all_ok(Path(p.begin() + prefix, p.end()));
    }
  }
  return false;
}

inline std::vector<Path> filtered_paths(const oracle::DenseGraph& g, std::size_t len, PathMode mode) {
  std::vector<Path> out;
  for (auto& p : oracle::all_paths(g, len))
    if (mode_ok(p, mode)) out.push_back(p);
  return out;
}

inline constexpr PathMode kAllModes[] = {PathMode::forward, PathMode::backward, PathMode::all,
                                         PathMode::one_backward_prefix, PathMode::two_backward_prefix};

}  // namespace emg::fixtures
