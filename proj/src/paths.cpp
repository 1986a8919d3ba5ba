#include "emg/paths.hpp"

#include <bit>
#include <cmath>

namespace emg {

using em::Run;
using em::RunReader;
using em::RunWriter;
using em::Storage;

bool PathRec::contains(VertexId x) const {
  return std::find(v.begin(), v.begin() + size, x) != v.begin() + size;
}

PSet PathRec::inner() const {
  PSet s;
  for (std::size_t i = 1; i + 1 < size; ++i) s.push(v[i]);
  return s;
}

PathRec make_path(const std::vector<VertexId>& vertices) {
  if (vertices.size() > kMaxPathArcs + 1) throw RangeError("path exceeds " + std::to_string(kMaxPathArcs) + " arcs");
  PathRec p;
  p.size = static_cast<std::uint8_t>(vertices.size());
  std::copy(vertices.begin(), vertices.end(), p.v.begin());
  return p;
}

const char* to_string(PathMode mode) {
  switch (mode) {
    case PathMode::forward: return "forward";
    case PathMode::backward: return "backward";
    case PathMode::all: return "all";
    case PathMode::one_backward_prefix: return "one_backward_prefix";
    case PathMode::two_backward_prefix: return "two_backward_prefix";
  }
  return "?";
}

namespace {

enum StepKind : std::uint8_t { kAny = 0, kLater = 1, kLaterIn = 2 };

struct AdjRec {
  VertexId vertex;
  std::uint8_t kind;
  std::uint32_t rank;
  VertexId neighbor;
};

struct AdjKeyLess {
  bool operator()(const AdjRec& a, const AdjRec& b) const {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.rank < b.rank;
  }
};

struct Adjacency {
  Run<AdjRec> run;
  std::array<std::uint64_t, 3> alphabet{};  // max list length per step kind
};

Adjacency build_adjacency(const ExternalGraph& g, bool later_in) {
  Storage& storage = *g.vertices.storage();
  Adjacency adj;
  Run<Arc> by_destination;
  if (later_in) by_destination = em::external_sort(g.arcs, ByDestination{});
  RunWriter<AdjRec> writer(storage);
  {
    VertexId owner = kNoVertex;
    std::uint32_t any = 0;
    std::uint32_t later = 0;
    em::for_each(g.arcs, [&](const Arc& a) {
      if (a.from != owner) {
        owner = a.from;
        any = later = 0;
      }
      writer.push({a.from, kAny, any++, a.to});
      adj.alphabet[kAny] = std::max<std::uint64_t>(adj.alphabet[kAny], any);
      if (a.to > a.from) {
        writer.push({a.from, kLater, later++, a.to});
        adj.alphabet[kLater] = std::max<std::uint64_t>(adj.alphabet[kLater], later);
      }
    });
  }
  if (later_in) {
    VertexId owner = kNoVertex;
    std::uint32_t rank = 0;
    em::for_each(by_destination, [&](const Arc& a) {
      if (a.to != owner) {
        owner = a.to;
        rank = 0;
      }
      if (a.from > a.to) {
        writer.push({a.to, kLaterIn, rank++, a.from});
        adj.alphabet[kLaterIn] = std::max<std::uint64_t>(adj.alphabet[kLaterIn], rank);
      }
    });
  }
  adj.run = em::external_sort(writer.finish(), AdjKeyLess{});
  return adj;
}

struct Walk {
  PathRec path;
  std::uint8_t steps = 0;
  std::uint8_t done = 0;
  std::array<std::uint8_t, kMaxPathArcs> kind{};
  std::array<std::uint32_t, kMaxPathArcs> index{};

  VertexId anchor() const { return kind[done] == kLaterIn ? path.front() : path.back(); }
};

struct WalkKeyLess {
  bool operator()(const Walk& a, const Walk& b) const {
    const auto x = a.anchor();
    const auto y = b.anchor();
    if (x != y) return x < y;
    if (a.kind[a.done] != b.kind[b.done]) return a.kind[a.done] < b.kind[b.done];
    return a.index[a.done] < b.index[b.done];
  }
};

// Writes every seed combined with every step sequence over `patterns`.
Run<Walk> write_sequences(Storage& storage, const Run<PathRec>& seeds,
                          const std::vector<std::vector<std::uint8_t>>& patterns, const Adjacency& adj,
                          std::uint64_t& count) {
  RunWriter<Walk> writer(storage);
  em::for_each(seeds, [&](const PathRec& seed) {
    for (const auto& pattern : patterns) {
      Walk walk;
      walk.path = seed;
      walk.steps = static_cast<std::uint8_t>(pattern.size());
      std::uint64_t combos = 1;
      for (std::size_t i = 0; i < pattern.size(); ++i) {
        walk.kind[i] = pattern[i];
        combos *= adj.alphabet[pattern[i]];
      }
      for (std::uint64_t c = 0; c < combos; ++c) {
        auto rest = c;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
          const auto base = adj.alphabet[pattern[i]];
          walk.index[i] = static_cast<std::uint32_t>(rest % base);
          rest /= base;
        }
        writer.push(walk);
        ++count;
      }
    }
  });
  return writer.finish();
}

// One sort and one join with the adjacency lists per step.
Run<PathRec> decode(Storage& storage, Run<Walk> walks, const Adjacency& adj, std::size_t steps) {
  for (std::size_t round = 0; round < steps; ++round) {
    const auto sorted = em::external_sort(walks, WalkKeyLess{});
    RunWriter<Walk> next(storage);
    RunReader<AdjRec> lists(adj.run);
    em::for_each(sorted, [&](const Walk& w) {
      const AdjRec key{w.anchor(), w.kind[w.done], w.index[w.done], 0};
      while (!lists.done() && AdjKeyLess{}(lists.peek(), key)) lists.advance();
      if (lists.done() || AdjKeyLess{}(key, lists.peek())) return;
      const auto y = lists.peek().neighbor;
      if (w.path.contains(y)) return;
      Walk out = w;
      if (w.kind[w.done] == kLaterIn) {
        std::copy_backward(out.path.v.begin(), out.path.v.begin() + out.path.size,
                           out.path.v.begin() + out.path.size + 1);
        out.path.v[0] = y;
      } else {
        out.path.v[out.path.size] = y;
      }
      ++out.path.size;
      ++out.done;
      next.push(out);
    });
    walks = next.finish();
  }
  RunWriter<PathRec> paths(storage);
  em::for_each(walks, [&](const Walk& w) { paths.push(w.path); });
  return paths.finish();
}

Run<PathRec> arc_seeds(const ExternalGraph& g, bool backward_only) {
  RunWriter<PathRec> writer(*g.vertices.storage());
  em::for_each(g.arcs, [&](const Arc& a) {
    if (!backward_only || a.from > a.to) writer.push(make_path({a.from, a.to}));
  });
  return writer.finish();
}

Run<PathRec> vertex_seeds(const ExternalGraph& g) {
  RunWriter<PathRec> writer(*g.vertices.storage());
  em::for_each(g.vertices, [&](VertexId v) { writer.push(make_path({v})); });
  return writer.finish();
}

// Kind sequences of the given length over {any, later} with at most `limit` any-steps.
std::vector<std::vector<std::uint8_t>> limited_patterns(std::size_t length, std::size_t limit) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > limit) continue;
    std::vector<std::uint8_t> pattern(length);
    for (std::size_t i = 0; i < length; ++i) pattern[i] = (mask >> i) & 1 ? kAny : kLater;
    out.push_back(std::move(pattern));
  }
  return out;
}

void check_length(std::size_t len) {
  if (len > kMaxPathArcs) throw RangeError("path length exceeds " + std::to_string(kMaxPathArcs) + " arcs");
}

Run<PathRec> forward_paths(const ExternalGraph& g, std::size_t len, PathGenStats& stats) {
  Storage& storage = *g.vertices.storage();
  if (len == 0) return vertex_seeds(g);
  const auto adj = build_adjacency(g, false);
  stats.max_degree = std::max(stats.max_degree, adj.alphabet[kAny]);
  stats.max_later_degree = std::max(stats.max_later_degree, adj.alphabet[kLater]);
  const auto patterns = limited_patterns(len - 1, len / 2);
  auto walks = write_sequences(storage, arc_seeds(g, false), patterns, adj, stats.sequences);
  return em::sort_unique(decode(storage, walks, adj, len - 1), storage);
}

Run<PathRec> all_paths_degenerate(const ExternalGraph& g, std::size_t len, PathGenStats& stats) {
  Storage& storage = *g.vertices.storage();
  const auto fwd = forward_paths(g, len, stats);
  if (len == 0) return fwd;
  const auto bwd = reverse_paths(forward_paths(transpose(g), len, stats));
  RunWriter<PathRec> both(storage);
  em::for_each(fwd, [&](const PathRec& p) { both.push(p); });
  em::for_each(bwd, [&](const PathRec& p) { both.push(p); });
  return em::sort_unique(both.finish(), storage);
}

Run<PathRec> prefixed_paths(const ExternalGraph& g, std::size_t len, std::size_t r, PathGenStats& stats) {
  Storage& storage = *g.vertices.storage();
  if (len < r) return RunWriter<PathRec>(storage).finish();
  const auto adj = build_adjacency(g, true);
  stats.max_degree = std::max(stats.max_degree, adj.alphabet[kAny]);
  stats.max_later_degree = std::max(stats.max_later_degree, adj.alphabet[kLaterIn]);
  // The first backward arc of a path made only of backward arcs comes from E directly.
  const auto prefix_steps = len == r ? r - 1 : r;
  const auto tails = len == r ? arc_seeds(g, true) : all_paths_degenerate(g, len - r, stats);
  const std::vector<std::vector<std::uint8_t>> patterns{std::vector<std::uint8_t>(prefix_steps, kLaterIn)};
  auto walks = write_sequences(storage, tails, patterns, adj, stats.sequences);
  return em::sort_unique(decode(storage, walks, adj, prefix_steps), storage);
}

}  // namespace

Run<PathRec> generate_paths(const ExternalGraph& g, std::size_t len, PathGenStats* stats) {
  check_length(len);
  PathGenStats local;
  auto& st = stats ? *stats : local;
  st = {};
  Storage& storage = *g.vertices.storage();
  Run<PathRec> out;
  if (len == 0) {
    out = vertex_seeds(g);
  } else {
    const auto adj = build_adjacency(g, false);
    st.max_degree = adj.alphabet[kAny];
    const std::vector<std::vector<std::uint8_t>> patterns{std::vector<std::uint8_t>(len - 1, kAny)};
    auto walks = write_sequences(storage, arc_seeds(g, false), patterns, adj, st.sequences);
    out = em::external_sort(decode(storage, walks, adj, len - 1));
  }
  st.paths = out.size();
  return out;
}

Run<PathRec> generate_paths_degenerate(const ExternalGraph& ranked, std::size_t len, PathMode mode,
                                       PathGenStats* stats) {
  check_length(len);
  PathGenStats local;
  auto& st = stats ? *stats : local;
  st = {};
  Run<PathRec> out;
  switch (mode) {
    case PathMode::forward:
      out = forward_paths(ranked, len, st);
      break;
    case PathMode::backward:
      out = len == 0 ? forward_paths(ranked, 0, st)
                     : em::external_sort(reverse_paths(forward_paths(transpose(ranked), len, st)));
      break;
    case PathMode::all:
      out = all_paths_degenerate(ranked, len, st);
      break;
    case PathMode::one_backward_prefix:
      out = prefixed_paths(ranked, len, 1, st);
      break;
    case PathMode::two_backward_prefix:
      out = prefixed_paths(ranked, len, 2, st);
      break;
  }
  st.paths = out.size();
  return out;
}

double general_sequence_bound(std::uint64_t m, std::uint64_t delta, std::size_t len) {
  if (len == 0) return static_cast<double>(m);
  return static_cast<double>(m) * std::pow(static_cast<double>(delta), static_cast<double>(len - 1));
}

double degenerate_sequence_bound(std::uint64_t m, std::uint64_t delta, std::uint64_t later_delta, std::size_t len,
                                 PathMode mode) {
  const double k = static_cast<double>(len / 2);
  const double c = mode == PathMode::forward || mode == PathMode::backward ? 1.0 : 2.0;
  const auto later = std::max<std::uint64_t>(1, later_delta);
  const double big = static_cast<double>(std::max(delta, later));
  return c * std::pow(2.0, 2 * k) * static_cast<double>(m) * std::pow(big, k) * std::pow(static_cast<double>(later), k);
}

Run<PathRec> reverse_paths(const Run<PathRec>& paths) {
  if (paths.empty()) return paths;
  RunWriter<PathRec> writer(*paths.storage());
  em::for_each(paths, [&](PathRec p) {
    std::reverse(p.v.begin(), p.v.begin() + p.size);
    writer.push(p);
  });
  return writer.finish();
}

namespace {

struct Slot {
  VertexId vertex;
  std::uint64_t path;
  std::uint8_t position;
};

struct Placed {
  std::uint64_t path;
  std::uint8_t position;
  VertexId vertex;
};

}  // namespace

Run<PathRec> unrank_paths(const Run<PathRec>& paths, const Run<VertexId>& order) {
  if (paths.empty()) return paths;
  Storage& storage = *paths.storage();
  // Explode paths into (rank, path, position), join with the order, reassemble.
  RunWriter<Slot> slots(storage);
  std::uint64_t id = 0;
  em::for_each(paths, [&](const PathRec& p) {
    for (std::uint8_t i = 0; i < p.size; ++i) slots.push({p.v[i], id, i});
    ++id;
  });
  const auto by_rank = em::external_sort(slots.finish(), [](const Slot& a, const Slot& b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex : a.path != b.path ? a.path < b.path : a.position < b.position;
  });
  RunWriter<Placed> placed(storage);
  {
    RunReader<VertexId> names(order);
    VertexId rank = 0;
    em::for_each(by_rank, [&](const Slot& s) {
      while (rank < s.vertex) {
        names.advance();
        ++rank;
      }
      placed.push({s.path, s.position, names.peek()});
    });
  }
  const auto by_path = em::external_sort(placed.finish(), [](const Placed& a, const Placed& b) {
    return a.path != b.path ? a.path < b.path : a.position < b.position;
  });
  RunWriter<PathRec> out(storage);
  PathRec current;
  std::uint64_t current_id = UINT64_MAX;
  em::for_each(by_path, [&](const Placed& p) {
    if (p.path != current_id) {
      if (current_id != UINT64_MAX) out.push(current);
      current = {};
      current_id = p.path;
    }
    current.v[current.size++] = p.vertex;
  });
  if (current_id != UINT64_MAX) out.push(current);
  return em::external_sort(out.finish());
}

namespace {

struct GroupRec {
  VertexId u;
  VertexId v;
  std::uint8_t side;  // 1: F_uv, 2: G_vu
  PSet inner;
  friend auto operator<=>(const GroupRec&, const GroupRec&) = default;
};

FamilyPairs collect_pairs(Storage& storage, const Run<GroupRec>& tagged, std::size_t p, std::size_t q) {
  const auto sorted = em::external_sort(tagged);
  FamilyPairs out;
  out.p = p;
  out.q = q;
  RunWriter<PSet> sets(storage);
  RunWriter<FamilyPair> pairs(storage);
  bool open = false;
  FamilyPair current{};
  std::uint64_t position = 0;
  em::for_each(sorted, [&](const GroupRec& r) {
    if (!open || r.u != current.u || r.v != current.v) {
      if (open) pairs.push(current);
      current = {r.u, r.v, position, position, position, position};
      open = true;
    }
    sets.push(r.inner);
    ++position;
    if (r.side == 1) {
      current.f_end = position;
      current.g_begin = current.g_end = position;
    } else {
      current.g_end = position;
    }
  });
  if (open) pairs.push(current);
  out.sets = sets.finish();
  out.pairs = pairs.finish();
  return out;
}

std::size_t inner_size(const Run<PathRec>& paths) {
  if (paths.empty()) return 0;
  em::RunReader<PathRec> reader(paths);
  return reader.peek().size - 2u;
}

}  // namespace

FamilyPairs group_families(const Run<PathRec>& paths) {
  Storage& storage = *paths.storage();
  const auto p = inner_size(paths);
  RunWriter<GroupRec> tagged(storage);
  em::for_each(paths, [&](const PathRec& r) {
    const auto u = r.front();
    const auto v = r.back();
    if (u < v) {
      tagged.push({u, v, 1, r.inner()});
    } else {
      tagged.push({v, u, 2, r.inner()});
    }
  });
  return collect_pairs(storage, tagged.finish(), p, p);
}

FamilyPairs group_families(const Run<PathRec>& f_paths, const Run<PathRec>& g_paths) {
  Storage& storage = *f_paths.storage();
  RunWriter<GroupRec> tagged(storage);
  em::for_each(f_paths, [&](const PathRec& r) { tagged.push({r.front(), r.back(), 1, r.inner()}); });
  em::for_each(g_paths, [&](const PathRec& r) { tagged.push({r.back(), r.front(), 2, r.inner()}); });
  return collect_pairs(storage, tagged.finish(), inner_size(f_paths), inner_size(g_paths));
}

}  // namespace emg
