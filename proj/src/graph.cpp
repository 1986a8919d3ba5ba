#include "emg/graph.hpp"

#include <charconv>
#include <string>
#include <string_view>

namespace emg {

using em::Run;
using em::RunReader;
using em::RunWriter;
using em::Storage;

namespace {

struct TaggedArc {
  VertexId from;
  VertexId to;
  std::uint8_t tombstone;
  friend auto operator<=>(const TaggedArc&, const TaggedArc&) = default;
};

struct RenameRecord {
  VertexId key;
  std::uint8_t kind;  // 0: (vertex, rank) tuple, 1: arc (key -> value)
  VertexId value;
  friend auto operator<=>(const RenameRecord&, const RenameRecord&) = default;
};

struct RankEntry {
  VertexId vertex;
  VertexId rank;
  friend auto operator<=>(const RankEntry&, const RankEntry&) = default;
};

bool parse_id(std::string_view token, std::uint64_t& value) {
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) return false;
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Sorted arc run: drop arcs that share (from, to) with a following tombstone.
Run<Arc> drop_tombstoned(const Run<TaggedArc>& sorted, Storage& storage) {
  RunWriter<Arc> writer(storage);
  bool pending = false;
  Arc held{};
  em::for_each(sorted, [&](const TaggedArc& t) {
    if (t.tombstone) {
      if (pending && held.from == t.from && held.to == t.to) pending = false;
      return;
    }
    if (pending) writer.push(held);
    held = {t.from, t.to};
    pending = true;
  });
  if (pending) writer.push(held);
  return writer.finish();
}

}  // namespace

Run<VertexId> iota_run(Storage& storage, std::uint64_t n) {
  RunWriter<VertexId> writer(storage);
  for (std::uint64_t v = 0; v < n; ++v) writer.push(static_cast<VertexId>(v));
  return writer.finish();
}

LoadResult build_graph(Storage& storage, std::uint64_t n, bool directed, const Run<Arc>& raw_arcs) {
  LoadResult result;
  Run<Arc> input = raw_arcs;
  if (!directed) {
    RunWriter<Arc> writer(storage);
    em::for_each(raw_arcs, [&](const Arc& a) {
      writer.push(a);
      writer.push({a.to, a.from});
    });
    input = writer.finish();
  }
  const auto sorted = em::external_sort(input);
  RunWriter<Arc> kept(storage);
  std::uint64_t dropped = 0;
  bool have = false;
  Arc prev{};
  em::for_each(sorted, [&](const Arc& a) {
    if (a.from >= n || a.to >= n) throw RangeError("vertex id exceeds declared vertex count");
    if (a.from == a.to) {
      ++result.self_loops_dropped;
      return;
    }
    if (have && prev == a) {
      ++dropped;
      return;
    }
    kept.push(a);
    prev = a;
    have = true;
  });
  if (!directed) result.self_loops_dropped /= 2;
  result.duplicates_dropped = directed ? dropped : dropped / 2;
  result.graph.n = n;
  result.graph.directed = directed;
  result.graph.arcs = kept.finish();
  result.graph.vertices = iota_run(storage, n);
  return result;
}

ExternalGraph graph_from_edges(Storage& storage, std::uint64_t n, bool directed,
                               const std::vector<std::pair<VertexId, VertexId>>& edges) {
  RunWriter<Arc> writer(storage);
  for (const auto& [u, v] : edges) writer.push({u, v});
  return build_graph(storage, n, directed, writer.finish()).graph;
}

LoadResult load_edge_list(std::istream& in, bool directed, Storage& storage) {
  RunWriter<Arc> writer(storage);
  std::uint64_t declared = 0;
  bool has_declared = false;
  std::uint64_t max_id = 0;
  bool any = false;
  std::uint64_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#') {
      auto body = view.substr(first + 1);
      const auto key = body.find_first_not_of(" \t");
      if (key != std::string_view::npos && body.substr(key).rfind("n=", 0) == 0) {
        auto value = body.substr(key + 2);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.remove_suffix(1);
        if (!parse_id(value, declared)) throw ParseError(line_no, "bad vertex count declaration");
        if (declared > kMaxVertexId + 1) throw RangeError("declared vertex count too large");
        has_declared = true;
      }
      continue;
    }
    const auto tokens = split_tokens(view);
    if (tokens.size() % 2 != 0) throw ParseError(line_no, "expected pairs of vertex ids");
    for (std::size_t i = 0; i < tokens.size(); i += 2) {
      std::uint64_t u = 0;
      std::uint64_t v = 0;
      for (auto [token, out] : {std::pair{tokens[i], &u}, std::pair{tokens[i + 1], &v}}) {
        if (!parse_id(token, *out)) {
          if (!token.empty() && token.find_first_not_of("0123456789") == std::string_view::npos) {
            throw RangeError("line " + std::to_string(line_no) + ": vertex id overflow");
          }
          throw ParseError(line_no, "not a vertex id: '" + std::string(token) + "'");
        }
        if (*out > kMaxVertexId) throw RangeError("line " + std::to_string(line_no) + ": vertex id overflow");
      }
      max_id = std::max({max_id, u, v});
      any = true;
      if (u == v) {
        ++self_loops;
        continue;
      }
      writer.push({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
  }
  std::uint64_t n = any ? max_id + 1 : 0;
  if (has_declared) {
    if (declared < n) throw RangeError("declared vertex count " + std::to_string(declared) + " below largest id");
    n = declared;
  }
  auto result = build_graph(storage, n, directed, writer.finish());
  result.self_loops_dropped += self_loops;
  return result;
}

Run<DegreeEntry> compute_degrees(const ExternalGraph& g) {
  Storage& storage = *g.vertices.storage();
  RunWriter<DegreeEntry> writer(storage);
  RunReader<Arc> arcs(g.arcs);
  em::for_each(g.vertices, [&](VertexId v) {
    std::uint64_t degree = 0;
    while (!arcs.done() && arcs.peek().from < v) arcs.advance();
    while (!arcs.done() && arcs.peek().from == v) {
      ++degree;
      arcs.advance();
    }
    writer.push({degree, v});
  });
  return writer.finish();
}

std::uint64_t max_degree(const ExternalGraph& g) {
  if (g.vertices.empty()) return 0;
  std::uint64_t best = 0;
  em::for_each(compute_degrees(g), [&](const DegreeEntry& d) { best = std::max(best, d.degree); });
  return best;
}

ExternalGraph remove_vertices(const ExternalGraph& g, const VertexSet& s) {
  if (g.vertices.empty()) return g;
  Storage& storage = *g.vertices.storage();

  // Validate S against the live vertices and drop it from the vertex run.
  RunWriter<VertexId> survivors(storage);
  {
    RunReader<VertexId> set(s);
    bool have_prev = false;
    VertexId prev = 0;
    em::for_each(g.vertices, [&](VertexId v) {
      if (!set.done() && set.peek() < v) throw PreconditionError("vertex set contains a non-vertex or is unsorted");
      if (!set.done() && set.peek() == v) {
        const auto x = set.peek();
        if (have_prev && x <= prev) throw PreconditionError("vertex set must be strictly increasing");
        prev = x;
        have_prev = true;
        set.advance();
        if (!set.done() && set.peek() <= x) throw PreconditionError("vertex set must be strictly increasing");
        return;
      }
      survivors.push(v);
    });
    if (!set.done()) throw PreconditionError("vertex set contains a non-vertex or is unsorted");
  }

  Run<Arc> by_destination;
  if (g.directed) by_destination = em::external_sort(g.arcs, ByDestination{});

  RunWriter<TaggedArc> tagged(storage);
  em::for_each(g.arcs, [&](const Arc& a) { tagged.push({a.from, a.to, 0}); });
  {
    // Arcs leaving S, found by a scan synchronized on origin.
    RunReader<VertexId> set(s);
    em::for_each(g.arcs, [&](const Arc& a) {
      while (!set.done() && set.peek() < a.from) set.advance();
      if (!set.done() && set.peek() == a.from) {
        tagged.push({a.from, a.to, 1});
        if (!g.directed) tagged.push({a.to, a.from, 1});
      }
    });
  }
  if (g.directed) {
    // Arcs entering S need a pass ordered by destination.
    RunReader<VertexId> set(s);
    em::for_each(by_destination, [&](const Arc& a) {
      while (!set.done() && set.peek() < a.to) set.advance();
      if (!set.done() && set.peek() == a.to) tagged.push({a.from, a.to, 1});
    });
  }

  ExternalGraph out;
  out.n = g.n;
  out.directed = g.directed;
  out.arcs = drop_tombstoned(em::external_sort(tagged.finish()), storage);
  out.vertices = survivors.finish();
  return out;
}

void require_permutation(const Run<VertexId>& order, std::uint64_t n) {
  if (order.size() != n) throw PreconditionError("ordering is not a permutation of the vertex ids");
  if (n == 0) return;
  std::uint64_t expect = 0;
  em::for_each(em::external_sort(order), [&](VertexId v) {
    if (v != expect) throw PreconditionError("ordering is not a permutation of the vertex ids");
    ++expect;
  });
}

ExternalGraph reorder_graph(const ExternalGraph& g, const Run<VertexId>& order) {
  require_permutation(order, g.n);
  ExternalGraph out;
  out.n = g.n;
  out.directed = g.directed;
  if (g.n == 0) {
    out.vertices = g.vertices;
    out.arcs = g.arcs;
    return out;
  }
  Storage& storage = *order.storage();

  auto add_rank_tuples = [&](RunWriter<RenameRecord>& w) {
    VertexId rank = 0;
    em::for_each(order, [&](VertexId v) { w.push({v, 0, rank++}); });
  };

  // Pass one renames origins and reverses arcs, pass two does it again.
  RunWriter<RenameRecord> first(storage);
  add_rank_tuples(first);
  em::for_each(g.arcs, [&](const Arc& a) { first.push({a.from, 1, a.to}); });
  const auto pass_one = em::external_sort(first.finish());
  RunWriter<RenameRecord> second(storage);
  add_rank_tuples(second);
  {
    VertexId rank = 0;
    em::for_each(pass_one, [&](const RenameRecord& r) {
      if (r.kind == 0) {
        rank = r.value;
      } else {
        second.push({r.value, 1, rank});
      }
    });
  }
  const auto pass_two = em::external_sort(second.finish());
  RunWriter<Arc> renamed(storage);
  {
    VertexId rank = 0;
    em::for_each(pass_two, [&](const RenameRecord& r) {
      if (r.kind == 0) {
        rank = r.value;
      } else {
        renamed.push({r.value, rank});
      }
    });
  }
  out.arcs = em::external_sort(renamed.finish());

  if (g.vertices.size() == g.n) {
    out.vertices = iota_run(storage, g.n);
  } else {
    RunWriter<RankEntry> ranks(storage);
    VertexId rank = 0;
    em::for_each(order, [&](VertexId v) { ranks.push({v, rank++}); });
    const auto by_vertex = em::external_sort(ranks.finish());
    RunWriter<VertexId> live(storage);
    RunReader<VertexId> vertices(g.vertices);
    em::for_each(by_vertex, [&](const RankEntry& e) {
      while (!vertices.done() && vertices.peek() < e.vertex) vertices.advance();
      if (!vertices.done() && vertices.peek() == e.vertex) live.push(e.rank);
    });
    out.vertices = em::external_sort(live.finish());
  }
  return out;
}

ExternalGraph underlying_undirected(const ExternalGraph& g) {
  if (!g.directed) return g;
  Storage& storage = *g.vertices.storage();
  RunWriter<Arc> both(storage);
  em::for_each(g.arcs, [&](const Arc& a) {
    both.push(a);
    both.push({a.to, a.from});
  });
  ExternalGraph out = g;
  out.directed = false;
  out.arcs = em::sort_unique(both.finish(), storage);
  return out;
}

ExternalGraph transpose(const ExternalGraph& g) {
  if (g.arcs.empty()) return g;
  Storage& storage = *g.arcs.storage();
  RunWriter<Arc> reversed(storage);
  em::for_each(g.arcs, [&](const Arc& a) { reversed.push({a.to, a.from}); });
  ExternalGraph out = g;
  out.arcs = em::external_sort(reversed.finish());
  return out;
}

}  // namespace emg
