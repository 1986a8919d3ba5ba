#include "emg/cycles.hpp"

#include <cmath>
#include <stdexcept>

namespace emg {

using em::RandomReader;
using em::Run;
using em::RunReader;
using em::RunWriter;
using em::Storage;

namespace {

struct Range {
  std::uint64_t begin;
  std::uint64_t end;
};

void require_length(const ExternalGraph& g, std::size_t c) {
  const std::size_t minimum = g.directed ? 2 : 3;
  if (c < minimum) {
    throw PreconditionError("cycle length must be at least " + std::to_string(minimum) +
                            (g.directed ? " for directed graphs" : " for undirected graphs"));
  }
}

bool is_live(const ExternalGraph& g, VertexId v) {
  bool found = false;
  em::for_each(g.vertices, [&](VertexId x) { found = found || x == v; });
  return found;
}

// Arc range of every id in 0..n-1.
Run<Range> arc_ranges(const ExternalGraph& g) {
  RunWriter<Range> writer(*g.vertices.storage());
  RunReader<Arc> arcs(g.arcs);
  for (std::uint64_t u = 0; u < g.n; ++u) {
    const auto begin = arcs.position();
    while (!arcs.done() && arcs.peek().from == u) arcs.advance();
    writer.push({begin, arcs.position()});
  }
  return writer.finish();
}

Cycle concat(VertexId u, const PSet& a, VertexId v, const PSet& b) {
  Cycle c{u};
  for (auto x : a.view()) c.push_back(x);
  c.push_back(v);
  for (auto x : b.view()) c.push_back(x);
  return c;
}

std::optional<Cycle> search_pairs(const FamilyPairs& families, CycleSearchReport& report) {
  std::optional<Cycle> found;
  em::for_each(families.pairs, [&](const FamilyPair& pair) {
    if (found || pair.f_begin == pair.f_end || pair.g_begin == pair.g_end) return;
    ++report.pairs;
    if (auto hit = find_disjoint(families.f(pair), families.g(pair))) {
      found = concat(pair.u, hit->a, pair.v, hit->b);
    }
  });
  return found;
}

VertexSet high_degree_vertices(const ExternalGraph& g, std::uint64_t threshold) {
  RunWriter<VertexId> writer(*g.vertices.storage());
  em::for_each(compute_degrees(g), [&](const DegreeEntry& d) {
    if (d.degree >= threshold) writer.push(d.vertex);
  });
  return writer.finish();
}

std::uint64_t threshold_of(double delta) { return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(delta))); }

}  // namespace

std::optional<Cycle> cycle_through(const ExternalGraph& g, std::size_t k, VertexId v) {
  require_length(g, k);
  if (v >= g.n || !is_live(g, v)) throw PreconditionError("vertex " + std::to_string(v) + " is not in the graph");
  if (k - 2 > kMaxSetSize) throw RangeError("cycle length too large for representative labels");
  if (k > g.vertex_count()) return std::nullopt;
  Storage& storage = *g.vertices.storage();
  const auto ranges = arc_ranges(g);
  const std::size_t top = k - 2;

  // Layer 0: F_uv^0 is {{}} when (u, v) is an arc and empty otherwise.
  Run<RepNode> nodes;
  Run<std::uint64_t> index;
  {
    RunWriter<RepNode> node_writer(storage);
    RunWriter<std::uint64_t> index_writer(storage);
    RunReader<Arc> arcs(g.arcs);
    for (std::uint64_t u = 0; u < g.n; ++u) {
      bool to_v = false;
      while (!arcs.done() && arcs.peek().from == u) {
        to_v = to_v || arcs.peek().to == v;
        arcs.advance();
      }
      to_v = to_v && u != v;
      index_writer.push(node_writer.size());
      build_tree(storage, 0, top, [&](const PSet&) { return to_v ? std::optional<PSet>(PSet{}) : std::nullopt; },
                 &node_writer);
    }
    nodes = node_writer.finish();
    index = index_writer.finish();
  }

  // Layer p -> p + 1: (top - p - 1)-representatives from (top - p)-representatives.
  for (std::size_t p = 0; p < top; ++p) {
    const std::size_t q_prev = top - p;
    RunWriter<RepNode> node_writer(storage);
    RunWriter<std::uint64_t> index_writer(storage);
    RandomReader<std::uint64_t> prev_index(index);
    RepQuerier querier(nodes);
    RunReader<Range> range_reader(ranges);
    for (std::uint64_t u = 0; u < g.n; ++u) {
      Range range;
      range_reader.next(range);
      index_writer.push(node_writer.size());
      auto oracle = [&](const PSet& excluded) -> std::optional<PSet> {
        if (u == v) return std::nullopt;
        const auto query = excluded.with(static_cast<VertexId>(u));
        RunReader<Arc> neighbors(g.arcs, range.begin, range.end);
        Arc a;
        while (neighbors.next(a)) {
          const auto w = a.to;
          if (w == v || excluded.contains(w)) continue;
          if (auto rest = querier.query(prev_index.at(w), q_prev, query)) {
            PSet label{w};
            for (auto x : rest->view()) label.push(x);
            return label;
          }
        }
        return std::nullopt;
      };
      build_tree(storage, p + 1, q_prev - 1, oracle, &node_writer);
    }
    nodes = node_writer.finish();
    index = index_writer.finish();
  }

  RandomReader<std::uint64_t> final_index(index);
  RepQuerier querier(nodes);
  RandomReader<Range> range_of(ranges);
  const auto range = range_of.at(v);
  RunReader<Arc> out(g.arcs, range.begin, range.end);
  Arc a;
  while (out.next(a)) {
    if (auto rest = querier.query(final_index.at(a.to), 0, PSet{})) {
      Cycle cycle{v, a.to};
      for (auto x : rest->view()) cycle.push_back(x);
      return cycle;
    }
  }
  return std::nullopt;
}

CycleSearchReport find_cycle_general(const ExternalGraph& g, std::size_t c) {
  require_length(g, c);
  if (c > 2 * kMaxPathArcs) throw RangeError("cycle length too large");
  CycleSearchReport report;
  const std::size_t k = (c + 1) / 2;
  report.f_length = k;
  report.g_length = c - k;
  const auto m = g.arc_count();
  if (m == 0 || c > g.vertex_count()) return report;

  report.threshold = std::pow(static_cast<double>(m), 1.0 / static_cast<double>(k));
  const auto threshold = threshold_of(report.threshold);
  const auto high = high_degree_vertices(g, threshold);
  report.high_degree = high.size();
  std::optional<Cycle> found;
  em::for_each(high, [&](VertexId h) {
    if (!found) found = cycle_through(g, c, h);
  });
  if (found) {
    report.witness = found;
    return report;
  }

  const auto low = remove_vertices(g, high);
  report.max_low_degree = max_degree(low);
  if (report.max_low_degree >= threshold) throw std::logic_error("high-degree split left a vertex above the threshold");
  const auto f = generate_paths(low, report.f_length, &report.f_stats);
  if (report.f_length == report.g_length) {
    report.g_stats = report.f_stats;
    report.witness = search_pairs(group_families(f), report);
  } else {
    const auto gp = generate_paths(low, report.g_length, &report.g_stats);
    report.witness = search_pairs(group_families(f, gp), report);
  }
  return report;
}

std::size_t degenerate_prefix(bool directed, std::size_t c) { return !directed && c % 2 == 1 ? 2 : 1; }

CycleSearchReport find_cycle_degenerate(const ExternalGraph& g, const DegeneracyOrdering& ordering, std::size_t c,
                                        DegenerateOptions options) {
  require_length(g, c);
  if (c > 2 * kMaxPathArcs) throw RangeError("cycle length too large");
  if (ordering.order.size() != g.n) throw PreconditionError("ordering does not cover the graph");
  const auto ranked = reorder_graph(g, ordering.order);
  const auto m = g.arc_count();
  const std::size_t k = (c + 2) / 4;
  const double delta = static_cast<double>(std::max<std::uint64_t>(1, ordering.certified_bound));
  if (!options.force_degenerate && delta >= std::pow(static_cast<double>(m), 1.0 / static_cast<double>(2 * k + 1))) {
    auto report = find_cycle_general(g, c);
    report.fallback = true;
    return report;
  }

  CycleSearchReport report;
  report.f_length = c / 2;
  report.g_length = c - c / 2;
  if (m == 0 || c > g.vertex_count()) return report;
  RandomReader<VertexId> name(ordering.order);
  auto unrank = [&](Cycle cycle) {
    for (auto& x : cycle) x = name.at(x);
    return cycle;
  };

  report.threshold = std::pow(static_cast<double>(m), 1.0 / static_cast<double>(k)) /
                     std::pow(delta, 1.0 + 1.0 / static_cast<double>(k));
  const auto threshold = threshold_of(report.threshold);
  const auto high = high_degree_vertices(ranked, threshold);
  report.high_degree = high.size();
  std::optional<Cycle> found;
  em::for_each(high, [&](VertexId h) {
    if (!found) found = cycle_through(ranked, c, h);
  });
  if (found) {
    report.witness = unrank(*found);
    return report;
  }

  const auto low = remove_vertices(ranked, high);
  report.max_low_degree = max_degree(low);
  if (report.max_low_degree >= threshold) throw std::logic_error("high-degree split left a vertex above the threshold");
  const auto prefix = degenerate_prefix(g.directed, c);
  const auto f = generate_paths_degenerate(low, report.f_length, PathMode::all, &report.f_stats);
  const auto gp = generate_paths_degenerate(
      low, report.g_length, prefix == 1 ? PathMode::one_backward_prefix : PathMode::two_backward_prefix,
      &report.g_stats);
  if (auto witness = search_pairs(group_families(f, gp), report)) report.witness = unrank(*witness);
  return report;
}

bool validate_cycle(const ExternalGraph& g, const Cycle& cycle, std::size_t c) {
  if (cycle.size() != c || c < (g.directed ? 2u : 3u)) return false;
  auto sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  std::vector<Arc> needed;
  for (std::size_t i = 0; i < c; ++i) needed.push_back({cycle[i], cycle[(i + 1) % c]});
  const auto wanted = em::external_sort(em::make_run(*g.arcs.storage(), needed));
  RunReader<Arc> arcs(g.arcs);
  bool ok = true;
  em::for_each(wanted, [&](const Arc& a) {
    while (!arcs.done() && arcs.peek() < a) arcs.advance();
    ok = ok && !arcs.done() && arcs.peek() == a;
  });
  return ok;
}

}  // namespace emg
