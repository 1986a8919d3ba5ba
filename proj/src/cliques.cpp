#include "emg/cliques.hpp"

#include <algorithm>
#include <stdexcept>

#include "emg/sort.hpp"

namespace emg {

using em::RandomReader;
using em::Run;
using em::RunReader;
using em::RunWriter;
using em::Storage;

namespace {

// (v, w, ?u?): u is adjacent to v and w; the triangle exists iff (v, w) is an edge.
struct TriangleProbe {
  VertexId v;
  VertexId w;
  VertexId u;
  std::uint8_t u_in_p;
  std::uint8_t w_in_p;

  friend auto operator<=>(const TriangleProbe&, const TriangleProbe&) = default;
};

struct ByPFirst {
  bool operator()(const HArc& a, const HArc& b) const {
    if (a.x != b.x) return a.x < b.x;
    if (a.y_in_p != b.y_in_p) return a.y_in_p > b.y_in_p;
    return a.y < b.y;
  }
};

// Emits probes (v, b, a) for every v in `anchors` and b in `rest` with b != v.
template <class Writer>
void emit_probes(Writer& out, VertexId a, std::uint8_t a_in_p, const std::vector<HArc>& anchors, const HArc& b) {
  for (const auto& v : anchors) {
    if (v.y != b.y) out.push({v.y, b.y, a, a_in_p, b.y_in_p});
  }
}

// Joins probes sorted by (v, w) with an edge run sorted the same way and keeps
// the arcs (u, w) of H_v whose probe found the edge (v, w).
template <class Edges, class Key, class Emit>
void join_probes(const Run<TriangleProbe>& probes, const Run<Edges>& edges, Key key, Emit emit) {
  RunReader<Edges> edge_reader(edges);
  em::for_each(probes, [&](const TriangleProbe& t) {
    const std::pair<VertexId, VertexId> want{t.v, t.w};
    while (!edge_reader.done() && key(edge_reader.peek()) < want) edge_reader.advance();
    if (!edge_reader.done() && key(edge_reader.peek()) == want) emit(t);
  });
}

struct Recursion {
  const CliqueSink& sink;
  BkStats& stats;
  const CliqueOptions& options;

  void run(const CliqueContext& ctx);

  VertexId choose_pivot(const CliqueContext& ctx);
  std::vector<VertexId> children_of(const CliqueContext& ctx, VertexId pivot);
  std::vector<HSubgraph> candidates(const CliqueContext& ctx, const std::vector<VertexId>& children);
  CliqueContext child_context(const CliqueContext& ctx, const HSubgraph& h, VertexId v, HSubgraph candidate);
};

void Recursion::run(const CliqueContext& ctx) {
  ++stats.calls;
  stats.max_depth = std::max<std::uint64_t>(stats.max_depth, ctx.r.empty() ? 0 : ctx.r.size() - 1);
  if (options.on_context) options.on_context(ctx);
  if (ctx.p.empty()) {
    if (ctx.x.empty()) {
      ++stats.cliques;
      sink(ctx.r);
    }
    return;
  }

  const auto pivot = choose_pivot(ctx);
  const auto children = children_of(ctx, pivot);
  auto lease = ctx.p.storage()->lease(children.size());
  auto cands = candidates(ctx, children);
  HSubgraph h = ctx.h;
  for (std::size_t i = 0; i < children.size(); ++i) {
    const auto v = children[i];
    run(child_context(ctx, h, v, cands[i]));
    cands[i] = {};
    update_h(h, v);
    for (std::size_t j = i + 1; j < children.size(); ++j) update_h(cands[j], v);
  }
}

// Highest H degree over P u X, ties to the smaller id.
VertexId Recursion::choose_pivot(const CliqueContext& ctx) {
  RunReader<VertexId> p(ctx.p);
  RunReader<VertexId> x(ctx.x);
  RunReader<HArc> arcs(ctx.h.arcs);
  VertexId best = kNoVertex;
  std::uint64_t best_degree = 0;
  while (!p.done() || !x.done()) {
    VertexId u = kNoVertex;
    if (x.done() || (!p.done() && p.peek() < x.peek())) {
      p.next(u);
    } else {
      x.next(u);
    }
    while (!arcs.done() && arcs.peek().x < u) arcs.advance();
    std::uint64_t degree = 0;
    while (!arcs.done() && arcs.peek().x == u) {
      ++degree;
      arcs.advance();
    }
    if (best == kNoVertex || degree > best_degree) {
      best = u;
      best_degree = degree;
    }
  }
  return best;
}

// P minus the neighbors of the pivot, ascending.
std::vector<VertexId> Recursion::children_of(const CliqueContext& ctx, VertexId pivot) {
  std::vector<VertexId> children;
  RunReader<HArc> arcs(ctx.h.arcs);
  while (!arcs.done() && arcs.peek().x < pivot) arcs.advance();
  em::for_each(ctx.p, [&](VertexId v) {
    while (!arcs.done() && arcs.peek().x == pivot && arcs.peek().y < v) arcs.advance();
    const bool adjacent = !arcs.done() && arcs.peek().x == pivot && arcs.peek().y == v;
    if (!adjacent) children.push_back(v);
  });
  return children;
}

// H graphs for every child as if P and X stayed fixed: the arcs of H between
// two neighbors of the child.
std::vector<HSubgraph> Recursion::candidates(const CliqueContext& ctx, const std::vector<VertexId>& children) {
  const auto& h = ctx.h;
  std::vector<HSubgraph> out(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) out[i].owner = children[i];
  if (h.arcs.empty()) {
    for (auto& c : out) c.arcs = RunWriter<HArc>(*h.arcs.storage()).finish();
    return out;
  }
  Storage& storage = *h.arcs.storage();
  const auto rows = em::external_sort(h.arcs, ByPFirst{});

  Run<TriangleProbe> probes;
  {
    auto lease = storage.lease(children.size() + ctx.p.size());
    RunWriter<TriangleProbe> writer(storage);
    RunReader<HArc> reader(rows);
    std::vector<HArc> anchors;
    std::vector<HArc> p_part;
    HArc arc;
    while (!reader.done()) {
      const auto a = reader.peek().x;
      const std::uint8_t a_in_p = reader.peek().x_in_p;
      anchors.clear();
      p_part.clear();
      while (!reader.done() && reader.peek().x == a && reader.peek().y_in_p) {
        reader.next(arc);
        p_part.push_back(arc);
        if (std::binary_search(children.begin(), children.end(), arc.y)) anchors.push_back(arc);
      }
      for (const auto& b : p_part) emit_probes(writer, a, a_in_p, anchors, b);
      while (!reader.done() && reader.peek().x == a) {
        reader.next(arc);
        emit_probes(writer, a, a_in_p, anchors, arc);
      }
    }
    probes = writer.finish();
  }
  probes = em::external_sort(probes);

  Run<OwnedHArc> found;
  {
    RunWriter<OwnedHArc> writer(storage);
    join_probes(probes, h.arcs, [](const HArc& e) { return std::pair{e.x, e.y}; }, [&](const TriangleProbe& t) {
      writer.push({t.v, {t.u, t.w, t.u_in_p, t.w_in_p}});
    });
    found = writer.finish();
  }
  found = em::external_sort(found);

  RunReader<OwnedHArc> reader(found);
  for (auto& c : out) {
    RunWriter<HArc> writer(storage);
    while (!reader.done() && reader.peek().owner == c.owner) {
      OwnedHArc rec;
      reader.next(rec);
      writer.push(rec.arc);
    }
    c.arcs = writer.finish();
  }
  return out;
}

CliqueContext Recursion::child_context(const CliqueContext& ctx, const HSubgraph& h, VertexId v, HSubgraph candidate) {
  Storage& storage = *h.arcs.storage();
  CliqueContext child;
  child.r = ctx.r;
  child.r.push_back(v);
  child.h = std::move(candidate);
  RunWriter<VertexId> p(storage);
  RunWriter<VertexId> x(storage);
  RunReader<HArc> arcs(h.arcs);
  while (!arcs.done() && arcs.peek().x < v) arcs.advance();
  HArc arc;
  while (!arcs.done() && arcs.peek().x == v) {
    arcs.next(arc);
    (arc.y_in_p ? p : x).push(arc.y);
  }
  child.p = p.finish();
  child.x = x.finish();
  return child;
}

}  // namespace

Run<PxRec> gen_px(const ExternalGraph& ranked) {
  if (ranked.directed) throw PreconditionError("clique enumeration needs an undirected graph");
  Storage& storage = *ranked.arcs.storage();
  RunWriter<PxRec> writer(storage);
  em::for_each(ranked.arcs, [&](const Arc& a) {
    if (a.from < a.to) {
      writer.push({a.from, PxTag::p, a.to});
      writer.push({a.to, PxTag::x, a.from});
    }
  });
  return em::external_sort(writer.finish());
}

Run<OwnedHArc> gen_h(const ExternalGraph& ranked) {
  if (ranked.directed) throw PreconditionError("clique enumeration needs an undirected graph");
  Storage& storage = *ranked.arcs.storage();
  const auto available = storage.available();
  const auto block = storage.config().block;
  if (available < 5 * block) throw MemoryBudgetError("triangle probing needs five free blocks");
  const auto chunk_capacity = available - 4 * block;

  // Probes for every u and later neighbors v < w, one chunk of v's at a time.
  Run<TriangleProbe> probes;
  {
    RunWriter<TriangleProbe> writer(storage);
    RunReader<Arc> arcs(ranked.arcs);
    std::vector<VertexId> chunk;
    while (!arcs.done()) {
      const auto u = arcs.peek().from;
      while (!arcs.done() && arcs.peek().from == u && arcs.peek().to < u) arcs.advance();
      const auto begin = arcs.position();
      while (!arcs.done() && arcs.peek().from == u) arcs.advance();
      const auto end = arcs.position();
      for (auto at = begin; at < end;) {
        const auto take = std::min<std::uint64_t>(chunk_capacity, end - at);
        auto lease = storage.lease(take);
        chunk.clear();
        RunReader<Arc> part(ranked.arcs, at, at + take);
        Arc a;
        while (part.next(a)) chunk.push_back(a.to);
        for (std::size_t i = 0; i < chunk.size(); ++i)
          for (std::size_t j = i + 1; j < chunk.size(); ++j) writer.push({chunk[i], chunk[j], u, 0, 1});
        if (at + take < end) {
          RunReader<Arc> rest(ranked.arcs, at + take, end);
          while (rest.next(a))
            for (auto v : chunk) writer.push({v, a.to, u, 0, 1});
        }
        at += take;
      }
    }
    probes = writer.finish();
  }
  probes = em::external_sort(probes);

  // A probe (v, w, ?u?) backed by the edge (v, w) puts u - w into H_v and
  // v - w into H_u.
  Run<OwnedHArc> h;
  {
    RunWriter<OwnedHArc> writer(storage);
    join_probes(probes, ranked.arcs, [](const Arc& a) { return std::pair{a.from, a.to}; },
                [&](const TriangleProbe& t) {
                  writer.push({t.v, {t.u, t.w, 0, 0}});
                  writer.push({t.v, {t.w, t.u, 0, 0}});
                  writer.push({t.u, {t.v, t.w, 0, 0}});
                  writer.push({t.u, {t.w, t.v, 0, 0}});
                });
    h = writer.finish();
  }
  h = em::external_sort(h);

  // Mark the endpoints in P: in rank space, those after the owner.
  RunWriter<OwnedHArc> marked(storage);
  em::for_each(h, [&](OwnedHArc rec) {
    rec.arc.x_in_p = rec.arc.x > rec.owner;
    rec.arc.y_in_p = rec.arc.y > rec.owner;
    marked.push(rec);
  });
  return marked.finish();
}

void update_h(HSubgraph& h, VertexId v) {
  if (h.arcs.empty()) return;
  Storage& storage = *h.arcs.storage();
  RunWriter<HArc> writer(storage);
  em::for_each(h.arcs, [&](HArc arc) {
    if ((arc.x == v && !arc.x_in_p) || (arc.y == v && !arc.y_in_p)) {
      throw PreconditionError("vertex " + std::to_string(v) + " is not in P");
    }
    if (arc.x == v) arc.x_in_p = 0;
    if (arc.y == v) arc.y_in_p = 0;
    if (arc.x_in_p || arc.y_in_p) writer.push(arc);
  });
  h.arcs = writer.finish();
}

void bk_pivot(const CliqueContext& ctx, const CliqueSink& sink, BkStats& stats, const CliqueOptions& options) {
  Recursion{sink, stats, options}.run(ctx);
}

CliqueReport enumerate_maximal_cliques(const ExternalGraph& g, const DegeneracyOrdering& ordering,
                                       const CliqueSink& sink, const CliqueOptions& options) {
  if (g.directed) throw PreconditionError("clique enumeration needs an undirected graph");
  if (ordering.order.size() != g.n) throw PreconditionError("ordering does not cover the graph");
  Storage& storage = *g.arcs.storage();
  const auto ranked = reorder_graph(g, ordering.order);
  const auto px = gen_px(ranked);
  const auto hs = gen_h(ranked);

  CliqueReport report;
  report.h_arcs = hs.size();
  BkStats stats;
  RandomReader<VertexId> name(ordering.order);
  std::vector<VertexId> clique;
  auto emit = [&](const std::vector<VertexId>& ranks) {
    clique.clear();
    for (auto r : ranks) clique.push_back(name.at(r));
    std::sort(clique.begin(), clique.end());
    sink(clique);
  };

  RunReader<VertexId> roots(ranked.vertices);
  RunReader<PxRec> px_reader(px);
  RunReader<OwnedHArc> h_reader(hs);
  VertexId v;
  while (roots.next(v)) {
    CliqueContext ctx;
    ctx.r = {v};
    {
      RunWriter<VertexId> p(storage);
      RunWriter<VertexId> x(storage);
      while (!px_reader.done() && px_reader.peek().owner == v) {
        PxRec rec;
        px_reader.next(rec);
        (rec.tag == PxTag::p ? p : x).push(rec.vertex);
      }
      ctx.p = p.finish();
      ctx.x = x.finish();
    }
    {
      RunWriter<HArc> h(storage);
      while (!h_reader.done() && h_reader.peek().owner == v) {
        OwnedHArc rec;
        h_reader.next(rec);
        h.push(rec.arc);
      }
      ctx.h = {v, h.finish()};
    }
    report.delta_hat = std::max<std::uint64_t>(report.delta_hat, ctx.p.size());
    bk_pivot(ctx, emit, stats, options);
  }

  report.cliques = stats.cliques;
  report.calls = stats.calls;
  report.max_depth = stats.max_depth;
  if (report.max_depth > report.delta_hat) throw std::logic_error("recursion deeper than the largest initial P");
  return report;
}

std::vector<std::vector<VertexId>> maximal_cliques(const ExternalGraph& g, const DegeneracyOrdering& ordering) {
  std::vector<std::vector<VertexId>> out;
  enumerate_maximal_cliques(g, ordering, [&](const std::vector<VertexId>& c) { out.push_back(c); });
  return out;
}

}  // namespace emg
