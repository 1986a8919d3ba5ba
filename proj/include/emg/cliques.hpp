#pragma once

// Maximal clique enumeration by Bron-Kerbosch with pivoting over a degeneracy
// ordering. Every recursion context keeps P, X and the subgraph H_{P,X} in
// runs; H_{P,X} holds each edge of G with both endpoints in P u X and at least
// one in P, stored in both directions.

#include <cstdint>
#include <functional>
#include <vector>

#include "emg/degeneracy.hpp"
#include "emg/graph.hpp"

namespace emg {

struct HArc {
  VertexId x;
  VertexId y;
  std::uint8_t x_in_p;
  std::uint8_t y_in_p;

  friend auto operator<=>(const HArc&, const HArc&) = default;
};

struct HSubgraph {
  std::uint64_t owner = 0;  // context id
  em::Run<HArc> arcs;       // sorted by (x, y)
};

struct CliqueContext {
  std::vector<VertexId> r;  // current clique
  em::Run<VertexId> p;      // sorted
  em::Run<VertexId> x;      // sorted
  HSubgraph h;
};

enum class PxTag : std::uint8_t { p = 0, x = 1 };

struct PxRec {
  VertexId owner;
  PxTag tag;
  VertexId vertex;

  friend auto operator<=>(const PxRec&, const PxRec&) = default;
};

struct OwnedHArc {
  VertexId owner;
  HArc arc;

  friend auto operator<=>(const OwnedHArc&, const OwnedHArc&) = default;
};

/// P_v and X_v of every vertex of a ranked graph (ids are ranks), as
/// (owner, tag, vertex) records sorted lexicographically.
em::Run<PxRec> gen_px(const ExternalGraph& ranked);

/// H_{P_v, X_v} of every vertex of a ranked graph, sorted by owner then arc.
em::Run<OwnedHArc> gen_h(const ExternalGraph& ranked);

/// Unmarks v on every arc of h and drops arcs left without a P endpoint.
/// Throws PreconditionError if h shows v outside P.
void update_h(HSubgraph& h, VertexId v);

using CliqueSink = std::function<void(const std::vector<VertexId>&)>;

struct CliqueOptions {
  /// Called with every context before it is expanded.
  std::function<void(const CliqueContext&)> on_context;
};

struct BkStats {
  std::uint64_t calls = 0;
  std::uint64_t cliques = 0;
  std::uint64_t max_depth = 0;  // vertices added to the root clique
};

/// Emits every maximal clique of G that contains ctx.r, avoids ctx.x and
/// draws the rest from ctx.p. Cliques are emitted as ctx.r is ordered.
void bk_pivot(const CliqueContext& ctx, const CliqueSink& sink, BkStats& stats, const CliqueOptions& options = {});

struct CliqueReport {
  std::uint64_t cliques = 0;
  std::uint64_t calls = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t delta_hat = 0;  // largest initial P
  std::uint64_t h_arcs = 0;     // arcs over all initial H graphs
};

/// Emits every maximal clique of an undirected graph once, each sorted, in
/// order of the rank of its earliest vertex and then recursion order.
CliqueReport enumerate_maximal_cliques(const ExternalGraph& g, const DegeneracyOrdering& ordering,
                                       const CliqueSink& sink, const CliqueOptions& options = {});

std::vector<std::vector<VertexId>> maximal_cliques(const ExternalGraph& g, const DegeneracyOrdering& ordering);

}  // namespace emg
