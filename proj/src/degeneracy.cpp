#include "emg/degeneracy.hpp"

#include <cmath>

namespace emg {

std::uint64_t batch_size(std::uint64_t n, double epsilon) {
  if (n == 0) return 0;
  const double exact = static_cast<double>(n) * epsilon / (2.0 + epsilon);
  auto s = static_cast<std::uint64_t>(std::floor(exact * (1.0 + 1e-12)));
  return std::min(n, std::max<std::uint64_t>(1, s));
}

VertexSet small_vertices(const ExternalGraph& g, double epsilon) {
  if (g.vertex_count() == 0) throw PreconditionError("small_vertices needs a nonempty graph");
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  em::Storage& storage = *g.vertices.storage();
  const auto s = batch_size(g.vertex_count(), epsilon);
  const auto by_degree = em::external_sort(compute_degrees(g));
  em::Run<VertexId> picked;
  {
    em::RunWriter<VertexId> chosen(storage);
    em::RunReader<DegreeEntry> reader(by_degree, 0, s);
    DegreeEntry entry;
    while (reader.next(entry)) chosen.push(entry.vertex);
    picked = chosen.finish();
  }
  return em::external_sort(picked);
}

DegeneracyOrdering approx_degeneracy_order(const ExternalGraph& g, double epsilon) {
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  DegeneracyOrdering result;
  result.epsilon = epsilon;
  const ExternalGraph base = underlying_undirected(g);
  em::Storage& storage = *g.vertices.storage();

  std::vector<VertexSet> batches;
  ExternalGraph work = base;
  while (work.vertex_count() > 0) {
    auto s = small_vertices(work, epsilon);
    result.batches.push_back(s.size());
    work = remove_vertices(work, s);
    batches.push_back(std::move(s));
  }

  em::RunWriter<VertexId> order(storage);
  for (const auto& batch : batches) em::for_each(batch, [&](VertexId v) { order.push(v); });
  result.order = order.finish();
  if (base.vertex_count() == base.n) result.certified_bound = verify_ordering(base, result.order);
  return result;
}

std::uint64_t verify_ordering(const ExternalGraph& g, const em::Run<VertexId>& order) {
  require_permutation(order, g.n);
  const auto ranked = reorder_graph(underlying_undirected(g), order);
  std::uint64_t best = 0;
  std::uint64_t current = 0;
  VertexId owner = kNoVertex;
  em::for_each(ranked.arcs, [&](const Arc& a) {
    if (a.from != owner) {
      owner = a.from;
      current = 0;
    }
    if (a.to > a.from) best = std::max(best, ++current);
  });
  return best;
}

}  // namespace emg
