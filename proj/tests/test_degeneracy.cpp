#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "emg/degeneracy.hpp"
#include "emg/generators.hpp"
#include "emg/oracles.hpp"

using namespace emg;
using namespace emg::em;

namespace {

EmConfig config() {
  EmConfig cfg;
  cfg.memory = 512;
  cfg.block = 16;
  return cfg;
}

std::uint64_t bound(const gen::EdgeList& list, double epsilon) {
  Storage storage(config());
  auto g = gen::materialize(storage, list);
  return approx_degeneracy_order(g, epsilon).certified_bound;
}

bool is_permutation_of_n(const std::vector<VertexId>& order, std::uint64_t n) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) return false;
  return sorted.size() == n;
}

}  // namespace

TEST_CASE("batch size") {
  CHECK(batch_size(10, 1.0) == 3);
  CHECK(batch_size(1, 0.25) == 1);
  CHECK(batch_size(3, 1.0) == 1);
  CHECK(batch_size(6, 4.0) == 4);
  CHECK(batch_size(0, 1.0) == 0);
}

TEST_CASE("small vertices") {
  Storage storage(config());
  auto star = gen::materialize(storage, gen::star(9));
  CHECK(to_vector(small_vertices(star, 1.0)) == std::vector<VertexId>{1, 2, 3});

  auto single = gen::materialize(storage, gen::empty(1));
  CHECK(to_vector(small_vertices(single, 3.0)) == std::vector<VertexId>{0});

  auto petersen = gen::materialize(storage, gen::petersen());
  CHECK(to_vector(small_vertices(petersen, 1.0)) == std::vector<VertexId>{0, 1, 2});

  auto none = gen::materialize(storage, gen::empty(0));
  CHECK_THROWS_AS(small_vertices(none, 1.0), PreconditionError);
}

TEST_CASE("named graphs") {
  CHECK(bound(gen::path(10), 1.0) <= 3);
  CHECK(bound(gen::complete(5), 0.5) <= 4);
  CHECK(bound(gen::empty(0), 1.0) == 0);

  Storage storage(config());
  auto empty = gen::materialize(storage, gen::empty(0));
  CHECK(approx_degeneracy_order(empty).order.size() == 0);
  CHECK_THROWS_AS(approx_degeneracy_order(empty, 0.0), PreconditionError);

  auto k5 = gen::materialize(storage, gen::complete(5));
  auto ordering = approx_degeneracy_order(k5, 0.5);
  CHECK(ordering.epsilon == 0.5);
  CHECK(is_permutation_of_n(to_vector(ordering.order), 5));
  CHECK(verify_ordering(k5, ordering.order) == ordering.certified_bound);
}

TEST_CASE("verify ordering") {
  Storage storage(config());
  const auto list = gen::petersen();
  auto g = gen::materialize(storage, list);
  std::vector<VertexId> identity(10);
  for (VertexId i = 0; i < 10; ++i) identity[i] = i;
  const auto dense = oracle::DenseGraph::from(list);
  CHECK(verify_ordering(g, make_run(storage, identity)) == oracle::forward_degree(dense, identity));

  const auto exact = oracle::exact_degeneracy(dense);
  CHECK(verify_ordering(g, make_run(storage, exact.order)) == exact.d);

  auto empty = gen::materialize(storage, gen::empty(0));
  CHECK(verify_ordering(empty, make_run(storage, std::vector<VertexId>{})) == 0);
  CHECK_THROWS_AS(verify_ordering(g, make_run(storage, std::vector<VertexId>{0, 1, 2})), PreconditionError);
  identity[3] = 4;
  CHECK_THROWS_AS(verify_ordering(g, make_run(storage, identity)), PreconditionError);
}

TEST_CASE("guarantee on random and named graphs") {
  std::vector<gen::EdgeList> corpus;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::uint64_t n = 10 + seed * 3;
    corpus.push_back(gen::erdos_renyi(n, std::min<std::uint64_t>(n * (n - 1) / 2, n * (1 + seed % 3)), seed));
  }
  corpus.push_back(gen::random_tree(50, 1));
  corpus.push_back(gen::grid(6, 7));
  corpus.push_back(gen::complete(8));
  corpus.push_back(gen::petersen());
  corpus.push_back(gen::preferential(80, 3, 2));
  for (const auto& list : corpus) {
    const auto dense = oracle::DenseGraph::from(list);
    const auto d = oracle::exact_degeneracy(dense).d;
    for (double epsilon : {0.25, 1.0, 4.0}) {
      Storage storage(config());
      auto g = gen::materialize(storage, list);
      const auto ordering = approx_degeneracy_order(g, epsilon);
      const auto order = to_vector(ordering.order);
      REQUIRE(is_permutation_of_n(order, list.n));
      CHECK(ordering.certified_bound == oracle::forward_degree(dense, order));
      CHECK(static_cast<double>(ordering.certified_bound) <= (2 + epsilon) * static_cast<double>(d) + 1e-9);

      // Batches shrink geometrically and the iteration count stays logarithmic.
      std::uint64_t remaining = list.n;
      for (auto b : ordering.batches) {
        CHECK(b == batch_size(remaining, epsilon));
        remaining -= b;
      }
      CHECK(remaining == 0);
      if (d > 0) {
        const double dn = static_cast<double>(d * list.n);
        CHECK(ordering.batches.size() <= std::ceil(std::log(dn) / std::log((2 + epsilon) / 2)) + 1);
      }
    }

    // At most 2n/c vertices have degree at least c * d.
    if (d > 0) {
      for (double epsilon : {0.25, 1.0, 4.0}) {
        const double c = 2 + epsilon;
        std::uint64_t heavy = 0;
        for (VertexId v = 0; v < list.n; ++v) heavy += dense.out(v).size() >= c * static_cast<double>(d);
        CHECK(static_cast<double>(heavy) <= 2.0 * static_cast<double>(list.n) / c);
      }
    }
  }
}

TEST_CASE("directed input uses the underlying graph") {
  Storage storage(config());
  auto g = gen::materialize(storage, gen::cycle(6, true));
  const auto ordering = approx_degeneracy_order(g);
  CHECK(ordering.certified_bound <= 6);
  CHECK(verify_ordering(g, ordering.order) == ordering.certified_bound);
}

TEST_CASE("memory stays within budget") {
  EmConfig cfg = config();
  cfg.strict_memory = true;
  Storage storage(cfg);
  auto g = gen::materialize(storage, gen::erdos_renyi(500, 1500, 1));
  storage.reset_peak();
  approx_degeneracy_order(g);
  CHECK(storage.peak_resident() <= cfg.memory);
}
