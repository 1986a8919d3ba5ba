#include <algorithm>
#include <bit>
#include <random>

#include "doctest.h"
#include "emg/representatives.hpp"
#include "fixtures.hpp"

using namespace emg;
using namespace emg::em;
using namespace emg::fixtures;

namespace {

EmConfig config() {
  EmConfig cfg;
  cfg.memory = 512;
  cfg.block = 8;
  return cfg;
}

std::optional<PSet> oracle_member(const std::vector<PSet>& family, const PSet& b) {
  for (const auto& a : family)
    if (disjoint(a, b)) return a;
  return std::nullopt;
}

// Every subset of {0..universe-1} of size q.
std::vector<PSet> subsets(VertexId universe, std::size_t q) {
  std::vector<PSet> out;
  for (std::uint32_t mask = 0; mask < (1u << universe); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != q) continue;
    PSet s;
    for (VertexId v = 0; v < universe; ++v)
      if (mask >> v & 1) s.push(v);
    out.push_back(s);
  }
  return out;
}

std::vector<PSet> random_family(std::mt19937_64& rng, VertexId universe, std::size_t p, std::size_t count) {
  std::vector<PSet> family;
  std::vector<VertexId> pool(universe);
  for (VertexId v = 0; v < universe; ++v) pool[v] = v;
  for (std::size_t i = 0; i < count; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    family.push_back(PSet::from(std::span<const VertexId>(pool.data(), p)));
  }
  return family;
}

}  // namespace

TEST_CASE("p-sets") {
  PSet a{1, 2, 3};
  CHECK(a.size == 3);
  CHECK(a.contains(2));
  CHECK(!a.contains(4));
  CHECK(a.with(4).to_vector() == std::vector<VertexId>{1, 2, 3, 4});
  CHECK(disjoint(a, PSet{4, 5}));
  CHECK(!disjoint(a, PSet{3}));
  CHECK(disjoint(PSet{}, PSet{}));
  PSet full;
  for (VertexId v = 0; v < kMaxSetSize; ++v) full.push(v);
  CHECK_THROWS_AS(full.push(99), RangeError);
  Storage storage(config());
  CHECK_THROWS_AS(make_family(storage, 2, {PSet{1}}), PreconditionError);
}

TEST_CASE("labeled node bound") {
  CHECK(labeled_node_bound(2, 3) == 15);
  CHECK(labeled_node_bound(3, 2) == 13);
  CHECK(labeled_node_bound(0, 4) == 1);
  CHECK(labeled_node_bound(5, 0) == 1);
}

TEST_CASE("figure tree") {
  const auto nodes = figure_tree();
  const auto check = check_tree(nodes, 2, 3, figure_family);
  CHECK_MESSAGE(check.ok, check.reason);
  const auto labels = std::count_if(nodes.begin(), nodes.end(), [](const RepNode& n) { return !n.lambda; });
  CHECK(labels == 14);
  CHECK(nodes.size() - labels == 1);

  Storage storage(config());
  RepTree tree;
  tree.p = 2;
  tree.q = 3;
  tree.nodes = make_run(storage, nodes);
  tree.node_count = nodes.size();
  CHECK(!rep_query(tree, PSet{1, 3, 4}));
  CHECK(!oracle_member(figure_family, PSet{1, 3, 4}));
  for (const auto& b : subsets(9, 3)) {
    const auto hit = rep_query(tree, b);
    CHECK(hit.has_value() == oracle_member(figure_family, b).has_value());
    if (hit) CHECK(disjoint(*hit, b));
  }

  // Corruptions the checker must reject.
  auto bad_label = nodes;
  bad_label[7].label = PSet{4, 6};
  CHECK(!check_tree(bad_label, 2, 3, figure_family).ok);
  auto bad_lambda = nodes;
  bad_lambda[14] = lambda(6, 5, 3);
  CHECK(!check_tree(bad_lambda, 2, 3, figure_family).ok);
  auto bad_edge = nodes;
  bad_edge[1].edge = 6;
  CHECK(!check_tree(bad_edge, 2, 3, figure_family).ok);
  auto not_member = nodes;
  not_member[8].label = PSet{5, 9};
  CHECK(!check_tree(not_member, 2, 3, figure_family).ok);
}

TEST_CASE("built representative of the figure family") {
  Storage storage(config());
  const auto family = make_family(storage, 2, figure_family);
  const auto tree = build_representative(family, 3);
  const auto check = check_tree(tree_nodes(tree), 2, 3, figure_family);
  CHECK_MESSAGE(check.ok, check.reason);
  CHECK(tree.labeled <= labeled_node_bound(2, 3));
  CHECK(!rep_query(tree, PSet{1, 3, 4}));
  CHECK_THROWS_AS(rep_query(tree, PSet{1, 2, 3, 4}), PreconditionError);
  for (const auto& b : subsets(9, 3)) {
    CHECK(rep_query(tree, b).has_value() == oracle_member(figure_family, b).has_value());
  }
}

TEST_CASE("degenerate trees") {
  Storage storage(config());
  const auto none = build_representative(make_family(storage, 2, {}), 2);
  CHECK(none.labeled == 0);
  CHECK(none.lambdas == 1);
  CHECK(!rep_query(none, PSet{}));

  const auto empty_set = build_representative(make_family(storage, 0, {PSet{}}), 3);
  CHECK(empty_set.node_count == 1);
  CHECK(rep_query(empty_set, PSet{1, 2, 3}) == PSet{});

  const auto depth_zero = build_representative(make_family(storage, 2, {PSet{1, 2}, PSet{3, 4}}), 0);
  CHECK(depth_zero.node_count == 1);
  CHECK(rep_query(depth_zero, PSet{}) == PSet{1, 2});
}

TEST_CASE("trees share one node run") {
  Storage storage(config());
  RunWriter<RepNode> writer(storage);
  auto first = build_tree(storage, 1, 1, [](const PSet& e) -> std::optional<PSet> {
    return e.contains(1) ? std::optional<PSet>(PSet{2}) : PSet{1};
  }, &writer);
  auto second = build_tree(storage, 0, 2, [](const PSet&) { return std::optional<PSet>(PSet{}); }, &writer);
  auto nodes = writer.finish();
  CHECK(first.base == 0);
  CHECK(second.base == first.node_count);
  RepQuerier querier(nodes);
  CHECK(querier.query(first.base, 1, PSet{1}) == PSet{2});
  CHECK(querier.query(first.base, 1, PSet{3}) == PSet{1});
  CHECK(querier.query(second.base, 2, PSet{7, 8}) == PSet{});
}

TEST_CASE("random families are represented exactly") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 60; ++round) {
    Storage storage(config());
    const VertexId universe = 5 + rng() % 6;
    const std::size_t p = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const auto sets = random_family(rng, universe, p, 1 + rng() % 25);
    const auto tree = build_representative(make_family(storage, p, sets), q);
    const auto check = check_tree(tree_nodes(tree), p, q, sets);
    REQUIRE_MESSAGE(check.ok, check.reason);
    for (const auto& b : subsets(universe, q)) {
      const auto hit = rep_query(tree, b);
      REQUIRE(hit.has_value() == oracle_member(sets, b).has_value());
      if (hit) REQUIRE(disjoint(*hit, b));
    }
  }
}

TEST_CASE("find disjoint") {
  Storage storage(config());
  const auto f = make_family(storage, 2, {PSet{1, 2}, PSet{3, 4}});
  const auto g = make_family(storage, 2, {PSet{1, 3}, PSet{2, 4}, PSet{5, 6}});
  auto hit = find_disjoint(f, g);
  REQUIRE(hit);
  CHECK(disjoint(hit->a, hit->b));

  const auto crossing = make_family(storage, 2, {PSet{1, 3}, PSet{2, 4}, PSet{1, 4}, PSet{2, 3}});
  CHECK(!find_disjoint(f, crossing));
  CHECK(!find_disjoint(crossing, f));
  CHECK(!find_disjoint(f, make_family(storage, 2, {})));

  std::mt19937_64 rng(7);
  for (int round = 0; round < 150; ++round) {
    const VertexId universe = 4 + rng() % 9;
    const std::size_t p = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const auto fs = random_family(rng, universe, p, 1 + rng() % 12);
    const auto gs = random_family(rng, universe, q, 1 + rng() % 12);
    bool expected = false;
    for (const auto& a : fs)
      for (const auto& b : gs) expected = expected || disjoint(a, b);
    const auto ff = make_family(storage, p, fs);
    const auto gf = make_family(storage, q, gs);
    const auto forward = find_disjoint(ff, gf);
    const auto backward = find_disjoint(gf, ff);
    REQUIRE(forward.has_value() == expected);
    REQUIRE(backward.has_value() == expected);
    if (forward) {
      CHECK(disjoint(forward->a, forward->b));
      CHECK(std::find(fs.begin(), fs.end(), forward->a) != fs.end());
      CHECK(std::find(gs.begin(), gs.end(), forward->b) != gs.end());
    }
    if (backward) CHECK(disjoint(backward->a, backward->b));
  }
}
