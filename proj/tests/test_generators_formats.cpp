#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "emg/formats.hpp"
#include "emg/generators.hpp"
#include "emg/oracles.hpp"

using namespace emg;
using namespace emg::em;

namespace {

EmConfig config() {
  EmConfig cfg;
  cfg.memory = 256;
  cfg.block = 8;
  return cfg;
}

std::set<std::pair<VertexId, VertexId>> edge_set(const gen::EdgeList& list) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (auto [u, v] : list.edges) {
    if (!list.directed && u > v) std::swap(u, v);
    out.emplace(u, v);
  }
  return out;
}

}  // namespace

TEST_CASE("named graphs") {
  CHECK(gen::cycle(5).edges.size() == 5);
  CHECK(gen::complete(4).edges.size() == 6);
  CHECK(gen::petersen().edges.size() == 15);
  CHECK(gen::complete_bipartite(3, 4).edges.size() == 12);
  CHECK(gen::complete_multipartite({2, 2, 3}).edges.size() == 16);
  CHECK(gen::grid(3, 4).edges.size() == 17);
  CHECK(gen::star(6).edges.size() == 6);
  CHECK(gen::path(5).edges.size() == 4);
  CHECK(gen::empty(4).edges.empty());
  CHECK(gen::empty(4).n == 4);

  const auto petersen = oracle::DenseGraph::from(gen::petersen());
  for (VertexId v = 0; v < 10; ++v) CHECK(petersen.out(v).size() == 3);
  const auto directed = gen::cycle(4, true);
  CHECK(directed.directed);
  CHECK(edge_set(directed) == std::set<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

TEST_CASE("random models") {
  const auto a = gen::erdos_renyi(100, 200, 7);
  const auto b = gen::erdos_renyi(100, 200, 7);
  CHECK(a.edges == b.edges);
  CHECK(edge_set(a).size() == 200);
  for (auto [u, v] : a.edges) CHECK(u != v);
  CHECK(gen::erdos_renyi(100, 200, 8).edges != a.edges);

  const auto dense = gen::erdos_renyi(10, 45, 1);
  CHECK(edge_set(dense).size() == 45);
  CHECK_THROWS_AS(gen::erdos_renyi(10, 46, 1), RangeError);
  CHECK(edge_set(gen::erdos_renyi(6, 30, 2, true)).size() == 30);

  const auto tree = gen::random_tree(40, 3);
  CHECK(tree.edges.size() == 39);
  CHECK(oracle::exact_degeneracy(oracle::DenseGraph::from(tree)).d == 1);
  CHECK(oracle::brute_cycles(oracle::DenseGraph::from(gen::random_tree(9, 4)), 3).exists == false);

  const auto ba = gen::preferential(100, 3, 5);
  CHECK(edge_set(ba).size() == ba.edges.size());
  CHECK(ba.edges.size() == 6 + 96 * 3);
  CHECK(oracle::exact_degeneracy(oracle::DenseGraph::from(ba)).d == 3);
}

TEST_CASE("model lookup") {
  CHECK(gen::by_name("cycle", 5, 0, 0, false).edges.size() == 5);
  CHECK(gen::by_name("complete_bipartite", 2, 3, 0, false).edges.size() == 6);
  CHECK(gen::by_name("erdos_renyi", 20, 30, 1, false).edges == gen::erdos_renyi(20, 30, 1).edges);
  CHECK(gen::by_name("cycle", 4, 0, 0, true).directed);
  CHECK_THROWS_AS(gen::by_name("nope", 1, 1, 0, false), ConfigError);
  CHECK_THROWS_AS(gen::by_name("petersen", 0, 0, 0, true), ConfigError);
}

TEST_CASE("edge list round trip") {
  Storage storage(config());
  const auto list = gen::erdos_renyi(30, 60, 3);
  auto g = gen::materialize(storage, list);
  std::ostringstream out;
  io::write_edge_list(out, g);
  CHECK(out.str().rfind("# n=30\n", 0) == 0);
  std::istringstream in(out.str());
  auto back = load_edge_list(in, false, storage);
  CHECK(back.graph.n == 30);
  CHECK(to_vector(back.graph.arcs) == to_vector(g.arcs));

  // Isolated trailing vertices survive through the header.
  auto sparse = gen::materialize(storage, gen::empty(3));
  std::ostringstream empty_out;
  io::write_edge_list(empty_out, sparse);
  std::istringstream empty_in(empty_out.str());
  CHECK(load_edge_list(empty_in, false, storage).graph.n == 3);
}

TEST_CASE("binary graph round trip") {
  Storage storage(config());
  for (bool directed : {false, true}) {
    auto g = gen::materialize(storage, gen::erdos_renyi(25, 50, 9, directed));
    std::stringstream buffer;
    io::write_binary_graph(buffer, g);
    const auto bytes = buffer.str();
    CHECK(bytes.size() % 16 == 0);
    CHECK(bytes.compare(0, 8, std::string(io::kBinaryMagic, 8)) == 0);
    auto back = io::read_binary_graph(buffer, storage);
    CHECK(back.n == g.n);
    CHECK(back.directed == directed);
    CHECK(to_vector(back.arcs) == to_vector(g.arcs));
    CHECK(back.vertex_count() == 25);

    std::istringstream truncated(bytes.substr(0, 40));
    CHECK_THROWS_AS(io::read_binary_graph(truncated, storage), IoError);
  }
  std::istringstream junk("NOTAGRAPH-------------------------");
  CHECK_THROWS_AS(io::read_binary_graph(junk, storage), ParseError);
}

TEST_CASE("ordering files") {
  Storage storage(config());
  const auto order = make_run(storage, std::vector<VertexId>{2, 0, 1});
  std::ostringstream out;
  io::write_ordering(out, order, 0.5, 2);
  CHECK(out.str() == "2\n0\n1\n# epsilon=0.5 certified_bound=2\n");
  std::istringstream in(out.str());
  auto back = io::read_ordering(in, storage);
  CHECK(to_vector(back.order) == std::vector<VertexId>{2, 0, 1});
  CHECK(back.epsilon == 0.5);
  CHECK(back.certified_bound == 2u);

  std::istringstream plain("1\n0\n");
  auto bare = io::read_ordering(plain, storage);
  CHECK(!bare.epsilon);
  CHECK(bare.order.size() == 2);

  std::istringstream bad("1\nx\n");
  try {
    io::read_ordering(bad, storage);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream two("1 2\n");
  CHECK_THROWS_AS(io::read_ordering(two, storage), ParseError);
  std::istringstream footer("0\n# epsilon=abc\n");
  CHECK_THROWS_AS(io::read_ordering(footer, storage), ParseError);
}
