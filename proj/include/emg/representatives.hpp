#pragma once

// Representative families of p-sets, encoded as labeled p-ary trees.
//
// A node carries either a label, a member of the family disjoint from the
// edge labels E(v) on its root path, or lambda when no such member exists.
// Labeled nodes above depth q have one child per label element. Querying the
// tree with a set B of at most q elements walks down edges in B until it
// reaches a label disjoint from B or a lambda node.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emg/emio.hpp"

namespace emg {

inline constexpr std::size_t kMaxSetSize = 16;

/// Ordered list of at most kMaxSetSize distinct vertices. Unused slots stay zero.
struct PSet {
  std::uint8_t size = 0;
  std::array<VertexId, kMaxSetSize> items{};

  PSet() = default;
  PSet(std::initializer_list<VertexId> list);
  static PSet from(std::span<const VertexId> list);

  std::span<const VertexId> view() const { return {items.data(), size}; }
  bool contains(VertexId v) const;
  void push(VertexId v);
  PSet with(VertexId v) const;
  std::vector<VertexId> to_vector() const { return {items.begin(), items.begin() + size}; }

  friend auto operator<=>(const PSet&, const PSet&) = default;
};

bool disjoint(const PSet& a, const PSet& b);

/// A view of the records [begin, end) of a run of p-sets.
struct PSetFamily {
  std::size_t p = 0;
  em::Run<PSet> sets;
  std::uint64_t begin = 0;
  std::uint64_t end = UINT64_MAX;

  std::uint64_t size() const { return std::min(end, sets.size()) - std::min(begin, sets.size()); }
};

PSetFamily make_family(em::Storage& storage, std::size_t p, const std::vector<PSet>& sets);

inline constexpr std::uint64_t kNoNode = UINT64_MAX;

/// Breadth-first node record. Indices are relative to the tree's base.
struct RepNode {
  std::uint64_t parent = kNoNode;
  std::uint64_t first_child = kNoNode;  // children are consecutive, in label order
  VertexId edge = kNoVertex;            // label of the edge from the parent
  std::uint8_t depth = 0;
  std::uint8_t lambda = 0;
  PSet label;
};

struct RepTree {
  std::size_t p = 0;
  std::size_t q = 0;
  em::Run<RepNode> nodes;
  std::uint64_t base = 0;  // position of the root in `nodes`
  std::uint64_t node_count = 0;
  std::uint64_t labeled = 0;
  std::uint64_t lambdas = 0;
};

/// 1 + p + p^2 + ... + p^q
std::uint64_t labeled_node_bound(std::size_t p, std::size_t q);

/// Returns some p-set of the family disjoint from `excluded`, or nothing.
using LabelOracle = std::function<std::optional<PSet>(const PSet& excluded)>;

/// Builds a q-representative tree node by node in breadth-first order, asking
/// `oracle` for every label. When `shared` is given the nodes are appended
/// to it and the tree's base is the writer's size at entry.
RepTree build_tree(em::Storage& storage, std::size_t p, std::size_t q, const LabelOracle& oracle,
                   em::RunWriter<RepNode>* shared = nullptr);

/// q-representative of F; each label is the first fit in F's stored order,
/// found by one scan of F.
RepTree build_representative(const PSetFamily& f, std::size_t q);

/// Walks trees that live in one node run. Each node fetch is a charged
/// random read unless it hits the cached block.
class RepQuerier {
 public:
  explicit RepQuerier(const em::Run<RepNode>& nodes) : reader_(nodes) {}
  std::optional<PSet> query(std::uint64_t base, std::size_t q, const PSet& b);

 private:
  em::RandomReader<RepNode> reader_;
};

/// A member of the represented family disjoint from b, or nothing iff none
/// exists. Requires |b| <= q.
std::optional<PSet> rep_query(const RepTree& tree, const PSet& b);

std::vector<RepNode> tree_nodes(const RepTree& tree);

struct TreeCheck {
  bool ok = true;
  std::string reason;
};

/// Validates a breadth-first node list against a family: labels are members
/// disjoint from E(v), lambda only where no member avoids E(v), labeled nodes
/// above depth q have exactly p children with edges matching the label, and
/// the labeled-node count respects labeled_node_bound.
TreeCheck check_tree(const std::vector<RepNode>& nodes, std::size_t p, std::size_t q, const std::vector<PSet>& family);

struct DisjointPair {
  PSet a;  // from F
  PSet b;  // from G
};

/// A pair (A, B) in F x G with A and B disjoint, or nothing iff none exists.
/// F holds p-sets and G holds q-sets. Builds a q-representative of F and a
/// p-representative of G, then queries the tree with more labeled nodes with
/// every label of the other.
std::optional<DisjointPair> find_disjoint(const PSetFamily& f, const PSetFamily& g);

}  // namespace emg
