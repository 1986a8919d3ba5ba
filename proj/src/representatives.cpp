#include "emg/representatives.hpp"

#include <algorithm>
#include <stdexcept>

namespace emg {

PSet::PSet(std::initializer_list<VertexId> list) {
  for (auto v : list) push(v);
}

PSet PSet::from(std::span<const VertexId> list) {
  PSet s;
  for (auto v : list) s.push(v);
  return s;
}

bool PSet::contains(VertexId v) const {
  return std::find(items.begin(), items.begin() + size, v) != items.begin() + size;
}

void PSet::push(VertexId v) {
  if (size >= kMaxSetSize) throw RangeError("set exceeds " + std::to_string(kMaxSetSize) + " elements");
  items[size++] = v;
}

PSet PSet::with(VertexId v) const {
  PSet s = *this;
  s.push(v);
  return s;
}

bool disjoint(const PSet& a, const PSet& b) {
  for (auto x : a.view())
    if (b.contains(x)) return false;
  return true;
}

PSetFamily make_family(em::Storage& storage, std::size_t p, const std::vector<PSet>& sets) {
  for (const auto& s : sets)
    if (s.size != p) throw PreconditionError("family member has the wrong size");
  return {p, em::make_run(storage, sets), 0, sets.size()};
}

std::uint64_t labeled_node_bound(std::size_t p, std::size_t q) {
  std::uint64_t total = 1;
  std::uint64_t power = 1;
  for (std::size_t i = 1; i <= q; ++i) {
    power *= p;
    total += power;
  }
  return total;
}

namespace {

struct BuildNode {
  std::uint64_t parent;
  PSet excluded;  // E(v)
  VertexId edge;
  std::uint8_t depth;
  std::uint8_t lambda;
  PSet label;
};

BuildNode make_node(std::uint64_t parent, const PSet& excluded, VertexId edge, std::uint8_t depth,
                    const LabelOracle& oracle) {
  BuildNode node{parent, excluded, edge, depth, 1, {}};
  if (auto label = oracle(excluded)) {
    node.lambda = 0;
    node.label = *label;
  }
  return node;
}

}  // namespace

RepTree build_tree(em::Storage& storage, std::size_t p, std::size_t q, const LabelOracle& oracle,
                   em::RunWriter<RepNode>* shared) {
  if (p > kMaxSetSize || q > kMaxSetSize) throw RangeError("set size or depth exceeds " + std::to_string(kMaxSetSize));
  std::vector<em::Run<BuildNode>> levels;
  {
    em::RunWriter<BuildNode> root(storage);
    root.push(make_node(kNoNode, {}, kNoVertex, 0, oracle));
    levels.push_back(root.finish());
  }
  std::uint64_t level_offset = 0;
  for (std::size_t depth = 0; depth < q && p > 0; ++depth) {
    const auto& level = levels.back();
    std::uint64_t index = level_offset;
    em::RunWriter<BuildNode> next(storage);
    em::for_each(level, [&](const BuildNode& node) {
      if (!node.lambda) {
        for (auto e : node.label.view()) {
          next.push(make_node(index, node.excluded.with(e), e, static_cast<std::uint8_t>(depth + 1), oracle));
        }
      }
      ++index;
    });
    level_offset = index;
    auto run = next.finish();
    if (run.empty()) break;
    levels.push_back(std::move(run));
  }

  std::optional<em::RunWriter<RepNode>> own;
  if (!shared) own.emplace(storage);
  auto& out = shared ? *shared : *own;

  RepTree tree;
  tree.p = p;
  tree.q = q;
  tree.base = out.size();
  std::uint64_t next_child = 1;
  for (const auto& level : levels) {
    em::for_each(level, [&](const BuildNode& node) {
      RepNode rec;
      rec.parent = node.parent;
      rec.edge = node.edge;
      rec.depth = node.depth;
      rec.lambda = node.lambda;
      rec.label = node.label;
      if (!node.lambda && node.depth < q && p > 0) {
        rec.first_child = next_child;
        next_child += p;
      }
      if (node.lambda) {
        ++tree.lambdas;
      } else {
        ++tree.labeled;
      }
      out.push(rec);
    });
  }
  tree.node_count = tree.labeled + tree.lambdas;
  tree.nodes = own ? own->finish() : em::Run<RepNode>{};
  return tree;
}

RepTree build_representative(const PSetFamily& f, std::size_t q) {
  auto oracle = [&](const PSet& excluded) -> std::optional<PSet> {
    em::RunReader<PSet> reader(f.sets, f.begin, f.end);
    PSet candidate;
    while (reader.next(candidate)) {
      if (disjoint(candidate, excluded)) return candidate;
    }
    return std::nullopt;
  };
  return build_tree(*f.sets.storage(), f.p, q, oracle);
}

std::optional<PSet> RepQuerier::query(std::uint64_t base, std::size_t q, const PSet& b) {
  if (b.size > q) throw PreconditionError("query set larger than the representative depth");
  std::uint64_t index = 0;
  for (;;) {
    const RepNode& node = reader_.at(base + index);
    if (node.lambda) return std::nullopt;
    const auto label = node.label.view();
    auto hit = std::find_if(label.begin(), label.end(), [&](VertexId x) { return b.contains(x); });
    if (hit == label.end()) return node.label;
    if (node.first_child == kNoNode) throw std::logic_error("representative walk left the tree");
    index = node.first_child + static_cast<std::uint64_t>(hit - label.begin());
  }
}

std::optional<PSet> rep_query(const RepTree& tree, const PSet& b) {
  if (b.size > tree.q) throw PreconditionError("query set larger than the representative depth");
  RepQuerier querier(tree.nodes);
  return querier.query(tree.base, tree.q, b);
}

std::vector<RepNode> tree_nodes(const RepTree& tree) {
  std::vector<RepNode> nodes;
  em::RunReader<RepNode> reader(tree.nodes, tree.base, tree.base + tree.node_count);
  RepNode node;
  while (reader.next(node)) nodes.push_back(node);
  return nodes;
}

TreeCheck check_tree(const std::vector<RepNode>& nodes, std::size_t p, std::size_t q, const std::vector<PSet>& family) {
  auto fail = [](std::size_t i, const std::string& why) { return TreeCheck{false, "node " + std::to_string(i) + ": " + why}; };
  if (nodes.empty()) return {false, "tree has no root"};
  if (nodes[0].parent != kNoNode || nodes[0].depth != 0) return fail(0, "bad root");

  std::vector<PSet> excluded(nodes.size());
  std::vector<bool> reached(nodes.size(), false);
  reached[0] = true;
  std::uint64_t labeled = 0;
  std::uint64_t lambdas = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (!reached[i]) return fail(i, "not reachable from its parent");
    if (node.lambda) {
      ++lambdas;
      for (const auto& a : family)
        if (disjoint(a, excluded[i])) return fail(i, "lambda but a member avoids E(v)");
      if (node.first_child != kNoNode) return fail(i, "lambda node has children");
      continue;
    }
    ++labeled;
    if (node.label.size != p) return fail(i, "label has the wrong size");
    if (std::find(family.begin(), family.end(), node.label) == family.end()) return fail(i, "label not in the family");
    if (!disjoint(node.label, excluded[i])) return fail(i, "label meets E(v)");
    const bool inner = node.depth < q && p > 0;
    if (!inner) {
      if (node.first_child != kNoNode) return fail(i, "leaf level node has children");
      continue;
    }
    if (node.first_child == kNoNode || node.first_child + p > nodes.size()) return fail(i, "missing children");
    for (std::size_t j = 0; j < p; ++j) {
      const auto c = node.first_child + j;
      const auto& child = nodes[c];
      if (child.parent != i || child.depth != node.depth + 1 || child.edge != node.label.items[j]) {
        return fail(c, "child does not match its parent's label");
      }
      if (reached[c]) return fail(c, "child claimed twice");
      reached[c] = true;
      excluded[c] = excluded[i].with(child.edge);
    }
  }
  if (labeled > labeled_node_bound(p, q)) return {false, "too many labeled nodes"};
  if (lambdas > std::max<std::uint64_t>(1, p * labeled)) return {false, "too many lambda nodes"};
  return {};
}

std::optional<DisjointPair> find_disjoint(const PSetFamily& f, const PSetFamily& g) {
  if (f.size() == 0 || g.size() == 0) return std::nullopt;
  const auto tf = build_representative(f, g.p);
  const auto tg = build_representative(g, f.p);
  if (tf.labeled == 0 || tg.labeled == 0) return std::nullopt;

  const bool scan_f = tf.labeled <= tg.labeled;
  const auto& scanned = scan_f ? tf : tg;
  const auto& queried = scan_f ? tg : tf;
  RepQuerier querier(queried.nodes);
  em::RunReader<RepNode> reader(scanned.nodes, scanned.base, scanned.base + scanned.node_count);
  RepNode node;
  while (reader.next(node)) {
    if (node.lambda) continue;
    if (auto other = querier.query(queried.base, queried.q, node.label)) {
      return scan_f ? DisjointPair{node.label, *other} : DisjointPair{*other, node.label};
    }
  }
  return std::nullopt;
}

}  // namespace emg
