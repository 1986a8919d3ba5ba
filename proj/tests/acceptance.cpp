// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "emg/cliques.hpp"
#include "emg/cycles.hpp"
#include "emg/degeneracy.hpp"
#include "emg/generators.hpp"
#include "emg/oracles.hpp"
#include "emg/paths.hpp"
#include "emg/representatives.hpp"
#include "fixtures.hpp"

using namespace emg;
using namespace emg::em;

namespace {

// Watermark over every storage instance the run creates.
struct Watermark {
  std::uint64_t storages = 0;
  std::uint64_t violations = 0;
  std::uint64_t worst_overshoot = 0;  // max(peak - M, 0)
  std::uint64_t max_peak = 0;
} watermark;

class TrackedStorage : public Storage {
 public:
  explicit TrackedStorage(EmConfig cfg) : Storage(relaxed(cfg)) {}
  ~TrackedStorage() {
    ++watermark.storages;
    watermark.violations += memory_violations();
    watermark.max_peak = std::max(watermark.max_peak, peak_resident());
    if (peak_resident() > config().memory)
      watermark.worst_overshoot = std::max(watermark.worst_overshoot, peak_resident() - config().memory);
  }

 private:
  // Breaches are counted for the memory criterion instead of aborting the run.
  static EmConfig relaxed(EmConfig cfg) {
    cfg.strict_memory = false;
    return cfg;
  }
};

EmConfig small_config(std::uint64_t memory = 2048, std::uint64_t block = 16) {
  EmConfig cfg;
  cfg.memory = memory;
  cfg.block = block;
  return cfg;
}

// Collects the first few failures of a criterion.
class Failures {
 public:
  template <typename... Args>
  void add(const Args&... args) {
    ++count_;
    if (notes_.size() >= 3) return;
    std::ostringstream s;
    (s << ... << args);
    notes_.push_back(s.str());
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failure(s)";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  std::uint64_t count_ = 0;
  std::vector<std::string> notes_;
};

struct Outcome {
  bool pass;
  std::string detail;
};

std::uint64_t max_edges(std::uint64_t n, bool directed) { return directed ? n * (n - 1) : n * (n - 1) / 2; }

// Matula-Beck peeling on adjacency lists, independent of the library.
std::uint64_t peel_degeneracy(const gen::EdgeList& list) {
  std::vector<std::vector<VertexId>> adj(list.n);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto [u, v] : list.edges) {
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::uint64_t> degree(list.n);
  std::uint64_t top = 0;
  for (VertexId v = 0; v < list.n; ++v) top = std::max<std::uint64_t>(top, degree[v] = adj[v].size());
  std::vector<std::vector<VertexId>> buckets(top + 1);
  for (VertexId v = 0; v < list.n; ++v) buckets[degree[v]].push_back(v);
  std::vector<bool> removed(list.n);
  std::uint64_t d = 0, low = 0;
  for (std::uint64_t done = 0; done < list.n;) {
    while (buckets[low].empty()) ++low;
    const VertexId v = buckets[low].back();
    buckets[low].pop_back();
    if (removed[v] || degree[v] != low) continue;
    removed[v] = true;
    ++done;
    d = std::max(d, low);
    for (VertexId w : adj[v]) {
      if (removed[w]) continue;
      buckets[--degree[w]].push_back(w);
      low = std::min(low, degree[w]);
    }
  }
  return d;
}

double spread(const std::vector<double>& alphas) {
  const auto [lo, hi] = std::minmax_element(alphas.begin(), alphas.end());
  return *hi / *lo;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

// 1. Forward degree of the computed ordering within (2 + eps) * d.
Outcome degeneracy_guarantee() {
  std::vector<gen::EdgeList> corpus;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::uint64_t n = 5 + (seed * 37) % 196;
    const std::uint64_t m = std::min(max_edges(n, false), (seed % 4) * n + seed % n);
    corpus.push_back(gen::erdos_renyi(n, m, 1000 + seed));
  }
  for (std::uint64_t n : {1, 2, 17, 60, 200}) corpus.push_back(gen::random_tree(n, n));
  for (std::uint64_t k = 2; k <= 12; ++k) corpus.push_back(gen::complete(k));
  for (auto [r, c] : {std::pair{1, 9}, {3, 3}, {5, 8}, {12, 12}}) corpus.push_back(gen::grid(r, c));
  corpus.push_back(gen::petersen());
  corpus.push_back(gen::star(30));
  corpus.push_back(gen::empty(7));

  Failures f;
  std::uint64_t runs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& list = corpus[i];
    const auto dense = oracle::DenseGraph::from(list);
    const auto d = oracle::exact_degeneracy(dense).d;
    for (double epsilon : {0.25, 1.0, 4.0}) {
      TrackedStorage storage(small_config(1024, 16));
      auto g = gen::materialize(storage, list);
      const auto ordering = approx_degeneracy_order(g, epsilon);
      const auto order = to_vector(ordering.order);
      const auto forward = oracle::forward_degree(dense, order);
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      bool permutation = sorted.size() == list.n;
      for (std::size_t k = 0; permutation && k < sorted.size(); ++k) permutation = sorted[k] == k;
      if (!permutation) f.add("graph ", i, " eps=", epsilon, ": not a permutation");
      if (forward != ordering.certified_bound) f.add("graph ", i, ": certified bound disagrees with recount");
      if (static_cast<double>(forward) > (2 + epsilon) * static_cast<double>(d))
        f.add("graph ", i, " eps=", epsilon, ": forward ", forward, " > (2+eps)*", d);
      ++runs;
    }
  }
  return {f.ok(), f.ok() ? std::to_string(corpus.size()) + " graphs, " + std::to_string(runs) + " runs"
                         : f.summary()};
}

// 2. Block I/Os of the ordering = alpha * sort(d n), alpha flat over the ladder.
Outcome degeneracy_scaling() {
  std::vector<double> alphas;
  std::string rows;
  for (unsigned e = 12; e <= 16; ++e) {
    const std::uint64_t n = std::uint64_t{1} << e;
    const auto list = gen::erdos_renyi(n, 2 * n, 77 + e);
    const auto d = peel_degeneracy(list);
    TrackedStorage storage(small_config(1 << 13, 1 << 7));
    auto g = gen::materialize(storage, list);
    storage.reset_stats();
    approx_degeneracy_order(g, 1.0);
    const double unit = sort_units(static_cast<double>(d * n), storage.config());
    alphas.push_back(static_cast<double>(storage.stats().total()) / unit);
    rows += " n=2^" + std::to_string(e) + ":d=" + std::to_string(d) + ",a=" + fmt(alphas.back());
  }
  const double s = spread(alphas);
  return {s < 2.0, "spread " + fmt(s) + rows};
}

std::optional<PSet> oracle_member(const std::vector<PSet>& family, const PSet& b) {
  for (const auto& a : family)
    if (disjoint(a, b)) return a;
  return std::nullopt;
}

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

// 3. Representative trees: exact q-set equivalence and the labeled-node bound.
Outcome representatives() {
  Failures f;
  const auto figure = fixtures::figure_tree();
  const auto check = check_tree(figure, 2, 3, fixtures::figure_family);
  const auto labels = std::count_if(figure.begin(), figure.end(), [](const RepNode& n) { return !n.lambda; });
  if (!check.ok) f.add("figure tree rejected: ", check.reason);
  if (labels != 14 || figure.size() != 15) f.add("figure tree has ", labels, " labels");

  std::mt19937_64 rng(2024);
  std::uint64_t queries = 0;
  for (int round = 0; round < 200; ++round) {
    TrackedStorage storage(small_config(512, 8));
    const VertexId universe = 3 + rng() % 8;
    const std::size_t p = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const auto sets = random_family(rng, universe, std::min<std::size_t>(p, universe), 1 + rng() % 30);
    const std::size_t pp = std::min<std::size_t>(p, universe);
    const auto tree = build_representative(make_family(storage, pp, sets), q);
    const auto c = check_tree(tree_nodes(tree), pp, q, sets);
    if (!c.ok) f.add("round ", round, ": ", c.reason);
    if (tree.labeled > labeled_node_bound(pp, q)) f.add("round ", round, ": ", tree.labeled, " labeled nodes");
    if (q > universe) continue;
    for (const auto& b : subsets(universe, q)) {
      ++queries;
      const auto hit = rep_query(tree, b);
      if (hit.has_value() != oracle_member(sets, b).has_value()) f.add("round ", round, ": equivalence broken");
      if (hit && (!disjoint(*hit, b) || std::find(sets.begin(), sets.end(), *hit) == sets.end()))
        f.add("round ", round, ": bad member");
    }
  }
  return {f.ok(), f.ok() ? "figure tree valid, 200 families, " + std::to_string(queries) + " q-set queries"
                         : f.summary()};
}

// 4. find_disjoint against all pairs.
Outcome disjoint_pairs() {
  Failures f;
  std::mt19937_64 rng(99);
  std::uint64_t witnesses = 0;
  for (int round = 0; round < 500; ++round) {
    TrackedStorage storage(small_config(512, 8));
    const VertexId universe = 3 + rng() % 10;
    const std::size_t p = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const auto fs = random_family(rng, universe, p, rng() % 14);
    const auto gs = random_family(rng, universe, q, rng() % 14);
    bool expected = false;
    for (const auto& a : fs)
      for (const auto& b : gs) expected = expected || disjoint(a, b);
    const auto hit = find_disjoint(make_family(storage, p, fs), make_family(storage, q, gs));
    if (hit.has_value() != expected) f.add("round ", round, ": expected ", expected);
    if (hit) {
      ++witnesses;
      if (!disjoint(hit->a, hit->b) || std::find(fs.begin(), fs.end(), hit->a) == fs.end() ||
          std::find(gs.begin(), gs.end(), hit->b) == gs.end())
        f.add("round ", round, ": bad witness");
    }
  }
  return {f.ok(), f.ok() ? "500 pairs, " + std::to_string(witnesses) + " witnesses verified" : f.summary()};
}

std::vector<gen::EdgeList> small_corpus(std::uint64_t count, std::uint64_t salt) {
  std::vector<gen::EdgeList> corpus;
  for (std::uint64_t seed = 0; seed < count; ++seed) {
    const bool directed = seed % 2 == 1;
    const std::uint64_t n = 3 + seed % 6;
    const std::uint64_t m = (seed * 7 + seed / 6) % (max_edges(n, directed) + 1);
    corpus.push_back(gen::erdos_renyi(n, m, salt + seed, directed));
  }
  return corpus;
}

// 5. Every cycle search agrees with exhaustive enumeration.
Outcome cycles() {
  auto corpus = small_corpus(500, 5000);
  const std::size_t random_count = corpus.size();
  corpus.push_back(gen::petersen());
  corpus.push_back(gen::complete_bipartite(3, 3));
  corpus.push_back(gen::complete(6));
  for (std::uint64_t c = 3; c <= 8; ++c) corpus.push_back(gen::cycle(c));
  for (std::uint64_t c = 2; c <= 8; ++c) corpus.push_back(gen::cycle(c, true));
  corpus.push_back(gen::grid(3, 3));
  corpus.push_back(gen::grid(2, 4));
  corpus.push_back(gen::grid(4, 4));

  Failures f;
  std::uint64_t decisions = 0, witnesses = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& list = corpus[i];
    const auto dense = oracle::DenseGraph::from(list);
    TrackedStorage storage(small_config());
    auto g = gen::materialize(storage, list);
    const auto ordering = approx_degeneracy_order(g);
    for (std::size_t c = list.directed ? 2 : 3; c <= 8; ++c) {
      const bool expected = oracle::brute_cycles(dense, c, 1).exists;
      const auto judge = [&](const std::optional<Cycle>& w, const char* who) {
        ++decisions;
        if (w.has_value() != expected) f.add(who, " graph ", i, " c=", c, ": expected ", expected);
        if (w) {
          ++witnesses;
          if (!oracle::is_valid_cycle(dense, *w, c)) f.add(who, " graph ", i, " c=", c, ": invalid witness");
        }
      };
      judge(find_cycle_general(g, c).witness, "general");
      judge(find_cycle_degenerate(g, ordering, c).witness, "degenerate");
      judge(find_cycle_degenerate(g, ordering, c, {true}).witness, "forced");
      if (c > list.n) continue;
      for (VertexId v = 0; v < list.n; ++v) {
        const auto w = cycle_through(g, c, v);
        const bool through = oracle::cycle_through(dense, c, v).has_value();
        ++decisions;
        if (w.has_value() != through) f.add("through graph ", i, " c=", c, " v=", v);
        if (w && (w->front() != v || !oracle::is_valid_cycle(dense, *w, c)))
          f.add("through graph ", i, " c=", c, ": invalid witness");
      }
    }
  }
  return {f.ok(), f.ok() ? std::to_string(random_count) + " random + " + std::to_string(corpus.size() - random_count) +
                               " named graphs, " + std::to_string(decisions) + " decisions, " +
                               std::to_string(witnesses) + " witnesses"
                         : f.summary()};
}

std::vector<oracle::Path> as_paths(const Run<PathRec>& run) {
  std::vector<oracle::Path> out;
  for_each(run, [&](const PathRec& p) { out.push_back(p.to_vector()); });
  return out;
}

// 6. Path pipelines equal the DFS enumeration, within the counting bounds.
Outcome paths() {
  const auto corpus = small_corpus(300, 9000);
  Failures f;
  std::uint64_t checks = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    TrackedStorage storage(small_config(1024, 16));
    auto g = gen::materialize(storage, corpus[i]);
    const auto dense = oracle::DenseGraph::from(corpus[i]);
    const auto ordering = approx_degeneracy_order(g);
    auto ranked = reorder_graph(g, ordering.order);
    const auto ranked_dense = oracle::DenseGraph::from(ranked);
    for (std::size_t len = 1; len <= 4; ++len) {
      PathGenStats stats;
      const auto general = generate_paths(g, len, &stats);
      ++checks;
      if (as_paths(general) != oracle::all_paths(dense, len)) f.add("general graph ", i, " len=", len);
      if (static_cast<double>(stats.sequences) > general_sequence_bound(g.arc_count(), stats.max_degree, len))
        f.add("general bound graph ", i, " len=", len);
    }
    for (std::size_t len = 1; len <= 4; ++len) {
      for (auto mode : fixtures::kAllModes) {
        PathGenStats stats;
        const auto restricted = generate_paths_degenerate(ranked, len, mode, &stats);
        ++checks;
        if (as_paths(restricted) != fixtures::filtered_paths(ranked_dense, len, mode))
          f.add(to_string(mode), " graph ", i, " len=", len);
        if (stats.max_later_degree > ordering.certified_bound) f.add("later degree graph ", i);
        if (len >= 2 && static_cast<double>(stats.sequences) >
                            degenerate_sequence_bound(ranked.arc_count(), stats.max_degree, stats.max_later_degree,
                                                      len, mode))
          f.add("restricted bound graph ", i, " len=", len);
      }
    }
  }
  return {f.ok(), f.ok() ? std::to_string(corpus.size()) + " graphs, " + std::to_string(checks) + " path multisets"
                         : f.summary()};
}

// 7. Maximal cliques equal the classic enumeration; depth within delta-hat.
Outcome cliques() {
  std::vector<gen::EdgeList> corpus;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::uint64_t n = 2 + (seed * 53) % 99;
    const std::uint64_t m = std::min(max_edges(n, false), (1 + seed % 5) * n - seed % 3);
    corpus.push_back(gen::erdos_renyi(n, m, 7000 + seed));
  }
  const std::size_t random_count = corpus.size();
  for (std::uint64_t k = 1; k <= 9; ++k) corpus.push_back(gen::complete(k));
  for (auto [a, b] : {std::pair{1, 1}, {1, 5}, {3, 3}, {4, 6}}) corpus.push_back(gen::complete_bipartite(a, b));
  for (std::uint64_t n : {0, 1, 6}) corpus.push_back(gen::empty(n));
  corpus.push_back(gen::complete_multipartite({2, 3, 4}));
  corpus.push_back(gen::petersen());

  Failures f;
  std::uint64_t total = 0, deepest = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto dense = oracle::DenseGraph::from(corpus[i]);
    TrackedStorage storage(small_config(4096, 32));
    auto g = gen::materialize(storage, corpus[i]);
    const auto ordering = approx_degeneracy_order(g);
    std::vector<oracle::Clique> found;
    const auto report =
        enumerate_maximal_cliques(g, ordering, [&](const std::vector<VertexId>& c) { found.push_back(c); });
    for (const auto& c : found)
      if (!oracle::is_maximal_clique(dense, c)) f.add("graph ", i, ": not a maximal clique");
    auto expected = oracle::classic_bron_kerbosch(dense);
    std::sort(expected.begin(), expected.end());
    auto sorted = found;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) f.add("graph ", i, ": duplicate clique");
    if (sorted != expected) f.add("graph ", i, ": ", found.size(), " cliques vs ", expected.size());
    if (report.max_depth > report.delta_hat || report.delta_hat > ordering.certified_bound)
      f.add("graph ", i, ": depth ", report.max_depth, " delta-hat ", report.delta_hat);
    total += found.size();
    deepest = std::max(deepest, report.max_depth);
  }
  return {f.ok(), f.ok() ? std::to_string(random_count) + " random + " + std::to_string(corpus.size() - random_count) +
                               " named graphs, " + std::to_string(total) + " cliques, max depth " +
                               std::to_string(deepest)
                         : f.summary()};
}

// 8. Clique I/Os = alpha * sort(delta-hat n) * 3^(delta-hat / 3), alpha flat over the ladder.
Outcome clique_scaling() {
  std::vector<double> alphas;
  std::string rows;
  for (unsigned e = 12; e <= 15; ++e) {
    const std::uint64_t n = std::uint64_t{1} << e;
    TrackedStorage storage(small_config(1 << 13, 1 << 7));
    auto g = gen::materialize(storage, gen::erdos_renyi(n, 2 * n, 300 + e));
    const auto ordering = approx_degeneracy_order(g);
    storage.reset_stats();
    const auto report = enumerate_maximal_cliques(g, ordering, [](const std::vector<VertexId>&) {});
    const double delta = static_cast<double>(report.delta_hat);
    const double unit = sort_units(delta * static_cast<double>(n), storage.config()) * std::pow(3.0, delta / 3);
    alphas.push_back(static_cast<double>(storage.stats().total()) / unit);
    rows += " n=2^" + std::to_string(e) + ":dh=" + std::to_string(report.delta_hat) + ",a=" + fmt(alphas.back());
  }
  const double s = spread(alphas);
  return {s < 2.0, "spread " + fmt(s) + rows};
}

// 9. No storage ever held more than M records.
Outcome memory_discipline() {
  const bool ok = watermark.violations == 0 && watermark.worst_overshoot == 0;
  return {ok, std::to_string(watermark.storages) + " storages, " + std::to_string(watermark.violations) +
                  " violations, max peak " + std::to_string(watermark.max_peak)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"degeneracy guarantee", degeneracy_guarantee},
      {"degeneracy I/O scaling", degeneracy_scaling},
      {"representative correctness", representatives},
      {"find_disjoint", disjoint_pairs},
      {"cycle existence", cycles},
      {"path generation", paths},
      {"maximal cliques", cliques},
      {"clique I/O scaling", clique_scaling},
      {"memory discipline", memory_discipline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !outcome.pass;
    std::printf("AC%zu %s %s (%.1fs): %s\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first, seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
