#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emg/cliques.hpp"
#include "emg/cycles.hpp"
#include "emg/degeneracy.hpp"
#include "emg/formats.hpp"
#include "emg/generators.hpp"
#include "emg/oracles.hpp"

namespace emg::cli {
namespace {

using em::EmConfig;
using em::Storage;

struct Globals {
  std::uint64_t memory = std::uint64_t{1} << 20;
  std::uint64_t block = std::uint64_t{1} << 12;
  std::uint64_t disks = 1;
  std::string scratch_dir;
  std::uint64_t seed = 0;
  bool verify = false;
  std::string output;
  std::string report;

  EmConfig config() const {
    EmConfig cfg;
    cfg.memory = memory;
    cfg.block = block;
    cfg.disks = disks;
    cfg.scratch_dir = scratch_dir;
    cfg.validate();
    return cfg;
  }
};

// Ordered key=value lines; insertion order is kept so reports diff cleanly.
class RunReport {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    for (auto& [k, v] : fields_) {
      if (k == key) {
        v = s.str();
        return;
      }
    }
    fields_.emplace_back(key, s.str());
  }

  void write(std::ostream& out) const {
    for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

class VerifyMismatch : public Error {
 public:
  using Error::Error;
};

std::string join(const std::vector<VertexId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(ids[i]);
  }
  return s;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(0, "cannot open '" + path + "'");
  return in;
}

// Text edge lists and binary graphs are told apart by the binary magic.
ExternalGraph load_graph(const std::string& path, bool directed, Storage& storage) {
  auto in = open_input(path);
  char magic[sizeof(io::kBinaryMagic)] = {};
  in.read(magic, sizeof(magic));
  const bool binary = in.gcount() == static_cast<std::streamsize>(sizeof(magic)) &&
                      std::equal(magic, magic + sizeof(magic), io::kBinaryMagic);
  in.clear();
  in.seekg(0);
  if (binary) return io::read_binary_graph(in, storage);
  return load_edge_list(in, directed, storage).graph;
}

DegeneracyOrdering load_ordering(const std::string& path, const ExternalGraph& g, Storage& storage) {
  auto in = open_input(path);
  auto file = io::read_ordering(in, storage);
  DegeneracyOrdering ordering;
  ordering.order = file.order;
  ordering.epsilon = file.epsilon.value_or(0.0);
  ordering.certified_bound = verify_ordering(g, ordering.order);
  return ordering;
}

void record_run(RunReport& report, const Storage& storage, double workload, double wall_ms) {
  const auto& cfg = storage.config();
  const auto stats = storage.stats();
  report.set("memory", cfg.memory);
  report.set("block", cfg.block);
  report.set("disks", cfg.disks);
  report.set("wall_ms", static_cast<std::uint64_t>(std::llround(wall_ms)));
  report.set("blocks_read", stats.blocks_read);
  report.set("blocks_written", stats.blocks_written);
  report.set("blocks_total", stats.total());
  const double scan = em::scan_units(workload, cfg);
  const double sort = em::sort_units(workload, cfg);
  report.set("workload_records", static_cast<std::uint64_t>(workload));
  report.set("scan_units", scan);
  report.set("sort_units", sort);
  report.set("alpha", sort > 0 ? static_cast<double>(stats.total()) / sort : 0.0);
  report.set("peak_resident", storage.peak_resident());
  report.set("violations", storage.memory_violations());
}

class Session {
 public:
  Session(const Globals& globals, std::ostream& out) : out_(&out) {
    if (!globals.output.empty()) {
      file_.open(globals.output);
      if (!file_) throw IoError(0, "cannot write '" + globals.output + "'");
      out_ = &file_;
    }
  }
  std::ostream& out() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct OrderArgs {
  std::string input;
  double epsilon = 1.0;
};

void cmd_order(const Globals& globals, const OrderArgs& args, std::ostream& out, RunReport& report) {
  Storage storage(globals.config());
  auto g = load_graph(args.input, false, storage);
  const auto start = Clock::now();
  storage.reset_stats();
  storage.reset_peak();
  const auto ordering = approx_degeneracy_order(g, args.epsilon);
  record_run(report, storage, static_cast<double>(g.arc_count()), elapsed_ms(start));
  Session session(globals, out);
  io::write_ordering(session.out(), ordering.order, ordering.epsilon, ordering.certified_bound);
  report.set("n", g.n);
  report.set("m", g.edge_count());
  report.set("epsilon", ordering.epsilon);
  report.set("iterations", ordering.batches.size());
  report.set("certified_bound", ordering.certified_bound);
  if (globals.verify) {
    const auto d = oracle::exact_degeneracy(oracle::DenseGraph::from(g)).d;
    const bool ok = verify_ordering(g, ordering.order) == ordering.certified_bound &&
                    static_cast<double>(ordering.certified_bound) <= (2 + args.epsilon) * static_cast<double>(d);
    report.set("exact_degeneracy", d);
    if (!ok) throw VerifyMismatch("ordering bound " + std::to_string(ordering.certified_bound) +
                                  " exceeds (2+epsilon)*" + std::to_string(d));
    report.set("verified", 1);
  }
}

struct CycleArgs {
  std::string input;
  std::size_t length = 0;
  std::string ordering;
  bool directed = false;
  bool force_degenerate = false;
};

void cmd_cycle(const Globals& globals, const CycleArgs& args, std::ostream& out, RunReport& report) {
  Storage storage(globals.config());
  auto g = load_graph(args.input, args.directed, storage);
  std::optional<DegeneracyOrdering> ordering;
  if (!args.ordering.empty()) ordering = load_ordering(args.ordering, g, storage);
  const auto start = Clock::now();
  storage.reset_stats();
  storage.reset_peak();
  const auto result = ordering ? find_cycle_degenerate(g, *ordering, args.length, {args.force_degenerate})
                               : find_cycle_general(g, args.length);
  record_run(report, storage, static_cast<double>(g.arc_count()), elapsed_ms(start));
  report.set("n", g.n);
  report.set("m", g.edge_count());
  report.set("directed", g.directed ? 1 : 0);
  report.set("length", args.length);
  report.set("algorithm", ordering ? "degenerate" : "general");
  report.set("fallback", result.fallback ? 1 : 0);
  report.set("threshold", result.threshold);
  report.set("high_degree", result.high_degree);
  report.set("f_paths", result.f_stats.paths);
  report.set("g_paths", result.g_stats.paths);
  report.set("pairs", result.pairs);
  report.set("found", result.witness ? 1 : 0);

  Session session(globals, out);
  session.out() << (result.witness ? join(*result.witness) : "NONE") << '\n';
  if (globals.verify) {
    const auto dense = oracle::DenseGraph::from(g);
    const bool expected = oracle::brute_cycles(dense, args.length, 1).exists;
    if (expected != result.witness.has_value())
      throw VerifyMismatch(std::string("oracle says a cycle ") + (expected ? "exists" : "does not exist"));
    if (result.witness && !oracle::is_valid_cycle(dense, *result.witness, args.length))
      throw VerifyMismatch("witness is not a simple cycle of the requested length");
    session.out() << "VERIFIED exists=" << (expected ? 1 : 0) << '\n';
  }
}

struct CliqueArgs {
  std::string input;
  std::string ordering;
  double epsilon = 1.0;
};

void cmd_cliques(const Globals& globals, const CliqueArgs& args, std::ostream& out, RunReport& report) {
  Storage storage(globals.config());
  auto g = load_graph(args.input, false, storage);
  if (g.directed) throw PreconditionError("clique enumeration needs an undirected graph");
  const auto start = Clock::now();
  storage.reset_stats();
  storage.reset_peak();
  const auto ordering =
      args.ordering.empty() ? approx_degeneracy_order(g, args.epsilon) : load_ordering(args.ordering, g, storage);
  Session session(globals, out);
  std::vector<std::vector<VertexId>> cliques;
  const auto summary = enumerate_maximal_cliques(g, ordering, [&](const std::vector<VertexId>& c) {
    session.out() << join(c) << '\n';
    if (globals.verify) cliques.push_back(c);
  });
  const double delta = static_cast<double>(summary.delta_hat);
  record_run(report, storage, delta * static_cast<double>(g.n), elapsed_ms(start));
  report.set("n", g.n);
  report.set("m", g.edge_count());
  report.set("certified_bound", ordering.certified_bound);
  report.set("delta_hat", summary.delta_hat);
  report.set("h_arcs", summary.h_arcs);
  report.set("calls", summary.calls);
  report.set("max_depth", summary.max_depth);
  report.set("n_cliques", summary.cliques);
  const double unit = em::sort_units(delta * static_cast<double>(g.n), storage.config()) * std::pow(3.0, delta / 3);
  report.set("clique_units", unit);
  report.set("clique_alpha", unit > 0 ? static_cast<double>(storage.stats().total()) / unit : 0.0);

  if (globals.verify) {
    auto expected = oracle::classic_bron_kerbosch(oracle::DenseGraph::from(g));
    std::sort(expected.begin(), expected.end());
    std::sort(cliques.begin(), cliques.end());
    if (cliques != expected)
      throw VerifyMismatch("clique set differs from the oracle (" + std::to_string(cliques.size()) + " vs " +
                           std::to_string(expected.size()) + ")");
    if (summary.max_depth > summary.delta_hat) throw VerifyMismatch("recursion deeper than delta_hat");
    session.out() << "VERIFIED n_cliques=" << cliques.size() << '\n';
  }
}

struct GenArgs {
  std::string model = "erdos_renyi";
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  bool directed = false;
  bool binary = false;
};

void cmd_gen(const Globals& globals, const GenArgs& args, std::ostream& out, RunReport& report) {
  Storage storage(globals.config());
  const auto list = gen::by_name(args.model, args.n, args.m, globals.seed, args.directed);
  auto g = gen::materialize(storage, list);
  Session session(globals, out);
  if (args.binary) {
    io::write_binary_graph(session.out(), g);
  } else {
    io::write_edge_list(session.out(), g);
  }
  report.set("model", args.model);
  report.set("seed", globals.seed);
  report.set("n", g.n);
  report.set("m", g.edge_count());
  report.set("directed", g.directed ? 1 : 0);
}

struct SweepArgs {
  std::string algorithm = "order";
  double density = 2.0;
  unsigned from = 12;
  unsigned to = 16;
  double epsilon = 1.0;
};

// One CSV row per ladder step: Erdos-Renyi graphs with m = density * n.
void cmd_sweep(const Globals& globals, const SweepArgs& args, std::ostream& out, RunReport& report) {
  if (args.algorithm != "order" && args.algorithm != "cliques")
    throw ConfigError("sweep algorithm must be 'order' or 'cliques'");
  if (args.from > args.to || args.to > 30) throw ConfigError("bad sweep ladder");
  Session session(globals, out);
  session.out() << "algorithm,n,m,bound,blocks,unit,alpha,peak_resident,violations\n";
  double lo = 0, hi = 0;
  for (unsigned e = args.from; e <= args.to; ++e) {
    const std::uint64_t n = std::uint64_t{1} << e;
    const auto m = static_cast<std::uint64_t>(args.density * static_cast<double>(n));
    Storage storage(globals.config());
    auto g = gen::materialize(storage, gen::erdos_renyi(n, m, globals.seed + e));
    storage.reset_stats();
    storage.reset_peak();
    std::uint64_t bound = 0;
    double unit = 0;
    if (args.algorithm == "order") {
      const auto ordering = approx_degeneracy_order(g, args.epsilon);
      bound = ordering.certified_bound;
      unit = em::sort_units(static_cast<double>(bound * n), storage.config());
    } else {
      const auto ordering = approx_degeneracy_order(g, args.epsilon);
      storage.reset_stats();
      const auto summary = enumerate_maximal_cliques(g, ordering, [](const std::vector<VertexId>&) {});
      bound = summary.delta_hat;
      const double delta = static_cast<double>(bound);
      unit = em::sort_units(delta * static_cast<double>(n), storage.config()) * std::pow(3.0, delta / 3);
    }
    const auto blocks = storage.stats().total();
    const double alpha = unit > 0 ? static_cast<double>(blocks) / unit : 0.0;
    lo = e == args.from ? alpha : std::min(lo, alpha);
    hi = e == args.from ? alpha : std::max(hi, alpha);
    session.out() << args.algorithm << ',' << n << ',' << m << ',' << bound << ',' << blocks << ',' << unit << ','
                  << alpha << ',' << storage.peak_resident() << ',' << storage.memory_violations() << '\n';
  }
  report.set("alpha_min", lo);
  report.set("alpha_max", hi);
  report.set("alpha_spread", lo > 0 ? hi / lo : 0.0);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"External-memory graph analysis", "emgraph"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--memory", globals.memory, "simulated memory M, in records");
  app.add_option("--block", globals.block, "block size B, in records");
  app.add_option("--disks", globals.disks, "parallel disks D");
  app.add_option("--scratch-dir", globals.scratch_dir, "back simulated storage with files here");
  app.add_option("--seed", globals.seed, "random seed");
  app.add_flag("--verify", globals.verify, "cross-check results against in-memory oracles");
  app.add_option("--output,-o", globals.output, "result file (default stdout)");
  app.add_option("--report", globals.report, "key=value report file (default stderr)");

  OrderArgs order;
  auto* order_cmd = app.add_subcommand("order", "approximate degeneracy ordering");
  order_cmd->add_option("input", order.input)->required()->check(CLI::ExistingFile);
  order_cmd->add_option("--epsilon", order.epsilon)->check(CLI::PositiveNumber);

  CycleArgs cycle;
  auto* cycle_cmd = app.add_subcommand("cycle", "fixed-length cycle detection");
  cycle_cmd->add_option("input", cycle.input)->required()->check(CLI::ExistingFile);
  cycle_cmd->add_option("--length,-c", cycle.length)->required();
  cycle_cmd->add_option("--ordering", cycle.ordering)->check(CLI::ExistingFile);
  cycle_cmd->add_flag("--directed", cycle.directed);
  cycle_cmd->add_flag("--force-degenerate", cycle.force_degenerate, "never fall back to the general search");

  CliqueArgs cliques;
  auto* cliques_cmd = app.add_subcommand("cliques", "maximal clique enumeration");
  cliques_cmd->add_option("input", cliques.input)->required()->check(CLI::ExistingFile);
  cliques_cmd->add_option("--ordering", cliques.ordering)->check(CLI::ExistingFile);
  cliques_cmd->add_option("--epsilon", cliques.epsilon)->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph");
  gen_cmd->add_option("--model", gen.model);
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--m", gen.m, "edge count, or the second size parameter");
  gen_cmd->add_flag("--directed", gen.directed);
  gen_cmd->add_flag("--binary", gen.binary);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "I/O scaling ladder as CSV");
  sweep_cmd->add_option("--algorithm", sweep.algorithm);
  sweep_cmd->add_option("--density", sweep.density)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--from", sweep.from);
  sweep_cmd->add_option("--to", sweep.to);
  sweep_cmd->add_option("--epsilon", sweep.epsilon)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RunReport report;
  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  report.set("command", command);

  int code = kExitOk;
  try {
    if (*order_cmd) {
      cmd_order(globals, order, out, report);
    } else if (*cycle_cmd) {
      cmd_cycle(globals, cycle, out, report);
    } else if (*cliques_cmd) {
      cmd_cliques(globals, cliques, out, report);
    } else if (*gen_cmd) {
      cmd_gen(globals, gen, out, report);
    } else {
      cmd_sweep(globals, sweep, out, report);
    }
  } catch (const VerifyMismatch& e) {
    err << "verify mismatch: " << e.what() << '\n';
    code = kExitMismatch;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    code = kExitParse;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    code = kExitParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    code = kExitParse;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    code = kExitInternal;
  }
  report.set("exit_code", code);

  if (globals.report.empty()) {
    report.write(err);
  } else {
    std::ofstream file(globals.report);
    if (!file) {
      err << "i/o error: cannot write '" << globals.report << "'\n";
      return code == kExitOk ? kExitParse : code;
    }
    report.write(file);
  }
  return code;
}

}  // namespace emg::cli
