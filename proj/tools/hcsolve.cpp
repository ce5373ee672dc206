// hcsolve: command-line front end for the Hamiltonian cycle solvers.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hamcycle/bench.hpp"
#include "hamcycle/generator.hpp"
#include "hamcycle/graph_io.hpp"

using namespace hamcycle;

namespace {

constexpr int kExitYes = 0, kExitNo = 1, kExitTimeout = 2, kExitError = 3;

struct PolicyFlags {
  std::vector<std::string> tau;
  std::optional<double> alpha;
  std::optional<int> width_switch;
};

void add_policy_flags(CLI::App* app, PolicyFlags& f) {
  app->add_option("--tau", f.tau, "Absolute reduce threshold per open-end count, as l=v")
      ->type_name("L=V");
  app->add_option("--alpha", f.alpha, "Reduce once a bucket holds alpha * 2^(l/2-1) states");
  app->add_option("--width-switch", f.width_switch,
                  "Largest bag size that uses the absolute thresholds");
}

std::optional<ReducePolicy> build_policy(const PolicyFlags& f, Algorithm algo) {
  if (f.tau.empty() && !f.alpha && !f.width_switch) return std::nullopt;
  ReducePolicy p = ReducePolicy::defaults(algo == Algorithm::Rank4t ? RankVariant::Cut4t
                                                                    : RankVariant::Improved);
  for (const auto& item : f.tau) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--tau", "expected l=v, got " + item);
    p.tau[std::stoi(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
  }
  if (f.alpha) p.alpha = *f.alpha;
  if (f.width_switch) p.width_switch = *f.width_switch;
  p.validate();
  return p;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

TreeDecomposition load_or_build_td(const Graph& g, const std::string& td_path,
                                   std::optional<int> width_cap) {
  if (!td_path.empty()) return parse_td_file(td_path);
  if (width_cap) {
    auto order = min_fill_order_capped(g, *width_cap);
    if (!order) throw std::runtime_error("min-fill width exceeds the cap");
    return order_to_td(g, *order);
  }
  return min_fill_decomposition(g);
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Yes: return kExitYes;
    case Outcome::No: return kExitNo;
    case Outcome::Timeout: return kExitTimeout;
    case Outcome::Error: return kExitError;
  }
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian cycle solvers for graphs of bounded treewidth"};
  app.require_subcommand(1);

  // solve
  std::string input, td_path, algo_name = "naive", mode_name_in = "auto", csv_path, witness_out;
  std::optional<double> timeout;
  std::optional<std::uint64_t> seed;
  std::optional<int> width_cap;
  PolicyFlags solve_policy;
  auto* solve = app.add_subcommand("solve", "Decide one instance and optionally write the cycle");
  solve->add_option("--input", input, "Graph file (.gr or .hcp)")->required();
  solve->add_option("--td", td_path, "PACE .td decomposition (default: min-fill)");
  solve->add_option("--algo", algo_name,
                    "naive | rank4t | rank-improved | cutcount | cutcount-fast");
  solve->add_option("--mode", mode_name_in, "auto | witness | decision | self-reduce");
  solve->add_option("--timeout", timeout, "Seconds (default 600 for width <= 8, else 1800)");
  solve->add_option("--seed", seed, "Cut&Count seed (default: random, echoed)");
  solve->add_option("--csv", csv_path, "Append the run record to this CSV file");
  solve->add_option("--witness-out", witness_out, "Write the cycle, one vertex per line");
  solve->add_option("--width-cap", width_cap, "Fail when min-fill exceeds this width");
  add_policy_flags(solve, solve_policy);

  // bench
  std::string suite_dir, bench_csv, bench_mode = "auto";
  std::vector<std::string> bench_algos{"naive", "rank4t", "rank-improved", "cutcount"};
  std::optional<double> bench_timeout;
  std::optional<std::uint64_t> bench_seed;
  PolicyFlags bench_policy;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench->add_option("--input", suite_dir, "Directory of .gr/.hcp files with optional .td")
      ->required();
  bench->add_option("--algo", bench_algos, "Algorithms to run");
  bench->add_option("--mode", bench_mode, "auto | witness | decision | self-reduce");
  bench->add_option("--timeout", bench_timeout, "Seconds per run (default by width)");
  bench->add_option("--seed", bench_seed, "Cut&Count seed (default: random, echoed)");
  bench->add_option("--csv", bench_csv, "Output CSV (default: stdout)");
  add_policy_flags(bench, bench_policy);

  // tune
  std::string tune_dir, sweep = "alpha", tune_csv;
  std::optional<double> tune_timeout;
  auto* tune = app.add_subcommand("tune", "Sweep reduce thresholds for both rank variants");
  tune->add_option("--input", tune_dir, "Directory of instances")->required();
  tune->add_option("--sweep", sweep, "tau | alpha")
      ->check(CLI::IsMember({"tau", "alpha"}));
  tune->add_option("--timeout", tune_timeout, "Seconds per run (default by width)");
  tune->add_option("--csv", tune_csv, "Output CSV (default: stdout)");

  // gen
  GenParams gp;
  std::string gen_out;
  bool gen_min_fill = false;
  auto* gen = app.add_subcommand("gen", "Generate an instance with a planted cycle");
  gen->add_option("--a", gp.a, "Rows, 2 mod 4")->required();
  gen->add_option("--b", gp.b, "Columns")->required();
  gen->add_option("--p", gp.p, "Chord probability");
  gen->add_option("--seed", gp.seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output prefix for .gr, .td and .cycle")->required();
  gen->add_flag("--min-fill", gen_min_fill, "Write a min-fill decomposition instead");

  // stats
  std::string stats_in, stats_csv;
  auto* st = app.add_subcommand("stats", "Graph statistics as CSV");
  st->add_option("--input", stats_in, "Graph file or directory")->required();
  st->add_option("--csv", stats_csv, "Output CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      auto algo = parse_algorithm(algo_name);
      if (!algo) throw std::runtime_error("unknown algorithm: " + algo_name);
      auto mode = parse_mode(mode_name_in);
      if (!mode) throw std::runtime_error("unknown mode: " + mode_name_in);
      std::vector<std::string> warnings;
      const Graph g = parse_graph_file(input, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      const TreeDecomposition td = load_or_build_td(g, td_path, width_cap);
      SolverConfig cfg;
      cfg.algo = *algo;
      cfg.mode = *mode;
      cfg.seed = resolve_seed(seed);
      cfg.timeout_s = timeout.value_or(default_timeout(td.width()));
      cfg.policy = build_policy(solve_policy, *algo);
      const SolveReport rep = solve_instance(g, td, cfg);

      std::cout << "instance: " << input << "\nalgorithm: " << algorithm_name(cfg.algo)
                << "\nmode: " << mode_name(rep.mode) << "\nwidth: " << td.width()
                << "\nseed: " << cfg.seed << "\noutcome: " << outcome_name(rep.outcome)
                << "\nwall_ms: " << static_cast<long long>(rep.wall_ms)
                << "\npeak_table: " << rep.peak_table
                << "\ndecision_calls: " << rep.decision_calls << '\n';
      if (!rep.message.empty()) std::cerr << "error: " << rep.message << '\n';
      if (rep.outcome == Outcome::No &&
          (cfg.algo == Algorithm::CutCountNaiveJoin || cfg.algo == Algorithm::CutCountFastJoin))
        std::cout << "note: a no from Cut&Count is wrong with probability at most "
                  << g.num_vertices() << "/2^64 per decision\n";
      if (!witness_out.empty() && rep.cycle) {
        std::ofstream out(witness_out);
        for (Vertex v : rep.cycle->vertices) out << v << '\n';
        if (!out) throw std::runtime_error("cannot write " + witness_out);
      }
      if (!csv_path.empty()) {
        const bool fresh = !std::filesystem::exists(csv_path);
        std::ofstream out(csv_path, std::ios::app);
        if (fresh) write_csv_header(out);
        RunRecord r{input, algorithm_name(cfg.algo), mode_name(rep.mode), rep.outcome,
                    static_cast<std::int64_t>(rep.wall_ms), rep.peak_table, rep.decision_calls,
                    cfg.seed, cfg.policy ? policy_string(*cfg.policy) : ""};
        write_csv_row(out, r);
      }
      return exit_code(rep.outcome);
    }

    if (*bench) {
      auto mode = parse_mode(bench_mode);
      if (!mode) throw std::runtime_error("unknown mode: " + bench_mode);
      std::vector<std::string> errors;
      const auto suite = load_suite(suite_dir, &errors);
      for (const auto& e : errors) std::cerr << "skipped " << e << '\n';
      const std::uint64_t s = resolve_seed(bench_seed);
      std::vector<SolverConfig> configs;
      for (const auto& name : bench_algos) {
        auto algo = parse_algorithm(name);
        if (!algo) throw std::runtime_error("unknown algorithm: " + name);
        SolverConfig c;
        c.algo = *algo;
        c.mode = *mode;
        c.seed = s;
        c.timeout_s = bench_timeout.value_or(0);
        c.policy = build_policy(bench_policy, *algo);
        configs.push_back(c);
      }
      std::ofstream file;
      if (!bench_csv.empty()) file.open(bench_csv);
      std::ostream& out = bench_csv.empty() ? std::cout : file;
      CsvSink sink(out);
      sink.header();
      sink.comment("seed " + std::to_string(s));
      const auto rows = run_bench(suite, configs, bench_workers(), &sink);
      const auto common = commonly_solved(rows);
      for (const auto& [algo, ms] : common_totals(rows))
        sink.comment("total " + algo + " " + std::to_string(ms) + " ms over " +
                     std::to_string(common.size()) + " commonly solved instances");
      const auto bad = disagreements(rows);
      for (const auto& id : bad) sink.comment("DISAGREEMENT " + id);
      if (!bad.empty()) {
        std::cerr << "algorithms disagree on " << bad.size() << " instance(s)\n";
        return kExitError;
      }
      return 0;
    }

    if (*tune) {
      std::vector<std::string> errors;
      const auto suite = load_suite(tune_dir, &errors);
      for (const auto& e : errors) std::cerr << "skipped " << e << '\n';
      std::vector<std::string> conflicts;
      const auto points =
          run_tune(suite, sweep == "alpha", tune_timeout.value_or(0), bench_workers(), &conflicts);
      std::ofstream file;
      if (!tune_csv.empty()) file.open(tune_csv);
      std::ostream& out = tune_csv.empty() ? std::cout : file;
      out << "variant,parameter,value,total_ms,solved,timeouts\n";
      for (const auto& p : points)
        out << p.variant << ',' << p.parameter << ',' << p.value << ',' << p.total_ms << ','
            << p.solved << ',' << p.timeouts << '\n';
      for (const auto& id : conflicts) out << "# DISAGREEMENT " << id << '\n';
      return conflicts.empty() ? 0 : kExitError;
    }

    if (*gen) {
      const GeneratedInstance inst = generate(gp);
      const TreeDecomposition td = gen_min_fill ? min_fill_decomposition(inst.graph) : inst.td;
      std::ofstream gr(gen_out + ".gr"), tdf(gen_out + ".td"), cyc(gen_out + ".cycle");
      write_graph(gr, inst.graph, GraphFormat::PaceGr);
      write_td(tdf, td, inst.graph.num_vertices());
      for (Vertex v : inst.planted_cycle.vertices) cyc << v << '\n';
      if (!gr || !tdf || !cyc) throw std::runtime_error("cannot write output files");
      const ExpectedParams e = expected_params_report(gp);
      std::cout << "n: " << inst.graph.num_vertices() << "\nm: " << inst.graph.num_edges()
                << "\nexpected_m: " << e.edges << "\nexpected_density: " << e.density
                << "\nwidth: " << td.width() << '\n';
      return 0;
    }

    if (*st) {
      std::ofstream file;
      if (!stats_csv.empty()) file.open(stats_csv);
      std::ostream& out = stats_csv.empty() ? std::cout : file;
      out << stats_csv_header() << '\n';
      namespace fs = std::filesystem;
      std::vector<fs::path> files;
      if (fs::is_directory(stats_in)) {
        for (const auto& entry : fs::directory_iterator(stats_in)) {
          auto ext = entry.path().extension().string();
          if (ext == ".gr" || ext == ".hcp" || ext == ".tsp") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
      } else {
        files.push_back(stats_in);
      }
      for (const auto& f : files) {
        try {
          const Graph g = parse_graph_file(f.string());
          std::optional<TreeDecomposition> td;
          fs::path tdp = f;
          tdp.replace_extension(".td");
          if (fs::exists(tdp)) td = parse_td_file(tdp.string());
          out << stats_csv_row(f.filename().string(), g, td) << '\n';
        } catch (const std::exception& e) {
          std::cerr << f.filename().string() << ": " << e.what() << '\n';
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
