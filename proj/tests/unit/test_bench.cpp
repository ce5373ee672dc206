#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphs.hpp"
#include "hamcycle/bench.hpp"
#include "hamcycle/generator.hpp"
#include "hamcycle/graph_io.hpp"

using namespace hamcycle;

namespace {

const Algorithm kAll[] = {Algorithm::Naive, Algorithm::Rank4t, Algorithm::RankImproved,
                          Algorithm::CutCountNaiveJoin, Algorithm::CutCountFastJoin};

RunRecord rec(const std::string& inst, const std::string& algo, Outcome o, std::int64_t ms) {
  RunRecord r;
  r.instance = inst;
  r.algorithm = algo;
  r.mode = "witness";
  r.outcome = o;
  r.wall_ms = ms;
  return r;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hcbench-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
  }
};

}  // namespace

TEST_CASE("names round trip") {
  for (Algorithm a : kAll) CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK(parse_algorithm("cutcount") == Algorithm::CutCountNaiveJoin);
  CHECK(parse_algorithm("cutcount-fast") == Algorithm::CutCountFastJoin);
  CHECK_FALSE(parse_algorithm("dijkstra").has_value());
  for (RunMode m : {RunMode::Auto, RunMode::Witness, RunMode::Decision, RunMode::SelfReduce})
    CHECK(parse_mode(mode_name(m)) == m);
  for (Outcome o : {Outcome::Yes, Outcome::No, Outcome::Timeout, Outcome::Error})
    CHECK(parse_outcome(outcome_name(o)) == o);
  CHECK(default_timeout(8) == 600);
  CHECK(default_timeout(9) == 1800);
}

TEST_CASE("solve_instance across algorithms and modes") {
  GeneratedInstance inst = generate(GenParams{6, 4, 0.5, 7});
  Graph petersen = testgraphs::petersen();
  TreeDecomposition ptd = min_fill_decomposition(petersen);
  for (Algorithm a : kAll)
    for (RunMode m : {RunMode::Auto, RunMode::Witness, RunMode::Decision, RunMode::SelfReduce}) {
      CAPTURE(algorithm_name(a));
      CAPTURE(mode_name(m));
      SolverConfig cfg;
      cfg.algo = a;
      cfg.mode = m;
      cfg.seed = 5;
      SolveReport yes = solve_instance(inst.graph, inst.td, cfg);
      CHECK(yes.outcome == Outcome::Yes);
      CHECK(yes.mode != RunMode::Auto);
      if (yes.mode == RunMode::Decision) {
        CHECK_FALSE(yes.cycle.has_value());
      } else {
        REQUIRE(yes.cycle.has_value());
        CHECK(verify_cycle(inst.graph, *yes.cycle));
      }
      if (yes.mode == RunMode::SelfReduce) CHECK(yes.decision_calls > 1);
      CHECK(solve_instance(petersen, ptd, cfg).outcome == Outcome::No);
    }
}

TEST_CASE("mode resolution") {
  Graph c6 = testgraphs::cycle(6);
  TreeDecomposition td = min_fill_decomposition(c6);
  SolverConfig cfg;
  CHECK(solve_instance(c6, td, cfg).mode == RunMode::Witness);
  cfg.algo = Algorithm::CutCountFastJoin;
  CHECK(solve_instance(c6, td, cfg).mode == RunMode::Decision);
  cfg.mode = RunMode::Witness;
  CHECK(solve_instance(c6, td, cfg).mode == RunMode::SelfReduce);
}

TEST_CASE("failures become outcomes") {
  Graph c6 = testgraphs::cycle(6);
  TreeDecomposition bad{{{1, 2, 3}}, {}};
  SolveReport r = solve_instance(c6, bad, SolverConfig{});
  CHECK(r.outcome == Outcome::Error);
  CHECK_FALSE(r.message.empty());

  GeneratedInstance big = generate(GenParams{10, 60, 0.7, 1});
  SolverConfig slow;
  slow.timeout_s = 1e-6;
  CHECK(solve_instance(big.graph, big.td, slow).outcome == Outcome::Timeout);
}

TEST_CASE("CSV round trip") {
  std::vector<RunRecord> rows{rec("plain", "naive", Outcome::Yes, 12),
                              rec("with,comma", "rank4t", Outcome::No, 0),
                              rec("with \"quote\"", "cutcount-naive-join", Outcome::Timeout, 600000)};
  rows[1].policy = policy_string(ReducePolicy::defaults(RankVariant::Cut4t));
  rows[2].seed = 18446744073709551615ull;
  rows[2].decision_calls = 41;
  rows[0].peak_table = 99;
  std::ostringstream out;
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
  CHECK(out.str().rfind(kCsvVersionLine, 0) == 0);
  std::istringstream in(out.str());
  CHECK(parse_csv(in) == rows);

  std::istringstream bad("a,b,c\n");
  CHECK_THROWS_AS(parse_csv(bad), std::runtime_error);
}

TEST_CASE("policy strings") {
  CHECK(policy_string(ReducePolicy::defaults(RankVariant::Improved)) ==
        "tau=4:3;6:5;8:9 alpha=2 switch=9 style=auto");
}

TEST_CASE("aggregation") {
  std::vector<RunRecord> rows{
      rec("a", "naive", Outcome::Yes, 10),   rec("a", "rank4t", Outcome::Yes, 5),
      rec("b", "naive", Outcome::No, 7),     rec("b", "rank4t", Outcome::Timeout, 600),
      rec("c", "naive", Outcome::Yes, 1),    rec("c", "rank4t", Outcome::No, 2),
  };
  CHECK(commonly_solved(rows) == std::vector<std::string>{"a", "c"});
  auto totals = common_totals(rows);
  CHECK(totals["naive"] == 11);
  CHECK(totals["rank4t"] == 7);
  CHECK(disagreements(rows) == std::vector<std::string>{"c"});
}

TEST_CASE("suite loading and bench runs") {
  TempDir dir;
  dir.write("b_c6.gr", to_pace_string(testgraphs::cycle(6)));
  dir.write("a_petersen.gr", to_pace_string(testgraphs::petersen()));
  dir.write("c_k4.gr", to_pace_string(testgraphs::complete(4)));
  dir.write("c_k4.td", "s td 1 4 4\nb 1 1 2 3 4\n");
  dir.write("d_broken.gr", "p tw 3 1\n1 9\n");
  dir.write("notes.txt", "ignored");
  std::vector<std::string> errors;
  auto suite = load_suite(dir.path.string(), &errors);
  REQUIRE(suite.size() == 3);
  CHECK(errors.size() == 1);
  CHECK(suite[0].id == "a_petersen.gr");
  CHECK(suite[2].td.bags.size() == 1);

  std::vector<SolverConfig> configs;
  for (Algorithm a : kAll) configs.push_back(SolverConfig{a, RunMode::Auto, 0, 3, std::nullopt});
  std::ostringstream csv;
  CsvSink sink(csv);
  sink.header();
  auto rows = run_bench(suite, configs, 3, &sink);
  REQUIRE(rows.size() == 15);
  CHECK(rows[0].instance == "a_petersen.gr");
  CHECK(rows[0].algorithm == "naive");
  CHECK(rows[14].instance == "c_k4.gr");
  for (const auto& r : rows) CHECK(r.outcome == (r.instance == "a_petersen.gr" ? Outcome::No : Outcome::Yes));
  CHECK(disagreements(rows).empty());
  std::istringstream back(csv.str());
  CHECK(parse_csv(back).size() == 15);
}

TEST_CASE("worker count") {
  setenv("HCBENCH_WORKERS", "3", 1);
  CHECK(bench_workers() == 3);
  setenv("HCBENCH_WORKERS", "zero", 1);
  CHECK(bench_workers() == 1);
  unsetenv("HCBENCH_WORKERS");
  CHECK(bench_workers() >= 1);
}

TEST_CASE("tuning grids and sweep") {
  CHECK(tau_grid(4) == std::vector<double>{3, 4});
  CHECK(tau_grid(8).back() == 144);
  CHECK_THROWS_AS(tau_grid(5), std::invalid_argument);
  CHECK(alpha_grid().size() == 12);
  CHECK(alpha_grid().front() == 0.5);
  CHECK(alpha_grid().back() == 1024);

  std::vector<BenchInstance> suite;
  for (std::uint64_t s = 1; s <= 2; ++s) {
    GeneratedInstance g = generate(GenParams{6, 6, 0.5, s});
    suite.push_back({"gen" + std::to_string(s), g.graph, g.td});
  }
  std::vector<std::string> conflicts;
  auto alpha = run_tune(suite, true, 0, 2, &conflicts);
  CHECK(alpha.size() == 24);
  for (const auto& pt : alpha) {
    CHECK(pt.parameter == "alpha");
    CHECK(pt.solved == 2);
  }
  auto tau = run_tune(suite, false, 0, 2, &conflicts);
  CHECK(tau.size() == 28);
  CHECK(conflicts.empty());
}

TEST_CASE("stats rows") {
  CHECK(stats_csv_header() == "instance,n,m,min_deg,avg_deg,max_deg,girth,diameter,width");
  Graph p = testgraphs::petersen();
  CHECK(stats_csv_row("pet", p, min_fill_decomposition(p)).rfind("pet,10,15,3,3.000,3,5,2,", 0) == 0);
  CHECK(stats_csv_row("pet", p, std::nullopt) == "pet,10,15,3,3.000,3,5,2,");
}
