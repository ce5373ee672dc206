#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hamcycle/cutcount.hpp"
#include "hamcycle/decomposition.hpp"
#include "hamcycle/extraction.hpp"
#include "hamcycle/graph.hpp"
#include "hamcycle/rank.hpp"

namespace hamcycle {

enum class Algorithm { Naive, Rank4t, RankImproved, CutCountNaiveJoin, CutCountFastJoin };

/// Record names: naive, rank4t, rank-improved, cutcount-naive-join, cutcount-fast-join.
const char* algorithm_name(Algorithm a);
/// Accepts the record names plus "cutcount" (naive join) and "cutcount-fast".
std::optional<Algorithm> parse_algorithm(const std::string& s);

enum class RunMode {
  Auto,        // witness for bags up to kWitnessBagLimit, else self-reduce; cutcount: decision
  Witness,     // store partial solutions and read the cycle off the root
  Decision,    // yes/no only
  SelfReduce,  // yes/no, then recover the cycle through repeated decisions
};

inline constexpr std::size_t kWitnessBagLimit = 11;

const char* mode_name(RunMode m);
std::optional<RunMode> parse_mode(const std::string& s);

enum class Outcome { Yes, No, Timeout, Error };
const char* outcome_name(Outcome o);
std::optional<Outcome> parse_outcome(const std::string& s);

struct SolverConfig {
  Algorithm algo = Algorithm::Naive;
  RunMode mode = RunMode::Auto;
  double timeout_s = 0;  // <= 0: no limit
  std::uint64_t seed = 1;
  std::optional<ReducePolicy> policy;  // rank variants; defaults per variant when unset
};

/// Default limit: 600 s for width <= 8, else 1800 s.
double default_timeout(int width);

struct SolveReport {
  Outcome outcome = Outcome::Error;
  RunMode mode = RunMode::Auto;  // the mode actually used
  std::optional<CyclePath> cycle;
  std::size_t peak_table = 0;
  std::size_t decision_calls = 0;
  double wall_ms = 0;
  std::string message;
};

/// Runs one algorithm on one instance. Never throws; failures become
/// Outcome::Error with a message. Any cycle returned has passed verify_cycle.
SolveReport solve_instance(const Graph& g, const TreeDecomposition& td, const SolverConfig& cfg);

std::string policy_string(const ReducePolicy& p);

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::string mode;
  Outcome outcome = Outcome::Error;
  std::int64_t wall_ms = 0;
  std::size_t peak_table = 0;
  std::size_t decision_calls = 0;
  std::uint64_t seed = 0;
  std::string policy;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr const char* kCsvVersionLine = "# hcbench-csv v1";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunRecord& r);
/// Reads rows written by write_csv_row; '#' lines and the column header are
/// skipped. Throws std::runtime_error on malformed rows.
std::vector<RunRecord> parse_csv(std::istream& in);

/// Serializes rows from several threads; each row is written and flushed whole.
class CsvSink {
 public:
  explicit CsvSink(std::ostream& out) : out_(out) {}
  void header();
  void row(const RunRecord& r);
  void comment(const std::string& text);

 private:
  std::ostream& out_;
  std::mutex mu_;
};

/// Instances where every algorithm present answered yes or no.
std::vector<std::string> commonly_solved(const std::vector<RunRecord>& rows);
/// Per-algorithm wall time summed over commonly_solved instances.
std::map<std::string, std::int64_t> common_totals(const std::vector<RunRecord>& rows);
/// Instances where completed runs gave different answers.
std::vector<std::string> disagreements(const std::vector<RunRecord>& rows);

struct BenchInstance {
  std::string id;
  Graph graph;
  TreeDecomposition td;
};

/// Loads every .gr/.hcp file in dir (sorted by name), with a sibling .td
/// when present and a min-fill decomposition otherwise. Unreadable files are
/// reported through `errors` and skipped.
std::vector<BenchInstance> load_suite(const std::string& dir, std::vector<std::string>* errors);

/// Worker count from HCBENCH_WORKERS, at least 1.
int bench_workers();

/// Runs every (instance, config) pair on `workers` threads. Rows are handed
/// to `sink` (if set) as they finish and returned in input order.
std::vector<RunRecord> run_bench(const std::vector<BenchInstance>& suite,
                                 const std::vector<SolverConfig>& configs, int workers,
                                 CsvSink* sink = nullptr);

struct TunePoint {
  std::string variant;  // rank4t / rank-improved
  std::string parameter;  // "tau4", "tau6", "tau8" or "alpha"
  double value = 0;
  std::int64_t total_ms = 0;
  std::size_t solved = 0;
  std::size_t timeouts = 0;
};

std::vector<double> tau_grid(int l);  // l in {4, 6, 8}
std::vector<double> alpha_grid();     // 0.5, 1, ..., 1024

/// Sweeps one tuning parameter for both rank variants. Answers must agree
/// across grid points; disagreeing instances are appended to `conflicts`.
std::vector<TunePoint> run_tune(const std::vector<BenchInstance>& suite, bool alpha_mode,
                                double timeout_s, int workers,
                                std::vector<std::string>* conflicts);

std::string stats_csv_header();
std::string stats_csv_row(const std::string& id, const Graph& g,
                          const std::optional<TreeDecomposition>& td);

}  // namespace hamcycle
