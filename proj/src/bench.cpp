#include "hamcycle/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "hamcycle/graph_io.hpp"
#include "hamcycle/naive.hpp"
#include "hamcycle/nice.hpp"

namespace hamcycle {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Naive: return "naive";
    case Algorithm::Rank4t: return "rank4t";
    case Algorithm::RankImproved: return "rank-improved";
    case Algorithm::CutCountNaiveJoin: return "cutcount-naive-join";
    case Algorithm::CutCountFastJoin: return "cutcount-fast-join";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& s) {
  if (s == "naive") return Algorithm::Naive;
  if (s == "rank4t") return Algorithm::Rank4t;
  if (s == "rank-improved") return Algorithm::RankImproved;
  if (s == "cutcount" || s == "cutcount-naive-join") return Algorithm::CutCountNaiveJoin;
  if (s == "cutcount-fast" || s == "cutcount-fast-join") return Algorithm::CutCountFastJoin;
  return std::nullopt;
}

const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::Auto: return "auto";
    case RunMode::Witness: return "witness";
    case RunMode::Decision: return "decision";
    case RunMode::SelfReduce: return "self-reduce";
  }
  return "?";
}

std::optional<RunMode> parse_mode(const std::string& s) {
  for (RunMode m : {RunMode::Auto, RunMode::Witness, RunMode::Decision, RunMode::SelfReduce})
    if (s == mode_name(m)) return m;
  return std::nullopt;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Timeout: return "timeout";
    case Outcome::Error: return "error";
  }
  return "?";
}

std::optional<Outcome> parse_outcome(const std::string& s) {
  for (Outcome o : {Outcome::Yes, Outcome::No, Outcome::Timeout, Outcome::Error})
    if (s == outcome_name(o)) return o;
  return std::nullopt;
}

double default_timeout(int width) { return width <= 8 ? 600.0 : 1800.0; }

namespace {

bool is_cutcount(Algorithm a) {
  return a == Algorithm::CutCountNaiveJoin || a == Algorithm::CutCountFastJoin;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

ReducePolicy policy_for(const SolverConfig& cfg) {
  const RankVariant kind =
      cfg.algo == Algorithm::Rank4t ? RankVariant::Cut4t : RankVariant::Improved;
  ReducePolicy p = cfg.policy.value_or(ReducePolicy::defaults(kind));
  p.kind = kind;
  return p;
}

}  // namespace

std::string policy_string(const ReducePolicy& p) {
  std::ostringstream s;
  s << "tau=";
  bool first = true;
  for (auto [l, t] : p.tau) {
    s << (first ? "" : ";") << l << ':' << t;
    first = false;
  }
  const char* style = p.style == TriggerStyle::Auto ? "auto"
                      : p.style == TriggerStyle::Tau ? "tau"
                                                     : "alpha";
  s << " alpha=" << p.alpha << " switch=" << p.width_switch << " style=" << style;
  return s.str();
}

SolveReport solve_instance(const Graph& g, const TreeDecomposition& td, const SolverConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.mode = cfg.mode;
  try {
    if (auto check = validate_td(g, td); !check)
      throw std::invalid_argument("invalid decomposition: " + check.violation);
    if (rep.mode == RunMode::Auto) {
      if (is_cutcount(cfg.algo))
        rep.mode = RunMode::Decision;
      else
        rep.mode = td.max_bag_size() <= kWitnessBagLimit ? RunMode::Witness : RunMode::SelfReduce;
    }
    if (rep.mode == RunMode::Witness && is_cutcount(cfg.algo)) rep.mode = RunMode::SelfReduce;

    std::optional<Deadline> deadline;
    if (cfg.timeout_s > 0) deadline = Deadline::after(cfg.timeout_s);
    const Deadline* dl = deadline ? &*deadline : nullptr;
    const FieldSpec field = FieldSpec::gf2_64();
    std::uint64_t call_index = 0;

    auto run_dp = [&](const Graph& h, const NiceDecomposition& nd, SolveMode mode) {
      SolveOptions opts;
      opts.mode = mode;
      opts.deadline = dl;
      SolveResult r = cfg.algo == Algorithm::Naive ? solve_naive(h, nd, opts)
                                                    : solve_rank(h, nd, policy_for(cfg), opts);
      rep.peak_table = std::max(rep.peak_table, r.peak_table);
      return r;
    };
    auto decide = [&](const Graph& h, const TreeDecomposition& htd) {
      const NiceDecomposition nd = make_nice(h, htd);
      if (is_cutcount(cfg.algo)) {
        const std::uint64_t seed = call_index++ == 0 ? cfg.seed : splitmix(cfg.seed + call_index);
        const JoinKind join =
            cfg.algo == Algorithm::CutCountFastJoin ? JoinKind::Fast : JoinKind::Naive;
        CCResult r = cc_decide(h, nd, field, seed, join, dl);
        rep.peak_table = std::max(rep.peak_table, r.peak_table);
        return r.hamiltonian;
      }
      return run_dp(h, nd, SolveMode::Decision).hamiltonian;
    };

    switch (rep.mode) {
      case RunMode::Witness: {
        SolveResult r = run_dp(g, make_nice(g, td), SolveMode::Witness);
        rep.decision_calls = 1;
        rep.outcome = r.hamiltonian ? Outcome::Yes : Outcome::No;
        if (r.hamiltonian) rep.cycle = extract_from_witness(r.cycle, g.num_vertices());
        break;
      }
      case RunMode::Decision:
        rep.decision_calls = 1;
        rep.outcome = decide(g, td) ? Outcome::Yes : Outcome::No;
        break;
      case RunMode::SelfReduce: {
        ExtractionResult x = extract_self_reduce(g, td, decide);
        rep.decision_calls = x.calls;
        if (x.status == ExtractStatus::NotHamiltonian) {
          rep.outcome = Outcome::No;
        } else if (x.status == ExtractStatus::Found) {
          rep.outcome = Outcome::Yes;
          rep.cycle = std::move(x.cycle);
        } else {
          rep.outcome = Outcome::Error;
          rep.message = "decision answers were inconsistent during extraction";
        }
        break;
      }
      case RunMode::Auto:
        break;
    }
    if (rep.cycle && !verify_cycle(g, *rep.cycle)) {
      rep.outcome = Outcome::Error;
      rep.message = "extracted cycle failed verification";
      rep.cycle.reset();
    }
  } catch (const TimeoutError&) {
    rep.outcome = Outcome::Timeout;
    rep.cycle.reset();
  } catch (const std::exception& e) {
    rep.outcome = Outcome::Error;
    rep.message = e.what();
    rep.cycle.reset();
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

namespace {

const char* kColumns =
    "instance,algorithm,mode,outcome,wall_ms,peak_table,decision_calls,seed,policy";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV row");
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  std::istringstream in(s);
  T v{};
  if (!(in >> v) || !in.eof()) throw std::runtime_error("bad number in CSV row: " + s);
  return v;
}

}  // namespace

void write_csv_header(std::ostream& out) { out << kCsvVersionLine << '\n' << kColumns << '\n'; }

void write_csv_row(std::ostream& out, const RunRecord& r) {
  out << csv_field(r.instance) << ',' << csv_field(r.algorithm) << ',' << csv_field(r.mode)
      << ',' << outcome_name(r.outcome) << ',' << r.wall_ms << ',' << r.peak_table << ','
      << r.decision_calls << ',' << r.seed << ',' << csv_field(r.policy) << '\n';
}

std::vector<RunRecord> parse_csv(std::istream& in) {
  std::vector<RunRecord> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line == kColumns) continue;
    auto f = split_csv(line);
    if (f.size() != 9) throw std::runtime_error("CSV row needs 9 fields: " + line);
    RunRecord r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.mode = f[2];
    auto o = parse_outcome(f[3]);
    if (!o) throw std::runtime_error("unknown outcome: " + f[3]);
    r.outcome = *o;
    r.wall_ms = parse_number<std::int64_t>(f[4]);
    r.peak_table = parse_number<std::size_t>(f[5]);
    r.decision_calls = parse_number<std::size_t>(f[6]);
    r.seed = parse_number<std::uint64_t>(f[7]);
    r.policy = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

void CsvSink::header() {
  std::lock_guard lock(mu_);
  write_csv_header(out_);
  out_.flush();
}

void CsvSink::row(const RunRecord& r) {
  std::ostringstream line;
  write_csv_row(line, r);
  std::lock_guard lock(mu_);
  out_ << line.str();
  out_.flush();
}

void CsvSink::comment(const std::string& text) {
  std::lock_guard lock(mu_);
  out_ << "# " << text << '\n';
  out_.flush();
}

namespace {

bool completed(Outcome o) { return o == Outcome::Yes || o == Outcome::No; }

}  // namespace

std::vector<std::string> commonly_solved(const std::vector<RunRecord>& rows) {
  std::set<std::string> algos;
  std::map<std::string, std::set<std::string>> solved_by;
  std::set<std::string> instances;
  for (const auto& r : rows) {
    algos.insert(r.algorithm);
    instances.insert(r.instance);
    if (completed(r.outcome)) solved_by[r.instance].insert(r.algorithm);
  }
  std::vector<std::string> out;
  for (const auto& id : instances)
    if (solved_by[id] == algos) out.push_back(id);
  return out;
}

std::map<std::string, std::int64_t> common_totals(const std::vector<RunRecord>& rows) {
  const auto common = commonly_solved(rows);
  const std::set<std::string> keep(common.begin(), common.end());
  std::map<std::string, std::int64_t> totals;
  for (const auto& r : rows) {
    totals.try_emplace(r.algorithm, 0);
    if (keep.count(r.instance)) totals[r.algorithm] += r.wall_ms;
  }
  return totals;
}

std::vector<std::string> disagreements(const std::vector<RunRecord>& rows) {
  std::map<std::string, std::set<Outcome>> answers;
  for (const auto& r : rows)
    if (completed(r.outcome)) answers[r.instance].insert(r.outcome);
  std::vector<std::string> out;
  for (const auto& [id, set] : answers)
    if (set.size() > 1) out.push_back(id);
  return out;
}

std::vector<BenchInstance> load_suite(const std::string& dir, std::vector<std::string>* errors) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".gr" || ext == ".hcp" || ext == ".tsp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchInstance> out;
  for (const auto& path : files) {
    try {
      BenchInstance inst;
      inst.id = path.filename().string();
      inst.graph = parse_graph_file(path.string());
      fs::path td_path = path;
      td_path.replace_extension(".td");
      inst.td = fs::exists(td_path) ? parse_td_file(td_path.string())
                                    : min_fill_decomposition(inst.graph);
      out.push_back(std::move(inst));
    } catch (const std::exception& e) {
      if (errors) errors->push_back(path.filename().string() + ": " + e.what());
    }
  }
  return out;
}

int bench_workers() {
  if (const char* env = std::getenv("HCBENCH_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

std::vector<RunRecord> run_bench(const std::vector<BenchInstance>& suite,
                                 const std::vector<SolverConfig>& configs, int workers,
                                 CsvSink* sink) {
  const std::size_t total = suite.size() * configs.size();
  std::vector<RunRecord> rows(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      const BenchInstance& inst = suite[k / configs.size()];
      const SolverConfig& cfg = configs[k % configs.size()];
      SolverConfig run = cfg;
      if (run.timeout_s == 0) run.timeout_s = default_timeout(inst.td.width());
      SolveReport rep = solve_instance(inst.graph, inst.td, run);
      RunRecord r;
      r.instance = inst.id;
      r.algorithm = algorithm_name(cfg.algo);
      r.mode = mode_name(rep.mode);
      r.outcome = rep.outcome;
      r.wall_ms = static_cast<std::int64_t>(rep.wall_ms);
      if (r.outcome == Outcome::Timeout)
        r.wall_ms = std::max(r.wall_ms, static_cast<std::int64_t>(run.timeout_s * 1000));
      r.peak_table = rep.peak_table;
      r.decision_calls = rep.decision_calls;
      r.seed = cfg.seed;
      if (cfg.algo == Algorithm::Rank4t || cfg.algo == Algorithm::RankImproved)
        r.policy = policy_string(policy_for(cfg));
      if (sink) sink->row(r);
      rows[k] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::max(1, workers); ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::vector<double> tau_grid(int l) {
  switch (l) {
    case 4: return {3, 4};
    case 6: return {5, 7, 9, 11, 13, 15, 17};
    case 8: return {9, 18, 36, 72, 144};
  }
  throw std::invalid_argument("tau grid defined for l in {4, 6, 8}");
}

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (double a = 0.5; a <= 1024; a *= 2) g.push_back(a);
  return g;
}

std::vector<TunePoint> run_tune(const std::vector<BenchInstance>& suite, bool alpha_mode,
                                double timeout_s, int workers,
                                std::vector<std::string>* conflicts) {
  struct Point {
    Algorithm algo;
    std::string parameter;
    double value;
    ReducePolicy policy;
  };
  std::vector<Point> points;
  for (Algorithm algo : {Algorithm::Rank4t, Algorithm::RankImproved}) {
    const ReducePolicy base = ReducePolicy::defaults(
        algo == Algorithm::Rank4t ? RankVariant::Cut4t : RankVariant::Improved);
    if (alpha_mode) {
      for (double a : alpha_grid()) {
        ReducePolicy p = base;
        p.style = TriggerStyle::Alpha;
        p.alpha = a;
        points.push_back({algo, "alpha", a, p});
      }
    } else {
      for (int l : {4, 6, 8})
        for (double t : tau_grid(l)) {
          ReducePolicy p = base;
          p.style = TriggerStyle::Tau;
          p.tau[l] = t;
          points.push_back({algo, "tau" + std::to_string(l), t, p});
        }
    }
  }
  std::vector<SolverConfig> configs;
  for (const auto& pt : points) {
    SolverConfig c;
    c.algo = pt.algo;
    c.timeout_s = timeout_s;
    c.policy = pt.policy;
    configs.push_back(c);
  }
  const auto rows = run_bench(suite, configs, workers);
  std::vector<TunePoint> out;
  for (std::size_t c = 0; c < points.size(); ++c) {
    TunePoint tp{algorithm_name(points[c].algo), points[c].parameter, points[c].value, 0, 0, 0};
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const RunRecord& r = rows[i * configs.size() + c];
      tp.total_ms += r.wall_ms;
      if (completed(r.outcome)) ++tp.solved;
      if (r.outcome == Outcome::Timeout) ++tp.timeouts;
    }
    out.push_back(tp);
  }
  if (conflicts)
    for (auto& id : disagreements(rows)) conflicts->push_back(id);
  return out;
}

std::string stats_csv_header() {
  return "instance,n,m,min_deg,avg_deg,max_deg,girth,diameter,width";
}

std::string stats_csv_row(const std::string& id, const Graph& g,
                          const std::optional<TreeDecomposition>& td) {
  const GraphStats s = stats(g);
  std::ostringstream out;
  out << csv_field(id) << ',' << s.n << ',' << s.m << ',' << s.min_deg << ',' << std::fixed
      << std::setprecision(3) << s.avg_deg << ',' << s.max_deg << ',' << s.girth << ','
      << s.diameter << ',';
  if (td) out << td->width();
  return out.str();
}

}  // namespace hamcycle
