// indepcount: approximate #k-SAT from the command line.
//
//   indepcount count --file f.cnf --strategy structs --eps 0.1 --delta 0.1 --seed 7
//   indepcount gen --n 12 --m 30 --k 3 --seed 1 | indepcount count --strategy brute
//   indepcount bench --n 14 --k 3 --trials 100 --strategies brute,thurley,pruned,clauses,structs
//   indepcount selftest

#include "indep/errors.hpp"
#include "indep/exact.hpp"
#include "indep/harness.hpp"
#include "indep/ras.hpp"
#include "indep/rng.hpp"
#include "indep/structs.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace indep;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitGuard = 4;

constexpr std::uint32_t kReferenceGuard = 24;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_threads() {
  if (const char* env = std::getenv("INDEP_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError("INDEP_THREADS is not an integer");
    }
  }
  return 0;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Strategy strategy_from(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw UsageError("unknown strategy '" + name + "'");
  return *s;
}

std::optional<ParamSet> params_if_any(const CnfFormula& phi, Strategy s) {
  try {
    if (s == Strategy::BruteForce || phi.max_clause_length() < 2) return std::nullopt;
    return params_for(phi.max_clause_length(), phi.num_vars(), s);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

struct CommonFlags {
  std::string strategy = "structs";
  double eps = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  int threads = -1;
  std::uint64_t budget = std::uint64_t{1} << 32;
  std::uint32_t small_n = 18;
  bool json = false;
  bool csv = false;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--eps", f.eps, "relative error")->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--delta", f.delta, "failure probability")->check(CLI::Range(1e-12, 0.4999999));
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--threads", f.threads, "worker threads (0: all cores; default $INDEP_THREADS)");
  cmd->add_option("--budget", f.budget, "cap on Monte Carlo samples per run");
  cmd->add_option("--small-n", f.small_n, "count exactly at or below this many variables");
  cmd->add_flag("--json", f.json, "JSON output (default)");
  cmd->add_flag("--csv", f.csv, "CSV output");
  cmd->add_flag("--force", f.force, "lift the brute-force and reference guards");
}

RasOptions ras_options(const CommonFlags& f, int threads) {
  RasOptions o;
  o.small_n = f.small_n;
  o.threads = threads;
  o.budget = f.budget;
  return o;
}

void check_brute_guard(const CnfFormula& phi, Strategy s, bool force) {
  if (s == Strategy::BruteForce && phi.num_vars() > exact::kBruteForceGuard && !force)
    throw GuardError("brute force refused above n=" + std::to_string(exact::kBruteForceGuard));
}

std::optional<BigInt> reference_count(const CnfFormula& phi, bool force) {
  if (phi.num_vars() > kReferenceGuard && !force) return std::nullopt;
  return exact::count_exact(phi).value;
}

RunReport run_one(const CnfFormula& phi, Strategy s, const CommonFlags& f, int threads, std::uint64_t seed,
                  bool with_reference) {
  RunReport r;
  r.n = phi.num_vars();
  r.m = phi.num_clauses();
  r.k = phi.max_clause_length();
  r.strategy = s;
  r.params = params_if_any(phi, s);
  r.threads = threads;
  const auto start = std::chrono::steady_clock::now();
  if (s == Strategy::BruteForce && phi.num_vars() > exact::kBruteForceGuard) {
    // --force: the exact counter stands in for enumeration
    r.estimate = Estimate::exact_value(exact::count_exact(phi).value, f.eps, f.delta, seed);
  } else {
    r.estimate = approx_count(phi, f.eps, f.delta, s, seed, ras_options(f, threads));
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (with_reference) r.reference = reference_count(phi, f.force);
  return r;
}

int cmd_count(const CommonFlags& f, const std::string& file, bool reference) {
  const Strategy s = strategy_from(f.strategy);
  CnfFormula phi;
  try {
    phi = parse_dimacs(read_input(file));
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
  check_brute_guard(phi, s, f.force);
  if (reference && phi.num_vars() > kReferenceGuard && !f.force)
    throw GuardError("exact reference refused above n=" + std::to_string(kReferenceGuard));
  const int threads = f.threads >= 0 ? f.threads : default_threads();
  RunReport r = run_one(phi, s, f, threads, f.seed, reference);
  r.source = file.empty() || file == "-" ? "stdin" : "file";
  if (r.source == "file") r.path = file;
  if (f.csv) {
    std::cout << csv_header() << '\n' << csv_row(0, r) << '\n';
  } else {
    std::cout << r.to_json().dump() << '\n';
  }
  return kExitOk;
}

int cmd_gen(const GeneratorSpec& spec) {
  std::cout << serialize_dimacs(generate(spec));
  return kExitOk;
}

std::vector<Strategy> strategy_list(const std::string& csv) {
  std::vector<Strategy> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(strategy_from(item));
  if (out.empty()) throw UsageError("no strategies given");
  return out;
}

int cmd_bench(const CommonFlags& f, GeneratorSpec spec, std::size_t trials, const std::string& strategies) {
  const auto list = strategy_list(strategies);
  if (spec.m == 0) spec.m = (8 * spec.n + 2) / 3;
  if (spec.n > kReferenceGuard && !f.force)
    throw GuardError("exact reference refused above n=" + std::to_string(kReferenceGuard));
  for (auto s : list) {
    if (s == Strategy::BruteForce && spec.n > exact::kBruteForceGuard && !f.force)
      throw GuardError("brute force refused above n=" + std::to_string(exact::kBruteForceGuard));
  }
  const int threads = f.threads >= 0 ? f.threads : default_threads();
  const std::size_t runs = trials * list.size();
  std::vector<RunReport> reports(runs);
  std::vector<std::string> errors(runs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(runs); ++i) {
    const auto trial = static_cast<std::size_t>(i) / list.size();
    const auto which = static_cast<std::size_t>(i) % list.size();
    try {
      GeneratorSpec g = spec;
      g.seed = derive_seed(spec.seed, trial);
      const CnfFormula phi = generate(g);
      RunReport r = run_one(phi, list[which], f, 1, derive_seed(f.seed, trial), true);
      r.source = "gen";
      r.generator = g;
      reports[static_cast<std::size_t>(i)] = std::move(r);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);

  if (f.csv) {
    std::cout << csv_header() << '\n';
    for (std::size_t i = 0; i < runs; ++i) std::cout << csv_row(i / list.size(), reports[i]) << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < runs; ++i) {
    auto j = reports[i].to_json();
    j["trial"] = i / list.size();
    std::cout << j.dump() << '\n';
  }
  for (std::size_t w = 0; w < list.size(); ++w) {
    std::size_t within = 0, exact_runs = 0;
    double seconds = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& r = reports[t * list.size() + w];
      within += r.estimate.within(*r.reference, f.eps) ? 1 : 0;
      exact_runs += r.estimate.exact ? 1 : 0;
      seconds += r.wall_seconds;
    }
    nlohmann::json summary{{"summary", std::string(to_string(list[w]))},
                           {"trials", trials},
                           {"within_epsilon", within},
                           {"exact_runs", exact_runs},
                           {"mean_wall_seconds", trials ? seconds / static_cast<double>(trials) : 0.0}};
    std::cout << summary.dump() << '\n';
  }
  return kExitOk;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
    failures += ok ? 0 : 1;
  };
  const auto chain = CnfFormula::from_ints(3, {{-1, 2}, {-2, 3}});
  const auto four_clause = CnfFormula::from_ints(4, {{1, 2}, {-2, 3}, {-3, 4}, {-1, 2}});
  check("brute force, two-clause chain", exact::brute_force_count(chain).value == 4);
  check("brute force, four-clause chain", exact::brute_force_count(four_clause).value == 2);
  for (auto s : {Strategy::Thurley, Strategy::PrunedTree, Strategy::IndepClauses, Strategy::IndepStructs}) {
    const Estimate e = approx_count(chain, 0.1, 0.1, s, 7);
    check(std::string("approx_count ") + std::string(to_string(s)), e.exact && e.value == 4);
  }
  const auto lib = StructLibrary::builtin();
  check("library has k=3 and k=4 shapes", !lib.patterns_for(3).empty() && !lib.patterns_for(4).empty());
  const auto star = struct_stats(
      {{Literal{1, false}, Literal{2, false}, Literal{3, false}},
       {Literal{1, false}, Literal{4, false}, Literal{5, false}},
       {Literal{2, false}, Literal{6, false}, Literal{7, false}}},
      {1, 2});
  check("three-clause struct L=89 w=4 f=2", star.l_sigma == 89 && star.w_sigma == 4 && star.f_sigma == 2);
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate model counting for k-CNF formulas"};
  app.require_subcommand(1);

  CommonFlags count_flags;
  std::string file;
  bool reference = false;
  auto* count = app.add_subcommand("count", "count the models of a DIMACS formula");
  count->add_option("--file", file, "DIMACS file (stdin when omitted)");
  count->add_option("--strategy", count_flags.strategy, "brute|thurley|pruned|clauses|structs");
  count->add_flag("--reference", reference, "also report the exact count");
  add_common(count, count_flags);

  GeneratorSpec gen_spec;
  auto* gen = app.add_subcommand("gen", "print a random k-CNF");
  gen->add_option("--n", gen_spec.n, "variables")->required();
  gen->add_option("--m", gen_spec.m, "clauses")->required();
  gen->add_option("--k", gen_spec.k, "clause width");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_flag("--planted", gen_spec.planted, "plant a satisfying assignment");

  CommonFlags bench_flags;
  GeneratorSpec bench_spec;
  std::size_t trials = 10;
  std::string strategies = "brute,thurley,pruned,clauses,structs";
  std::uint64_t instance_seed = 0;
  auto* bench = app.add_subcommand("bench", "compare strategies on random formulas");
  bench->add_option("--n", bench_spec.n, "variables")->required();
  bench->add_option("--m", bench_spec.m, "clauses (default 8n/3)");
  bench->add_option("--k", bench_spec.k, "clause width");
  bench->add_option("--trials", trials, "instances");
  bench->add_option("--strategies", strategies, "comma-separated list");
  bench->add_option("--instance-seed", instance_seed, "generator seed");
  bench->add_flag("--planted", bench_spec.planted, "plant a satisfying assignment");
  add_common(bench, bench_flags);

  auto* selftest = app.add_subcommand("selftest", "check a few known counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(count_flags, file, reference);
    if (gen->parsed()) return cmd_gen(gen_spec);
    if (bench->parsed()) {
      bench_spec.seed = instance_seed;
      return cmd_bench(bench_flags, bench_spec, trials, strategies);
    }
    if (selftest->parsed()) return cmd_selftest();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << " (use --force)\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
