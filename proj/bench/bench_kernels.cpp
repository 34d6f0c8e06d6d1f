// Serial reference kernels vs their OpenMP versions.
//
//   bench_kernels [--n 26] [--samples 20000000] [--threads 0] [--reps 3]

#include "indep/harness.hpp"
#include "indep/kernels.hpp"
#include "indep/montecarlo.hpp"
#include "indep/structs.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint32_t n = 26;
  std::uint64_t samples = 20'000'000;
  int threads = 0;
  int reps = 3;
  CLI::App app{"kernel benchmark"};
  app.add_option("--n", n, "variables for the enumeration kernel")->check(CLI::Range(4, 34));
  app.add_option("--samples", samples, "Monte Carlo draws");
  app.add_option("--threads", threads, "0: all cores");
  app.add_option("--reps", reps, "repetitions, best time kept");
  CLI11_PARSE(app, argc, argv);
  const int used = threads > 0 ? threads : omp_get_max_threads();

  using namespace indep;
  const CnfFormula phi = generate({n, (8 * n + 2) / 3, 3, 42, true});
  const auto masks = kernels::to_masks(phi);

  std::uint64_t serial_count = 0, parallel_count = 0;
  const double ts = best_of(reps, [&] { serial_count = kernels::count_models_serial(masks); });
  const double tp = best_of(reps, [&] { parallel_count = kernels::count_models_parallel(masks, threads); });
  std::printf("%-14s %-8s %12s %12s %9s %s\n", "kernel", "threads", "serial_s", "parallel_s", "speedup", "agree");
  std::printf("%-14s %-8d %12.4f %12.4f %9.2f %s\n", "enumerate", used, ts, tp, ts / tp,
              serial_count == parallel_count ? "yes" : "NO");

  const StructSet psi = independent_clauses(phi);
  const Universe u = make_universe(psi, phi.num_vars());
  const auto plan = sampling_plan(phi, u);
  std::uint64_t serial_hits = 0, parallel_hits = 0;
  const double ms = best_of(reps, [&] { serial_hits = kernels::count_hits_serial(plan, samples, 7); });
  const double mp = best_of(reps, [&] { parallel_hits = kernels::count_hits_parallel(plan, samples, 7, threads); });
  std::printf("%-14s %-8d %12.4f %12.4f %9.2f %s\n", "sample", used, ms, mp, ms / mp,
              serial_hits == parallel_hits ? "yes" : "NO");
  return serial_count == parallel_count && serial_hits == parallel_hits ? 0 : 1;
}
