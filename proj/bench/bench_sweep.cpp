// Serial reference loop against the OpenMP sweep on the same suite
// configuration. Prints wall-clock seconds for both and whether the two
// reports are byte-identical.
//
//   bench_sweep [--max-points N] [--samples S] [--props P-ao,L-sw] [--workers W] [--repeat R]

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>

#include "fintop/verify.hpp"

#ifdef FINTOP_HAVE_OPENMP
#include <omp.h>
#endif

using namespace fintop;

namespace {

struct Timing {
  double best = 0;
  std::string report;
};

Timing time_suite(const verify::SuiteConfig& config, int repeat) {
  Timing t;
  t.best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const verify::SuiteReport r = verify::run_suite(config);
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    t.best = std::min(t.best, d.count());
    t.report = verify::to_json(r);
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel property sweeps"};
  verify::SuiteConfig config;
  config.properties = {"P-ao", "P-wo", "P-irr", "P-sat", "E-closed", "L-sw", "H-hoc"};
  int workers = 0;
  int repeat = 3;
  app.add_option("--max-points", config.max_points)->capture_default_str();
  app.add_option("--samples", config.sample_budget)->capture_default_str();
  app.add_option("--props", config.properties)->delimiter(',');
  app.add_option("--workers", workers, "0 = OpenMP default")->capture_default_str();
  app.add_option("--repeat", repeat)->capture_default_str()->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

#ifdef FINTOP_HAVE_OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#else
  const int threads = 1;
  std::cout << "built without OpenMP; the parallel run uses the serial loop\n";
#endif

  verify::SuiteConfig serial = config;
  serial.workers = 1;
  verify::SuiteConfig parallel = config;
  parallel.workers = workers;

  // Warm the per-thread lattice memo so neither side pays for it alone.
  verify::run_suite(parallel);
  const Timing s = time_suite(serial, repeat);
  const Timing p = time_suite(parallel, repeat);
  std::cout << std::fixed << std::setprecision(3) << "serial    " << s.best << " s\n"
            << "parallel  " << p.best << " s  (" << threads << " threads)\n"
            << "speedup   " << s.best / p.best << "\n"
            << "reports identical: " << (s.report == p.report ? "yes" : "NO") << '\n';
  return s.report == p.report ? 0 : 1;
}
