// Timing comparison of the OpenMP kernels against their serial reference
// implementations.  Not a correctness test (the unit suite covers equality);
// run it manually: build/bench_kernels [workers]
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "discrim/builder.hpp"

using namespace discrim;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

Arrangement random_generic(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  Arrangement A;
  A.k = k;
  A.n = n;
  for (;;) {
    A.normals.clear();
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(k);
      for (auto& x : v) x = Rat(rng.uniform(-30, 30));
      A.normals.push_back(std::move(v));
    }
    bool nz = true;
    for (const Vec& v : A.normals)
      if (is_zero(v)) nz = false;
    if (nz && is_central_generic(A).generic) return A;
  }
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::cout << std::left << std::setw(34) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << serial << "s"
            << std::setw(9) << parallel << "s" << std::setw(8)
            << std::setprecision(2) << (parallel > 0 ? serial / parallel : 0.0)
            << "x   " << (equal ? "results equal" : "RESULTS DIFFER") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
  std::cout << "OpenMP enabled, max threads: " << omp_get_max_threads() << "\n";
#else
  (void)argc;
  (void)argv;
  std::cout << "built without OpenMP: both columns run serially\n";
#endif
  std::cout << std::left << std::setw(34) << "kernel" << std::right
            << std::setw(10) << "serial" << std::setw(10) << "parallel"
            << std::setw(9) << "speedup" << "\n";

  {
    Arrangement A = builtin_example("ex16_11").arrangement;
    auto t0 = Clock::now();
    GenericityReport s = is_central_generic_serial(A);
    auto t1 = Clock::now();
    GenericityReport p = is_central_generic(A);
    auto t2 = Clock::now();
    row("genericity ex16_11 (4368 minors)", seconds(t0, t1), seconds(t1, t2),
        s.generic == p.generic && s.witness == p.witness);
  }

  {
    Arrangement A = random_generic(14, 7, 42);
    auto t0 = Clock::now();
    GenericityReport s = is_central_generic_serial(A);
    auto t1 = Clock::now();
    GenericityReport p = is_central_generic(A);
    auto t2 = Clock::now();
    row("genericity random B(14,7)", seconds(t0, t1), seconds(t1, t2),
        s.generic == p.generic && s.witness == p.witness);
  }

  {
    Arrangement A = random_generic(8, 3, 7);
    ScanOptions opts;
    opts.r_max = 3;
    RunConfig cfg;
    cfg.seed = 1;
    auto t0 = Clock::now();
    ScanResult s = scan_serial(A, opts, cfg);
    auto t1 = Clock::now();
    ScanResult p = scan(A, opts, cfg);
    auto t2 = Clock::now();
    bool equal = s.candidates == p.candidates && s.survivors == p.survivors &&
                 s.witnesses.size() == p.witnesses.size();
    row("witness scan random B(8,3)", seconds(t0, t1), seconds(t1, t2), equal);
    std::cout << "  scan stats: " << p.candidates << " candidates, "
              << p.survivors << " survivors, " << p.witnesses.size()
              << " witnesses\n";
  }
  return 0;
}
