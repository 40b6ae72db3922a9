// Serial reference kernels against their OpenMP versions.
//
//   uaforge_bench [--reps N] [--n N]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"
#include "uaforge/evaluator.hpp"

using namespace uaforge;
namespace cat = uaforge::catalog;

namespace {

  double best_of(int reps, std::function<void()> const& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      body();
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  }

  void row(char const* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
                serial / parallel, same ? "same" : "MISMATCH");
  }

}  // namespace

int main(int argc, char** argv) {
  int         reps = 3;
  std::size_t n    = 4;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string arg = argv[i];
    if (arg == "--reps") {
      reps = std::atoi(argv[i + 1]);
    } else if (arg == "--n") {
      n = static_cast<std::size_t>(std::atoi(argv[i + 1]));
    }
  }
  std::printf("threads: %d\n", omp_get_max_threads());

  for (auto const& alg : {cat::Bn(3), cat::An(n), cat::section2_A_exp()}) {
    std::vector<PrincipalCongruence> s, p;
    double ts = best_of(reps, [&] { s = all_principal_congruences_serial(alg); });
    double tp = best_of(reps, [&] { p = all_principal_congruences_parallel(alg); });
    bool   same = s.size() == p.size();
    for (std::size_t i = 0; same && i < s.size(); ++i) {
      same = s[i].congruence == p[i].congruence;
    }
    row(("Cg(a,b) all pairs, " + alg.name()).c_str(), ts, tp, same);
  }

  for (std::size_t k = 1; k < n; ++k) {
    auto                              A   = cat::An(n);
    auto                              phi = cat::phi(k, n);
    auto                              sig = designate(phi, 1);
    std::vector<std::vector<Element>> s, p;
    double ts = best_of(reps, [&] { s = solution_table_serial(A, phi, sig); });
    double tp = best_of(reps, [&] { p = solution_table_parallel(A, phi, sig); });
    row(("phi(" + std::to_string(k) + "," + std::to_string(n) + ") table on A" + std::to_string(n)).c_str(),
        ts, tp, s == p);
  }
  return 0;
}
