#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "cmaj/acceptance.hpp"
#include "cmaj/error.hpp"
#include "cmaj/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for cmaj"};
  std::uint64_t seed = cmaj::kAcceptanceSeed;
  std::string suite = "all";
  unsigned threads = 1;
  bool verbose = false;
  app.add_option("suite", suite, "all, fast, or a criterion name");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);
  cmaj::set_worker_count(threads);

  try {
    const auto results = cmaj::run_acceptance(cmaj::acceptance_suite(suite), seed, [&](const cmaj::CriterionResult& r) {
      std::printf("%s  criterion %2d  %-22s %6.1fs\n", r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
      for (const auto& c : r.checks)
        if (verbose || !c.pass)
          std::printf("        %s %-70s stat=%.6g thr=%.6g effect=%.4g n=%llu\n", c.pass ? "ok " : "BAD",
                      c.label.c_str(), c.statistic, c.threshold, c.effect_size,
                      static_cast<unsigned long long>(c.samples));
      std::fflush(stdout);
    });
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass() ? 1 : 0;
    std::printf("%zu/%zu criteria passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
  } catch (const cmaj::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
