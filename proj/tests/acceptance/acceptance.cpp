// Runs every acceptance criterion and prints one line per criterion.
// Exit status is non-zero if any criterion fails.
#include "astpa/bench/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  using namespace astpa::bench;
  VerifyOptions o;
  // ASTPA_ACCEPTANCE_REPS lowers the repetition count for quick local runs.
  if (const char* r = std::getenv("ASTPA_ACCEPTANCE_REPS")) o.reps = std::stoul(r);
  Suite suite = Suite::kAll;
  if (argc > 1) suite = parse_suite(argv[1]);
  int failed = 0;
  run_suite(suite, o, [&](const CheckResult& r) {
    std::printf("criterion %2d %s: %s | %s\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
