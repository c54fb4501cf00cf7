#include <cstdio>
#include <cstdlib>
#include <string>

#include "g2surf/acceptance.hpp"

// One PASS/FAIL line per criterion; G2SURF_VERBOSE=1 adds the measurements.
int main() {
  g2surf::AcceptanceOptions opt;
  if (const char* s = std::getenv("G2SURF_SEED"); s && *s) opt.seed = std::strtoull(s, nullptr, 10);
  const char* v = std::getenv("G2SURF_VERBOSE");
  const bool verbose = v && std::string(v) == "1";
  bool all = true;
  for (const auto& r : g2surf::run_acceptance(opt)) {
    std::fputs(g2surf::format_result(r, verbose || !r.pass).c_str(), stdout);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return all ? 0 : 1;
}
