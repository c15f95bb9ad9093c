// Acceptance gate runner. One line per criterion plus its check rows; exit
// code equals the number of failed criteria so CI sees partial failures.

#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "diffseq/acceptance.hpp"

namespace {

void print_result(const diffseq::acceptance::CriterionResult& r) {
  std::printf("[%s] %2d: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
              r.seconds);
  for (const auto& c : r.checks)
    std::printf("        %s  %s = %.12g  (target %s)\n", c.ok ? "ok  " : "MISS",
                c.name.c_str(), c.measured, c.target.c_str());
  for (const auto& n : r.notes) std::printf("        note: %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--all") == 0) {
      for (int id = 1; id <= 12; ++id) ids.push_back(id);
    } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--all] [--criterion N]...\n", argv[0]);
      return 64;
    }
  }
  if (ids.empty())
    for (int id = 1; id <= 12; ++id) ids.push_back(id);

  int failures = 0;
  for (int id : ids) {
    try {
      const auto r = diffseq::acceptance::run_criterion(id);
      print_result(r);
      if (!r.pass) ++failures;
    } catch (const std::exception& e) {
      std::printf("[FAIL] %2d: threw: %s\n", id, e.what());
      ++failures;
    }
  }
  if (ids.size() > 1)
    std::printf("%d of %zu criteria failed\n", failures, ids.size());
  return failures;
}
