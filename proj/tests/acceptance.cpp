// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "eigenrand/verify.hpp"

int main(int argc, char** argv) {
  eigenrand::verify::Config cfg;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      cfg.threads = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc)
      cfg.suite = argv[++i];
  }
  auto rep = eigenrand::verify::run(cfg);
  int failed = 0;
  for (const auto& res : rep.results) {
    std::printf("[%s] %s\n", res.pass ? "PASS" : "FAIL", res.name.c_str());
    for (const auto& line : res.details)
      if (!res.pass || line.find("FAIL") != std::string::npos)
        std::printf("        %s\n", line.c_str());
    if (!res.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(rep.results.size()) - failed,
              rep.results.size());
  return failed == 0 ? 0 : 1;
}
