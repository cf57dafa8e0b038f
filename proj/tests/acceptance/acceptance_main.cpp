#include <CLI11.hpp>

#include <iostream>
#include <vector>

#include "lnratio/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria; prints one PASS/FAIL line per criterion"};
  std::vector<int> ids;
  std::string artifacts;
  app.add_option("--criterion", ids, "Criterion id(s) to run (default: all)")
      ->check(CLI::Range(1, lnratio::kCriterionCount));
  app.add_option("--artifacts", artifacts, "Directory for JSON evidence");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) {
    for (int id = 1; id <= lnratio::kCriterionCount; ++id) ids.push_back(id);
  }
  std::optional<std::filesystem::path> dir;
  if (!artifacts.empty()) {
    std::filesystem::create_directories(artifacts);
    dir = artifacts;
  }
  bool pass = true;
  for (int id : ids) {
    const auto r = lnratio::run_criterion(id, dir);
    std::cout << lnratio::format_line(r) << std::endl;
    pass = pass && r.pass;
  }
  return pass ? 0 : 1;
}
