#include <iostream>

#include "CLI11.hpp"
#include "tc/harness/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion");
  CLI11_PARSE(app, argc, argv);

  const auto ids = only > 0 ? std::vector<int>{only} : tc::harness::criterion_ids();
  int failed = 0;
  for (const int id : ids) {
    const auto r = tc::harness::run_criterion(id);
    if (!r.pass) ++failed;
    std::cout << tc::harness::format_line(r) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
