// Runs the acceptance criteria; one line per criterion, exit 1 if any fails.
#include <cstdlib>
#include <iostream>

#include "weilrep/checks.hpp"

int main(int argc, char** argv) {
  weilrep::CheckOptions opt;
  if (std::getenv("WEILREP_VERBOSE")) opt.log = [](const std::string& s) { std::cerr << s << std::endl; };
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= weilrep::kCriteria; ++i) ids.push_back(i);
  int failed = 0;
  for (int id : ids) {
    auto r = weilrep::run_check(id, opt);
    std::cout << weilrep::format_result(r) << std::endl;
    failed += !r.pass;
  }
  std::cout << (failed ? "FAILED " : "all passed ") << ids.size() - failed << "/" << ids.size() << std::endl;
  return failed ? 1 : 0;
}
