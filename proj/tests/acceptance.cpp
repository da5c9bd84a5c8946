#include <iostream>
#include <set>
#include <string>

#include "reptile/acceptance.hpp"

// Usage: acceptance [criterion ids...]
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  const auto results = reptile::run_acceptance(std::cout, only);
  std::size_t failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
