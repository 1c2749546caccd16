#include <iostream>

#include "thr/acceptance.hpp"

int main() {
  bool all = true;
  for (const auto& r : thr::run_acceptance({})) {
    std::cout << thr::format_result(r) << '\n' << std::flush;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
