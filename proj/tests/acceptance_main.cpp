#include <cstdlib>
#include <iostream>

#include "jetlin/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  jetlin::Level level = argc > 2 ? jetlin::parse_level(argv[2]) : jetlin::Level::Quick;
  auto report = jetlin::run_acceptance(seed, level, [](const jetlin::CriterionResult& c) {
    std::cout << jetlin::result_line(c, true) << std::endl;
  });
  std::cout << (report.passed() ? "acceptance: all 9 criteria passed" : "acceptance: FAILED") << std::endl;
  return report.passed() ? 0 : 1;
}
