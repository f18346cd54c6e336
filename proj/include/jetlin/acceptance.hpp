#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jetlin/json_io.hpp"

namespace jetlin {

enum class Level { Quick, Full };

Level parse_level(const std::string& s);
std::string to_string(Level level);

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string claim;
  bool passed = false;
  int cases = 0;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  Level level = Level::Quick;
  std::vector<CriterionResult> results;

  bool passed() const;
};

/// Case counts per criterion at a level.
struct AcceptanceSizes {
  int route_jets;
  int flows;
  int isotropy_jets;
  int transforms;
  int identity_tangent;
  int affine;
  int curves;
  int homomorphisms;
};

AcceptanceSizes sizes_for(Level level);

CriterionResult criterion_structure();
CriterionResult criterion_routes(std::uint64_t seed, int jets);
CriterionResult criterion_psi_flow(std::uint64_t seed, int cases);
CriterionResult criterion_isotropy_laws(std::uint64_t seed, int jets);
CriterionResult criterion_linearizable(std::uint64_t seed, int transforms);
CriterionResult criterion_witnesses();
CriterionResult criterion_invariance(std::uint64_t seed, int identity_tangent, int affine);
CriterionResult criterion_curves(std::uint64_t seed, int cases);
CriterionResult criterion_homomorphism(std::uint64_t seed, int cases);

/// Criteria 1-9. `on_result` is called as each criterion finishes.
AcceptanceReport run_acceptance(std::uint64_t seed, Level level,
                                const std::function<void(const CriterionResult&)>& on_result = {});

/// The report without timings, so equal seeds give identical output.
json to_json(const AcceptanceReport& r);
std::string to_text(const AcceptanceReport& r);
/// "[PASS] 2 closed form vs constructive route: 1000/1000 ..."
std::string result_line(const CriterionResult& c, bool with_time = false);

}  // namespace jetlin
