#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetlin/obstruction.hpp"

namespace jetlin {

// Batch layers. Each *_parallel function runs its items under OpenMP and
// returns exactly what the *_serial version returns, in input order. The
// first failing item (by index) rethrows after the loop.

struct RouteCheck {
  bool frame_agrees = false;
  bool obstruction_agrees = false;
  HorizontalFrame frame_closed;
  HorizontalFrame frame_solved;
  ObstructionValue closed;
  ObstructionValue constructive;

  bool passed() const { return frame_agrees && obstruction_agrees; }
};

/// Closed form against the constructive solve, for both the level-1
/// frame (at the projection to J^1) and (F1, F2).
RouteCheck check_routes(const JetPoint& theta2);
std::vector<RouteCheck> check_routes_serial(const std::vector<JetPoint>& jets);
std::vector<RouteCheck> check_routes_parallel(const std::vector<JetPoint>& jets);

/// Values of e at each point as doubles; nullopt where e is singular.
std::vector<std::optional<double>> evaluate_samples_serial(const Expr& e, const std::vector<Env>& points);
std::vector<std::optional<double>> evaluate_samples_parallel(const Expr& e, const std::vector<Env>& points);

/// A verdict, or the message of the error that prevented one.
struct Analysis {
  std::optional<Verdict> verdict;
  std::string error;
};

/// Errors are kept per equation instead of being rethrown.
std::vector<Analysis> analyze_serial(const std::vector<Section>& equations, const ZeroTestOptions& options = {});
std::vector<Analysis> analyze_parallel(const std::vector<Section>& equations, const ZeroTestOptions& options = {});

int max_threads();

}  // namespace jetlin
