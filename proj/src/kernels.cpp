#include "jetlin/kernels.hpp"

#include <omp.h>

#include <exception>

namespace jetlin {

namespace {

bool same_frame(const HorizontalFrame& a, const HorizontalFrame& b) {
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2))
      for (int r = 1; r <= 2; ++r)
        if (!(a.f(i, jk, r) == b.f(i, jk, r))) return false;
  return true;
}

template <class Out, class In, class F>
std::vector<Out> run_parallel(const std::vector<In>& items, F work) {
  std::vector<Out> out(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  auto n = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      out[k] = work(items[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class Out, class In, class F>
std::vector<Out> run_serial(const std::vector<In>& items, F work) {
  std::vector<Out> out;
  out.reserve(items.size());
  for (const In& x : items) out.push_back(work(x));
  return out;
}

std::optional<double> sample(const Expr& e, const Env& env) {
  try {
    return eval(e, env).to_double();
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

Analysis analyze_one(const Section& s, const ZeroTestOptions& options) {
  Analysis a;
  try {
    a.verdict = linearizable(s, options);
  } catch (const Error& e) {
    a.error = e.what();
  }
  return a;
}

}  // namespace

RouteCheck check_routes(const JetPoint& theta2) {
  RouteCheck c;
  JetPoint theta1 = project(theta2, 1);
  c.frame_closed = horizontal_frame_1_closed(theta1);
  c.frame_solved = horizontal_frame_1_solved(theta1);
  c.frame_agrees = same_frame(c.frame_closed, c.frame_solved);
  c.closed = obstruction_closed_form(theta2);
  c.constructive = obstruction_constructive(theta2);
  c.obstruction_agrees = c.closed.F1 == c.constructive.F1 && c.closed.F2 == c.constructive.F2;
  return c;
}

std::vector<RouteCheck> check_routes_serial(const std::vector<JetPoint>& jets) {
  return run_serial<RouteCheck>(jets, check_routes);
}

std::vector<RouteCheck> check_routes_parallel(const std::vector<JetPoint>& jets) {
  return run_parallel<RouteCheck>(jets, check_routes);
}

std::vector<std::optional<double>> evaluate_samples_serial(const Expr& e, const std::vector<Env>& points) {
  return run_serial<std::optional<double>>(points, [&](const Env& env) { return sample(e, env); });
}

std::vector<std::optional<double>> evaluate_samples_parallel(const Expr& e, const std::vector<Env>& points) {
  return run_parallel<std::optional<double>>(points, [&](const Env& env) { return sample(e, env); });
}

std::vector<Analysis> analyze_serial(const std::vector<Section>& equations, const ZeroTestOptions& options) {
  return run_serial<Analysis>(equations, [&](const Section& s) { return analyze_one(s, options); });
}

std::vector<Analysis> analyze_parallel(const std::vector<Section>& equations, const ZeroTestOptions& options) {
  return run_parallel<Analysis>(equations, [&](const Section& s) { return analyze_one(s, options); });
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace jetlin
