#include <benchmark/benchmark.h>

#include "jetlin/kernels.hpp"
#include "jetlin/random.hpp"

using namespace jetlin;

namespace {

std::vector<JetPoint> jets(int n) {
  Rng rng(1);
  std::vector<JetPoint> v;
  for (int i = 0; i < n; ++i) v.push_back(random_jet(rng, 2));
  return v;
}

std::vector<Env> points(int n) {
  ZeroTestOptions o;
  o.samples = n;
  return sample_points({"x1", "x2"}, o);
}

const Expr& sample_expr() {
  static const Expr e = [] {
    Rng rng(2);
    auto F = obstruction_form(pushforward_equation(PointTransform::parse("x", "exp(y) + x^2"), random_section(rng, 2)));
    return F[0];
  }();
  return e;
}

std::vector<Section> equations(int n) {
  Rng rng(3);
  std::vector<Section> v;
  for (int i = 0; i < n; ++i)
    v.push_back(i % 2 ? random_section(rng, 2) : pushforward_equation(random_polynomial_transform(rng), Section::zero()));
  return v;
}

void BM_RoutesSerial(benchmark::State& st) {
  auto in = jets(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check_routes_serial(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_RoutesParallel(benchmark::State& st) {
  auto in = jets(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check_routes_parallel(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SamplesSerial(benchmark::State& st) {
  auto in = points(static_cast<int>(st.range(0)));
  const Expr& e = sample_expr();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_samples_serial(e, in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SamplesParallel(benchmark::State& st) {
  auto in = points(static_cast<int>(st.range(0)));
  const Expr& e = sample_expr();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_samples_parallel(e, in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_AnalyzeSerial(benchmark::State& st) {
  auto in = equations(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(analyze_serial(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_AnalyzeParallel(benchmark::State& st) {
  auto in = equations(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(analyze_parallel(in));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_RoutesSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RoutesParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SamplesSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SamplesParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnalyzeSerial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AnalyzeParallel)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
