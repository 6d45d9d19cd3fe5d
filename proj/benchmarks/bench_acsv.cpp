#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "acsv/acsv.hpp"
#include "acsv/asymptotics.hpp"
#include "acsv/oracle.hpp"

using namespace acsv;

namespace {

struct Input {
  VarRoster roster;
  SparsePoly G;
  SparsePoly H;
};

Input make(std::vector<std::string> vars, const char* den) {
  VarRoster roster(std::move(vars));
  SparsePoly H = parse_poly(den, roster);
  return {roster, SparsePoly::constant(roster, 1), H};
}

void BM_Parse(benchmark::State& state) {
  const VarRoster roster({"x", "y", "z"});
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_poly("1-(72*x^3*z+97*y*z^3+53*x*z^2+47*x*y+39*z^2+71*x)", roster));
}
BENCHMARK(BM_Parse);

void BM_OracleDiagonal(benchmark::State& state) {
  const Input in = make({"x", "y", "z"}, "1-x-y-z");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diagonal(in.G, in.H, Direction::ones(3), n));
}
BENCHMARK(BM_OracleDiagonal)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_MixedVolumeComb(benchmark::State& state) {
  const Input in = make({"x", "y"}, "1-x*y-x*y^2-2*x^2*y");
  const PolySystem sys = build_comb_system(in.H, Direction::ones(2), false);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(sys));
}
BENCHMARK(BM_MixedVolumeComb)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const VarRoster roster({"x", "y"});
  const PolySystem sys({parse_poly("x^2+y^2-5", roster), parse_poly("x*y-2", roster)}, roster);
  const std::vector<std::complex<double>> approx{{1.0000001, 0.0}, {1.9999999, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(certify(sys, approx, CertifyOptions{}, false));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMicrosecond);

void BM_CriticalPoints(benchmark::State& state) {
  const Input in = make({"x", "y", "z"}, "1-x-y-z+1/2*x*y*z");
  for (auto _ : state) benchmark::DoNotOptimize(critical_points(in.H, Direction::ones(3)));
}
BENCHMARK(BM_CriticalPoints)->Unit(benchmark::kMillisecond);

void BM_CombBinomial(benchmark::State& state) {
  const Input in = make({"x", "y"}, "1-x-y");
  for (auto _ : state) {
    const MinimalityResult res = min_crits_comb(in.H, Direction::ones(2));
    benchmark::DoNotOptimize(expansion(in.G, in.H, Direction::ones(2), res));
  }
}
BENCHMARK(BM_CombBinomial)->Unit(benchmark::kMillisecond);

void BM_CombWalk(benchmark::State& state) {
  const Input in = make({"x", "y", "z"}, "1-z*(x^2*y+y+x*y^2+x)");
  for (auto _ : state) benchmark::DoNotOptimize(min_crits_comb(in.H, Direction::ones(3)));
}
BENCHMARK(BM_CombWalk)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
