#include <benchmark/benchmark.h>

#include <nncomp/constructions.hpp>
#include <nncomp/oracle.hpp>
#include <nncomp/transforms.hpp>

using namespace nncomp;

namespace {

void BM_eval_nn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NNRep r = disj_hnn(n);  // 3n Boolean anchors over 2n variables
  std::uint64_t x = 0;
  const std::uint64_t mask = (std::uint64_t(1) << (2 * n)) - 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_nn(r, x));
    x = (x + 1) & mask;
  }
}
BENCHMARK(BM_eval_nn)->Arg(2)->Arg(4)->Arg(6);

void BM_components(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BoolFn f = cnf_table(exact_half_cnf(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(components(f));
}
BENCHMARK(BM_components)->Arg(8)->Arg(12)->Arg(16);

void BM_mpptf_to_hnn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MpPTF m = xor_mpptf(n);
  for (auto _ : state) benchmark::DoNotOptimize(mpptf_to_hnn(m));
}
BENCHMARK(BM_mpptf_to_hnn)->Arg(2)->Arg(4)->Arg(8);

void BM_equiv_check(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MpPTF m = xor_mpptf(n);
  Evaluator a = make_evaluator(m);
  Evaluator b = make_evaluator(parse_family_spec("xor", n));
  for (auto _ : state) benchmark::DoNotOptimize(equiv_check(a, b, n).equal());
}
BENCHMARK(BM_equiv_check)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
