#include <benchmark/benchmark.h>

#include "lpvident/estimator.hpp"
#include "lpvident/filter2d.hpp"
#include "lpvident/gram.hpp"
#include "lpvident/montecarlo.hpp"

namespace {

using namespace lpvident;

Dataset make_data(Eigen::Index n) {
  const AstromLpvSystem sys;
  return generate(sys, n, 20.0, 42).data;
}

void BM_gram(benchmark::State& state) {
  const Dataset d = make_data(state.range(0));
  const HyperParams h;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram(d, h).entries.norm());
  }
}
BENCHMARK(BM_gram)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_filter2d(benchmark::State& state) {
  const Dataset d = make_data(state.range(0));
  const HyperParams h;
  const GramMatrix g = gram(d, h);
  const AlphaPolynomial alpha = butterworth_alpha(0.2, d.ts, h.n_x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(filter_gram_2d(alpha, g).entries.norm());
  }
}
BENCHMARK(BM_filter2d)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_fit(benchmark::State& state) {
  const Dataset d = make_data(state.range(0));
  const HyperParams h;
  const AlphaPolynomial alpha = butterworth_alpha(0.2, d.ts, h.n_x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(d, h, alpha).lambda.norm());
  }
}
BENCHMARK(BM_fit)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_simulate(benchmark::State& state) {
  const Dataset d = make_data(state.range(0));
  const HyperParams h;
  const AlphaPolynomial alpha = butterworth_alpha(0.2, d.ts, h.n_x);
  const TrainedModel m = fit(d, h, alpha);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(m, d.u, d.p).norm());
  }
}
BENCHMARK(BM_simulate)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
