#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "qkdwcp/attack.hpp"
#include "qkdwcp/postproc.hpp"
#include "qkdwcp/protosim.hpp"
#include "qkdwcp/qmath.hpp"
#include "qkdwcp/rates.hpp"

namespace {

using namespace qkdwcp;

void BM_PhaseErrorNumeric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_error_numeric(0.03, 0.05));
  }
}
BENCHMARK(BM_PhaseErrorNumeric);

void BM_OptimizeMu(benchmark::State& state) {
  const SystemParams params = gys_like_defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_mu(RateSource::Nonrandom, 10.0, params));
  }
}
BENCHMARK(BM_OptimizeMu);

void BM_Fidelity(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto density = [&] {
    Cmat b(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Cmat rho = b * b.adjoint();
    rho /= rho.trace();
    return rho;
  };
  const Cmat rho = density(), sigma = density();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity(rho, sigma));
  }
}
BENCHMARK(BM_Fidelity)->Arg(2)->Arg(4)->Arg(8);

void BM_UkdPovm(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ukd_povm(0.1));
  }
}
BENCHMARK(BM_UkdPovm);

void BM_RunProtocol(benchmark::State& state) {
  const SourceVariant src = SourceVariant::unmodulated(std::sqrt(0.05));
  const ChannelParams chan{0.21, 10.0};
  const DetectorParams det{8.5e-7, 8.5e-7, 0.045, 0.033};
  const auto rounds = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_protocol(rounds, src, chan, det, EveStrategy::None, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rounds));
}
BENCHMARK(BM_RunProtocol)->Arg(10000)->Arg(100000);

void BM_SamplePaMatrices(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_pa_matrices(n, n / 2, seed++));
  }
}
BENCHMARK(BM_SamplePaMatrices)->Arg(64)->Arg(256);

void BM_ExtractKey(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto [g, h] = sample_pa_matrices(n, n / 2, 9);
  std::vector<std::uint8_t> v(n);
  std::mt19937_64 rng(5);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_key(v, g));
  }
}
BENCHMARK(BM_ExtractKey)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
