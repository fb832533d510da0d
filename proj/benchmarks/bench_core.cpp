#include <benchmark/benchmark.h>

#include <cmath>

#include "tlm/corpus.hpp"
#include "tlm/dyadic.hpp"
#include "tlm/lebesgue.hpp"
#include "tlm/morrey.hpp"
#include "tlm/tlm_norms.hpp"

namespace {

tlm::Grid grid_1d(std::size_t N) { return tlm::Grid(1, N, 64.0); }

tlm::GridFunction gaussian(const tlm::Grid& g) {
  return tlm::GridFunction::sample(g, [](const tlm::Point& x) {
    return tlm::Complex(std::exp(-x[0] * x[0] / 8.0), 0.0);
  });
}

void BM_Fourier(benchmark::State& state) {
  const auto g = grid_1d(static_cast<std::size_t>(state.range(0)));
  const auto f = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(tlm::fourier(f));
}
BENCHMARK(BM_Fourier)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_LuxemburgVariable(benchmark::State& state) {
  const auto g = grid_1d(static_cast<std::size_t>(state.range(0)));
  const auto f = gaussian(g);
  const tlm::ExponentField p(g, tlm::ExponentDescriptor::log_decay(2.0, 0.5));
  const auto mask = tlm::DomainMask::whole(g);
  for (auto _ : state) benchmark::DoNotOptimize(tlm::lebesgue_norm(f, p, mask));
}
BENCHMARK(BM_LuxemburgVariable)->Arg(1024)->Arg(4096);

void BM_Morrey(benchmark::State& state) {
  const auto g = grid_1d(4096);
  const auto f = gaussian(g);
  const tlm::ExponentField p(g, tlm::ExponentDescriptor::log_decay(2.0, 0.5));
  const tlm::ExponentField u(g, tlm::ExponentDescriptor::constant(3.0));
  const auto family = tlm::BallFamily::standard(g);
  for (auto _ : state) benchmark::DoNotOptimize(tlm::morrey_norm(f, p, u, family));
}
BENCHMARK(BM_Morrey);

void BM_Peetre(benchmark::State& state) {
  const auto g = grid_1d(4096);
  const auto system = tlm::build_admissible_pair(g, 5).levels;
  const auto conv = system.convolutions(gaussian(g));
  const auto method = state.range(0) ? tlm::PeetreMethod::windowed
                                     : tlm::PeetreMethod::exhaustive;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tlm::peetre_maximal_level(conv[3], 3, 2.0, method));
  }
}
BENCHMARK(BM_Peetre)->Arg(0)->Arg(1);

}  // namespace
BENCHMARK_MAIN();
