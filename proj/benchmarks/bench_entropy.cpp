#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tdlc/entropy.hpp"
#include "tdlc/lattice.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/shift_universe.hpp"

namespace {

using namespace tdlc;

RatMat dense_matrix(const Int& p, std::size_t n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> vals(-2, 2);
  std::uniform_int_distribution<long> units(1, 4);
  while (true) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long unit = units(rng);
        while (Int(unit) % p == 0) unit = units(rng);
        m.at(i, j) = Rat(unit) * pow_rat(p, vals(rng));
      }
    if (det(m) != 0) return m;
  }
}

void BM_lattice_normalize(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  RatMat gens = dense_matrix(3, n, 17);
  for (auto _ : state)
    benchmark::DoNotOptimize(Lattice::from_generators(3, gens));
}
BENCHMARK(BM_lattice_normalize)->Arg(2)->Arg(3)->Arg(4);

void BM_lattice_intersect(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Lattice a = Lattice::from_generators(3, dense_matrix(3, n, 5));
  Lattice b = Lattice::from_generators(3, dense_matrix(3, n, 11));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_intersect(a, b));
}
BENCHMARK(BM_lattice_intersect)->Arg(2)->Arg(3)->Arg(4);

void BM_entropy_limit(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto u = make_padic_universe(3, n);
  Automorphism phi = make_matrix_automorphism(u, dense_matrix(3, n, 23));
  Subgroup s = u->default_subgroup();
  for (auto _ : state) benchmark::DoNotOptimize(entropy_local_limit(phi, s));
}
BENCHMARK(BM_entropy_limit)->Arg(2)->Arg(3)->Arg(4);

void BM_entropy_limitfree(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto u = make_padic_universe(3, n);
  Automorphism phi = make_matrix_automorphism(u, dense_matrix(3, n, 23));
  Subgroup s = u->default_subgroup();
  for (auto _ : state) benchmark::DoNotOptimize(entropy_local_limitfree(phi, s));
}
BENCHMARK(BM_entropy_limitfree)->Arg(2)->Arg(3)->Arg(4);

void BM_shift_entropy(benchmark::State& state) {
  auto sh = make_shift_universe(3);
  Automorphism sigma = make_shift_automorphism(sh, 2, 1);
  std::vector<long> window;
  for (long c = -state.range(0); c <= state.range(0); ++c) window.push_back(c);
  Subgroup ur = make_zero_cylinder(sh, window);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_local_limitfree(sigma, ur));
}
BENCHMARK(BM_shift_entropy)->Arg(1)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
