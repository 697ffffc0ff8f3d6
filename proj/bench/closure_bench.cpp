// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "wreathrep/constructions.hpp"
#include "wreathrep/tree.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace wreathrep;

namespace {

  RepContext const& context(std::int64_t p, std::int64_t d) {
    static std::map<std::pair<std::int64_t, std::int64_t>, RepContext> cache;
    auto it = cache.find({p, d});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{p, d}, RepContext(theorem4_pair(static_cast<std::uint32_t>(p),
                                                                   static_cast<std::size_t>(d))))
               .first;
    }
    return it->second;
  }

  // A word whose closure is large enough to be worth splitting.
  WreathElement probe(RepContext const& ctx) {
    auto const& ring = ctx.ring();
    auto        g    = WreathElement::x(ring, 0) * WreathElement::a(ring);
    for (std::size_t i = 1; i < ring.rank(); ++i) {
      g *= WreathElement::x(ring, i).pow(2) * WreathElement::a(ring);
    }
    return g;
  }

  void counters(benchmark::State& state) {
#ifdef _OPENMP
    state.counters["threads"] = omp_get_max_threads();
#else
    state.counters["threads"] = 1;
#endif
  }

  void BM_ClosureSerial(benchmark::State& state) {
    auto const& ctx = context(state.range(0), state.range(1));
    auto const  g   = probe(ctx);
    for (auto _ : state) {
      auto aut = state_closure_serial(ctx, g, 200000);
      state.counters["states"] = aut ? static_cast<double>(aut->size()) : -1.0;
      benchmark::DoNotOptimize(aut);
    }
    counters(state);
  }

  void BM_ClosureParallel(benchmark::State& state) {
    auto const& ctx = context(state.range(0), state.range(1));
    auto const  g   = probe(ctx);
    for (auto _ : state) {
      auto aut = state_closure(ctx, g, 200000);
      state.counters["states"] = aut ? static_cast<double>(aut->size()) : -1.0;
      benchmark::DoNotOptimize(aut);
    }
    counters(state);
  }

  void BM_KernelScanSerial(benchmark::State& state) {
    auto const& ctx = context(2, 2);
    for (auto _ : state) {
      auto r = kernel_scan_serial(ctx, static_cast<std::size_t>(state.range(0)));
      state.counters["elements"] = static_cast<double>(r.distinct_elements);
      benchmark::DoNotOptimize(r);
    }
    counters(state);
  }

  void BM_KernelScanParallel(benchmark::State& state) {
    auto const& ctx = context(2, 2);
    for (auto _ : state) {
      auto r = kernel_scan(ctx, static_cast<std::size_t>(state.range(0)));
      state.counters["elements"] = static_cast<double>(r.distinct_elements);
      benchmark::DoNotOptimize(r);
    }
    counters(state);
  }

}  // namespace

BENCHMARK(BM_ClosureSerial)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelScanSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelScanParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
