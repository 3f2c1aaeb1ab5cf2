#include <benchmark/benchmark.h>

#include "qchow/edi.hpp"
#include "qchow/expr.hpp"
#include "qchow/families.hpp"
#include "qchow/steenrod.hpp"

using namespace qchow;

namespace {

Monomial distinct_monomial(int arity) {
  std::vector<BasisClass> factors;
  for (int k = 0; k < arity - 1; ++k) factors.push_back(BasisClass::h(k));
  factors.push_back(BasisClass::l(1));
  return Monomial::of(factors);
}

void BM_sym(benchmark::State& state) {
  Cycle seed = Cycle::monomial(distinct_monomial(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym(seed));
  }
}
BENCHMARK(BM_sym)->Arg(4)->Arg(6)->Arg(8);

void BM_cycle_mul(benchmark::State& state) {
  QuadricContext ctx(9);
  Cycle lhs = rho(ctx, 3, 2);
  Cycle rhs = delta_cycle(ctx, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mul(lhs, rhs, ctx));
  }
}
BENCHMARK(BM_cycle_mul);

void BM_rho_pullback_direct(benchmark::State& state) {
  QuadricContext ctx(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_steenrod_pullback(ctx, 4, 3, 2));
  }
}
BENCHMARK(BM_rho_pullback_direct);

void BM_rho_pullback_closed_form(benchmark::State& state) {
  QuadricContext ctx(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_steenrod_closed_form(ctx, 4, 3, 2));
  }
}
BENCHMARK(BM_rho_pullback_closed_form);

void BM_primordial_compose(benchmark::State& state) {
  QuadricContext ctx(9);
  PrimordialSpec spec{2, {{2, true}, {3, false}}};
  Cycle gamma = mul(external(Cycle::unit(1), h_power_cycle(ctx, 1)), primordial(ctx, spec), ctx);
  Cycle beta = rho(ctx, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(corr_compose(gamma, 1, beta, ctx));
  }
}
BENCHMARK(BM_primordial_compose);

void BM_edi_propagate(benchmark::State& state) {
  EDITable seed(10);
  seed.add(5, 0);
  seed.add(3, 4);
  seed.add(1, 8);
  WittContext witt{true, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(seed, witt));
  }
}
BENCHMARK(BM_edi_propagate);

void BM_edi_enumerate(benchmark::State& state) {
  for (auto _ : state) {
    uint64_t count = enumerate_admissible(static_cast<int>(state.range(0)), {}, {},
                                          [](const EDITable&) { return true; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_edi_enumerate)->Arg(6)->Arg(8);

void BM_parse_eval(benchmark::State& state) {
  QuadricContext ctx(5);
  for (auto _ : state) {
    ExprPtr e = parse_expr("S^1@1(rho(2,1)) . (h^1 x 1 x 1) + rho(2,2)", ctx);
    benchmark::DoNotOptimize(eval_expr(e, ctx));
  }
}
BENCHMARK(BM_parse_eval);

}  // namespace

BENCHMARK_MAIN();
