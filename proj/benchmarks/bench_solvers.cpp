#include <memory>

#include <benchmark/benchmark.h>

#include "lgt/model.hpp"
#include "lgt/spectra.hpp"

namespace {

lgt::Model z2_torus(int lx) {
  lgt::ModelParams p;
  p.mass_term = p.tunneling_term = false;
  p.coupling = 0.8;
  auto cat = std::make_shared<const lgt::GroupCatalogEntry>(lgt::build_from_reference("Z_2"));
  return lgt::Model(lgt::LatticeSpec(lx, 2, true, true, false), p, cat, lgt::LinkBasis::Group);
}

void BM_Matvec(benchmark::State& state) {
  const auto m = z2_torus(static_cast<int>(state.range(0)));
  const auto h = m.hamiltonian();
  lgt::CVector x = lgt::random_unit_vector(m.dim(), 3), y(m.dim());
  for (auto _ : state) {
    lgt::multiply(h, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * h.nonZeros());
}
BENCHMARK(BM_Matvec)->Arg(2)->Arg(4);

void BM_Lanczos(benchmark::State& state) {
  const auto m = z2_torus(4);
  const auto h = m.hamiltonian();
  lgt::EigensolveOptions o;
  o.method = lgt::SolverMethod::Iterative;
  o.want_vectors = false;
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lgt::eigensolve(h, k, o));
}
BENCHMARK(BM_Lanczos)->Arg(1)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DenseEigensolve(benchmark::State& state) {
  const auto m = z2_torus(2);
  const auto h = m.hamiltonian();
  lgt::EigensolveOptions o;
  o.method = lgt::SolverMethod::Dense;
  for (auto _ : state) benchmark::DoNotOptimize(lgt::eigensolve(h, 10, o));
}
BENCHMARK(BM_DenseEigensolve)->Unit(benchmark::kMillisecond);

}  // namespace
