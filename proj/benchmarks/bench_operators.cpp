#include <memory>

#include <benchmark/benchmark.h>

#include "lgt/clebsch_gordan.hpp"
#include "lgt/model.hpp"
#include "lgt/verify.hpp"

namespace {

lgt::CatalogPtr catalog(const char* ref) {
  return std::make_shared<const lgt::GroupCatalogEntry>(lgt::build_from_reference(ref));
}

lgt::ModelParams d3_params() {
  lgt::ModelParams p;
  p.mass = 1.0;
  p.epsilon = 0.5;
  p.electric_weights = {{"I", 0.0}, {"p", 1.0}, {"2", 0.75}};
  return p;
}

void BM_CgProjectionD3(benchmark::State& state) {
  const auto e = lgt::build_builtin("D3");
  for (auto _ : state) benchmark::DoNotOptimize(lgt::cg(e, 2, 2, 2));
}
BENCHMARK(BM_CgProjectionD3);

void BM_CgSu2ClosedForm(benchmark::State& state) {
  const auto e = lgt::build_from_reference("SU2_trunc:J_max=4");
  const int tj = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lgt::cg(e, tj, 1, tj + 1));
}
BENCHMARK(BM_CgSu2ClosedForm)->Arg(1)->Arg(3)->Arg(7);

void BM_CgSu2Commutant(benchmark::State& state) {
  const auto e = lgt::build_from_reference("SU2_trunc:J_max=4");
  const int tj = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lgt::cg_lie_commutant(e, tj, 1, tj + 1));
}
BENCHMARK(BM_CgSu2Commutant)->Arg(1)->Arg(3)->Arg(7);

void BM_SparseKron(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lgt::SparseMatrix a = lgt::sparse_identity(n);
  const lgt::SparseMatrix b = lgt::sparse_identity(64);
  for (auto _ : state) benchmark::DoNotOptimize(lgt::kron(a, b));
  state.SetItemsProcessed(state.iterations() * n * 64);
}
BENCHMARK(BM_SparseKron)->Arg(64)->Arg(1024)->Arg(8192);

void BM_AssembleHamiltonianD3Plaquette(benchmark::State& state) {
  const auto cat = catalog("D3");
  const lgt::LatticeSpec lat(2, 2, false, false, state.range(0) != 0);
  for (auto _ : state) {
    lgt::Model m(lat, d3_params(), cat, lgt::LinkBasis::Group);
    benchmark::DoNotOptimize(m.hamiltonian());
  }
}
BENCHMARK(BM_AssembleHamiltonianD3Plaquette)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GaugeProbeD3Plaquette(benchmark::State& state) {
  const auto cat = catalog("D3");
  lgt::Model m(lgt::LatticeSpec(2, 2, false, false, true), d3_params(), cat, lgt::LinkBasis::Group);
  const auto h = m.tunneling_term();
  const auto g = m.gauss_operator(0, lgt::GroupElement::finite(4));
  const auto v = lgt::random_block(m.dim(), static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lgt::commutator_probe(h, g, v));
}
BENCHMARK(BM_GaugeProbeD3Plaquette)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
