#include <benchmark/benchmark.h>

#include "fgmplate/assembly.hpp"

using namespace fgmplate;

namespace {

ModelInputs plate(int n, bool cracked) {
  ModelInputs in;
  in.a = in.b = 1.0;
  in.h = 0.1;
  in.nx = in.ny = n;
  in.comp.ceramic = *find_phase(builtin_phases(), "Si3N4");
  in.comp.metal = *find_phase(builtin_phases(), "SUS304");
  in.comp.n = 1.0;
  if (cracked) {
    CrackSegment seg;
    seg.center = {0.5, 0.5};
    seg.length = 0.5;
    in.cracks.cracks.push_back(seg);
  }
  return in;
}

void BM_build_model(benchmark::State& state) {
  const ModelInputs in = plate(static_cast<int>(state.range(0)), state.range(1) != 0);
  for (auto _ : state) {
    EnrichedModel model = build_model(in);
    benchmark::DoNotOptimize(model.K.nonZeros());
  }
}
BENCHMARK(BM_build_model)
    ->Args({34, 0})
    ->Args({34, 1})
    ->Args({68, 1})
    ->Unit(benchmark::kMillisecond);

void BM_classify(benchmark::State& state) {
  const ModelInputs in = plate(static_cast<int>(state.range(0)), true);
  const Mesh mesh = generate_mesh(in.a, in.b, in.nx, in.ny);
  const CrackSet eff = apply_mesh_perturbation(in.cracks, mesh);
  for (auto _ : state) {
    NodeClassification cls = classify_nodes(eff, mesh);
    benchmark::DoNotOptimize(cls.n_heaviside());
  }
}
BENCHMARK(BM_classify)->Arg(34)->Arg(68)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
