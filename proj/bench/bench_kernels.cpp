// Serial reference vs OpenMP for the hot kernels. Argument 0 = serial, 1 = parallel.

#include "etdq/config.hpp"
#include "etdq/kernels.hpp"
#include "etdq/pipeline.hpp"
#include "etdq/records_io.hpp"
#include "etdq/rng.hpp"
#include "etdq/text.hpp"

#include <benchmark/benchmark.h>

using namespace etdq;

namespace {

const Resources& resources() {
  static const Resources r = load_resources(PipelineConfig::defaults(ETDQ_DATA_DIR));
  return r;
}

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

// Distance-2 scan of the department word list for a handful of typos.
void BM_NeighborsWithin(benchmark::State& state) {
  const auto& lexicon = resources().department_speller->lexicon();
  std::vector<std::u32string> tokens;
  for (const char* t : {"scool", "muisc", "engnering", "biolgoy", "psycholgy", "administraton", "qxzvjw"}) {
    tokens.push_back(text::to_u32(t));
  }
  const auto exec = exec_of(state);
  for (auto _ : state) {
    for (const auto& t : tokens) benchmark::DoNotOptimize(kernels::neighbors_within(lexicon, t, 2, exec));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tokens.size()));
  label(state);
}
BENCHMARK(BM_NeighborsWithin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

// Best cosine row over a dense random matrix.
void BM_ArgmaxCosine(benchmark::State& state) {
  constexpr std::size_t rows = 4000, dim = 4096;
  Rng rng(5);
  std::vector<double> matrix(rows * dim), query(dim);
  for (auto& x : matrix) x = rng.uniform();
  for (auto& x : query) x = rng.uniform();
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::argmax_cosine(matrix, dim, query, exec));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * matrix.size() * sizeof(double)));
  label(state);
}
BENCHMARK(BM_ArgmaxCosine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

// Detection plus correction over the shipped benchmark, records in parallel.
void BM_RunFix(benchmark::State& state) {
  const auto dir = std::filesystem::path(ETDQ_DATA_DIR) / "benchmark";
  const auto records = io::read_records(dir / "records.csv", io::Format::Csv).records;
  const SidecarOracle oracle(dir / "oracle.jsonl");
  const PipelineOptions opt{exec_of(state), 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_fix(records, resources(), oracle, opt));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * records.size()));
  label(state);
}
BENCHMARK(BM_RunFix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
