#include "etdq/pipeline.hpp"

#include <omp.h>

namespace etdq {

namespace {

template <typename F>
void for_each_record(std::size_t n, const PipelineOptions& opt, F&& body) {
  if (opt.exec == kernels::Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace

std::vector<RecordDiagnosis> run_detection(const std::vector<EtdRecord>& records, const Resources& r,
                                           const PipelineOptions& opt) {
  std::vector<RecordDiagnosis> out(records.size());
  for_each_record(records.size(), opt, [&](std::size_t i) { out[i] = diagnose_record(records[i], r); });
  return out;
}

std::vector<FixOutcome> run_fix(const std::vector<EtdRecord>& records, const Resources& r,
                                const ExtractionOracle& oracle, const PipelineOptions& opt) {
  std::vector<FixOutcome> out(records.size());
  for_each_record(records.size(), opt, [&](std::size_t i) {
    auto diag = diagnose_record(records[i], r);
    auto ecc = apply_ecc(records[i], diag.diagnoses, r, oracle);
    out[i] = {std::move(diag), std::move(ecc)};
  });
  return out;
}

}  // namespace etdq
