#pragma once

#include "etdq/detection.hpp"
#include "etdq/ecc.hpp"
#include "etdq/evaluation.hpp"

#include <vector>

namespace etdq {

struct PipelineOptions {
  kernels::Exec exec = kernels::Exec::Serial;  // Parallel: OpenMP over records
  int jobs = 0;                                // thread count for Parallel; 0 = OpenMP default
};

std::vector<RecordDiagnosis> run_detection(const std::vector<EtdRecord>& records, const Resources& r,
                                           const PipelineOptions& opt = {});

struct FixOutcome {
  RecordDiagnosis diagnosis;
  EccResult ecc;
};

// diagnose_record then apply_ecc per record. Results are in input order and
// identical for both execution modes.
std::vector<FixOutcome> run_fix(const std::vector<EtdRecord>& records, const Resources& r,
                                const ExtractionOracle& oracle, const PipelineOptions& opt = {});

}  // namespace etdq
