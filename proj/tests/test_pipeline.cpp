#include "etdq/pipeline.hpp"
#include "etdq/records_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace etdq;

namespace {

const Resources& res() { return etdq::testing::shipped(); }

std::vector<EtdRecord> benchmark_records() {
  return io::read_records(etdq::testing::benchmark_dir() / "records.csv", io::Format::Csv).records;
}

bool same(const RecordDiagnosis& a, const RecordDiagnosis& b) {
  return a.diagnoses == b.diagnoses && a.skipped == b.skipped;
}

bool same(const FixOutcome& a, const FixOutcome& b) {
  return same(a.diagnosis, b.diagnosis) && a.ecc.record == b.ecc.record && a.ecc.actions == b.ecc.actions &&
         a.ecc.log.unresolved == b.ecc.log.unresolved && a.ecc.log.notes == b.ecc.log.notes;
}

}  // namespace

TEST(Pipeline, DetectionSerialEqualsParallel) {
  const auto records = benchmark_records();
  const auto serial = run_detection(records, res());
  ASSERT_EQ(serial.size(), records.size());
  for (const int jobs : {1, 4}) {
    const auto parallel = run_detection(records, res(), {kernels::Exec::Parallel, jobs});
    ASSERT_EQ(parallel.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_TRUE(same(serial[i], parallel[i])) << records[i].id();
  }
}

TEST(Pipeline, FixSerialEqualsParallel) {
  const auto records = benchmark_records();
  const SidecarOracle oracle(etdq::testing::benchmark_dir() / "oracle.jsonl");
  const auto serial = run_fix(records, res(), oracle);
  ASSERT_EQ(serial.size(), records.size());
  for (const int jobs : {1, 4}) {
    const auto parallel = run_fix(records, res(), oracle, {kernels::Exec::Parallel, jobs});
    ASSERT_EQ(parallel.size(), serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      EXPECT_EQ(parallel[i].ecc.record.id(), records[i].id());
      EXPECT_TRUE(same(serial[i], parallel[i])) << records[i].id();
    }
  }
}

TEST(Pipeline, FixMatchesPerRecordCalls) {
  const auto records = benchmark_records();
  const SidecarOracle oracle(etdq::testing::benchmark_dir() / "oracle.jsonl");
  const auto batch = run_fix(records, res(), oracle, {kernels::Exec::Parallel, 4});
  for (std::size_t i = 0; i < records.size(); i += 37) {
    const auto d = diagnose_record(records[i], res());
    const auto e = apply_ecc(records[i], d.diagnoses, res(), oracle);
    EXPECT_TRUE(same(batch[i], FixOutcome{d, e}));
  }
}

TEST(Pipeline, EmptyInput) {
  EXPECT_TRUE(run_detection({}, res(), {kernels::Exec::Parallel, 4}).empty());
  EXPECT_TRUE(run_fix({}, res(), EmptyOracle{}).empty());
}
