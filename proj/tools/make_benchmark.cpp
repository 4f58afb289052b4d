// Writes the seeded benchmark: noisy records, clean records, gold labels and
// the two oracle sidecars.
#include "etdq/config.hpp"
#include "etdq/errors.hpp"
#include "etdq/evaluation.hpp"
#include "etdq/records_io.hpp"
#include "etdq/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>

int main(int argc, char** argv) {
  CLI::App app{"Generate the shipped ETD quality benchmark"};
  std::filesystem::path data_dir = ETDQ_DATA_DIR;
  std::filesystem::path out_dir = std::filesystem::path(ETDQ_DATA_DIR) / "benchmark";
  etdq::synth::BenchmarkSpec spec;
  app.add_option("--data", data_dir, "directory holding the dictionaries");
  app.add_option("--output", out_dir);
  app.add_option("--seed", spec.seed);
  CLI11_PARSE(app, argc, argv);

  using namespace etdq;
  try {
    const auto resources = load_resources(PipelineConfig::defaults(data_dir));
    const auto b = synth::build_benchmark(spec, resources);
    std::filesystem::create_directories(out_dir);
    io::write_file_atomic(out_dir / "records.csv", io::format_records(b.records, io::Format::Csv));
    io::write_file_atomic(out_dir / "clean.csv", io::format_records(b.clean, io::Format::Csv));
    io::write_file_atomic(out_dir / "gold.csv", format_gold(b.gold));
    io::write_file_atomic(out_dir / "oracle.jsonl", synth::format_oracle(b.oracle));
    io::write_file_atomic(out_dir / "oracle_partial.jsonl", synth::format_oracle(b.oracle_partial));
    io::write_file_atomic(out_dir / "manifest.json", b.manifest_json());
    std::printf("wrote %zu records to %s\n", b.records.size(), out_dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make_benchmark: %s\n", e.what());
    return 2;
  }
  return 0;
}
