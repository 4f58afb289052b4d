// Regenerates the title corpus, IDF table and classifier under data/.
#include "etdq/records_io.hpp"
#include "etdq/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>

int main(int argc, char** argv) {
  CLI::App app{"Build the synthetic title corpus and train the title classifier"};
  std::filesystem::path out_dir = "data";
  std::uint64_t seed = 7;
  std::size_t valid = 2400, junk = 800;
  app.add_option("--output", out_dir, "directory for title_corpus.tsv, title_idf.tsv, title_model.json");
  app.add_option("--seed", seed);
  app.add_option("--valid", valid, "valid titles to generate");
  app.add_option("--junk", junk, "junk titles to generate");
  CLI11_PARSE(app, argc, argv);

  using namespace etdq;
  const auto corpus = synth::title_corpus(seed, valid, junk);
  const auto [train, held] = synth::split_corpus(corpus, 0.2, seed);
  const auto check = synth::score_titles(held, synth::fit_titles(train));
  std::printf("held-out: precision %.3f recall %.3f f1 %.3f (n=%zu)\n", check.precision(), check.recall(), check.f1(),
              held.size());

  const auto fit = synth::fit_titles(corpus);
  std::filesystem::create_directories(out_dir);
  io::write_file_atomic(out_dir / "title_corpus.tsv", synth::format_title_corpus(corpus));
  fit.idf.save(out_dir / "title_idf.tsv");
  fit.model.save(out_dir / "title_model.json");
  return 0;
}
