#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strata/config.hpp"
#include "strata/errors.hpp"
#include "strata/export.hpp"
#include "strata/pipeline.hpp"

namespace {

int run(const strata::PipelineConfig& cfg, bool report_stdout) {
  const strata::RunResult result = strata::run_pipeline(cfg);
  if (report_stdout) std::cout << strata::render_report(result.report);
  return static_cast<int>(result.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratanet: build a temporal multilayer word co-occurrence network "
               "from a timestamped corpus"};
  std::string config_path;
  std::string output_dir;
  std::string format_list;
  std::size_t top_k = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool report_stdout = false;

  app.add_option("--config", config_path, "Pipeline config file (JSON)")->required();
  auto* output_opt =
      app.add_option("--output-dir", output_dir, "Override export.output_dir");
  auto* topk_opt = app.add_option("--top-k", top_k, "Override top_k (words kept per layer)");
  auto* seed_opt = app.add_option("--seed", seed, "Override community.seed");
  auto* threads_opt =
      app.add_option("--threads", threads, "Worker thread cap (0 = one per hardware thread)");
  auto* format_opt = app.add_option(
      "--format", format_list, "Comma-separated export formats (gexf, graphml, csv)");
  app.add_flag("--report-stdout", report_stdout, "Also print the run report to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : static_cast<int>(strata::RunStatus::config_invalid);
  }

  strata::PipelineConfig cfg;
  try {
    cfg = strata::load_config(config_path);
  } catch (const strata::ConfigError& e) {
    std::cerr << "stratanet: " << e.what() << "\n";
    return static_cast<int>(strata::RunStatus::config_invalid);
  }

  // Flag overrides beat config-file values. --output-dir is anchored to the
  // working directory, unlike in-file paths which resolve against the config.
  if (output_opt->count() > 0)
    cfg.exporter.output_dir = std::filesystem::absolute(output_dir);
  if (topk_opt->count() > 0) cfg.top_k = top_k;
  if (seed_opt->count() > 0) cfg.community.seed = seed;
  if (threads_opt->count() > 0) cfg.threads = threads;
  if (format_opt->count() > 0) {
    cfg.exporter.formats.clear();
    std::string_view rest = format_list;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view name = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (name.empty()) continue;
      const auto format = strata::export_format_from_string(name);
      if (!format) {
        std::cerr << "stratanet: --format: unknown format \"" << name
                  << "\" (expected gexf, graphml, or csv)\n";
        return static_cast<int>(strata::RunStatus::config_invalid);
      }
      cfg.exporter.formats.push_back(*format);
    }
  }

  try {
    return run(cfg, report_stdout);
  } catch (const std::exception& e) {
    std::cerr << "stratanet: fatal: " << e.what() << "\n";
    return static_cast<int>(strata::RunStatus::fatal);
  }
}
