// Command-line front end: dataset statistics, pool construction, mixing,
// fuzzing, parsing and repeated-run evaluation.
//
// Exit codes: 0 success, 1 usage error, 2 data or format error, 3 internal.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loghet.hpp"

namespace fs = std::filesystem;
using namespace loghet;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  write_file(g.out, text);
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::uint64_t seed_or(const Globals& g, std::uint64_t fallback) { return g.seed.value_or(fallback); }

std::vector<Dataset> load_all(const std::vector<std::string>& paths) {
  std::vector<Dataset> out;
  for (const auto& p : paths) out.push_back(load_dataset(p));
  return out;
}

std::string fixed(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Parser flags shared by `parse` and `benchmark`.
struct ParserFlags {
  std::string kind = "tree";
  ParserConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--parser", kind, "tree (alias drain), tokenfreq, identity")->capture_default_str();
    cmd->add_option("--depth", cfg.tree.depth, "Tree depth including root and length layers")
        ->capture_default_str();
    cmd->add_option("--st", cfg.tree.similarity_threshold, "Tree similarity threshold")->capture_default_str();
    cmd->add_option("--max-children", cfg.tree.max_children, "Tree fan-out limit")->capture_default_str();
    cmd->add_option("--threshold", cfg.tokenfreq.threshold, "Token-frequency ratio threshold")
        ->capture_default_str();
    cmd->add_option("--mask", cfg.masks, "Regex; matching tokens become wildcards (repeatable)");
  }

  ParserConfig resolve() {
    cfg.kind = parser_kind_from_string(kind);
    cfg.validate();
    return cfg;
  }
};

// ---------------------------------------------------------------------------

struct StatsCmd {
  std::vector<std::string> inputs;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("stats", "Unique words, characters and line lengths of datasets");
    cmd->add_option("inputs", inputs, "Dataset files (.csv structured, otherwise raw)")->required();
  }

  void run(const Globals& g) {
    Json arr = Json::array();
    std::string text;
    for (const auto& ds : load_all(inputs)) {
      const auto s = proxy_stats(ds);
      arr.push_back(Json{{"name", ds.name}, {"records", ds.size()}, {"stats", to_json(s)}});
      text += ds.name + "\t" + std::to_string(ds.size()) + " lines\twords " + std::to_string(s.unique_words) +
              "\tchars " + std::to_string(s.unique_chars) + "\tlengths " +
              std::to_string(s.unique_line_lengths) + "\n";
    }
    if (g.format == "text") {
      emit(g, text);
    } else {
      emit_json(g, inputs.size() == 1 ? arr[0] : arr);
    }
  }
};

struct HeterogeneityCmd {
  std::vector<std::string> inputs;
  ReferenceStats ref;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("heterogeneity", "Heterogeneity score H of datasets");
    cmd->add_option("inputs", inputs, "Dataset files")->required();
    cmd->add_option("--ref-nuw", ref.unique_words, "Reference unique words")->capture_default_str();
    cmd->add_option("--ref-nuc", ref.unique_chars, "Reference unique characters")->capture_default_str();
    cmd->add_option("--ref-nuldl", ref.unique_line_lengths, "Reference unique line lengths")
        ->capture_default_str();
  }

  void run(const Globals& g) {
    Json arr = Json::array();
    std::string text;
    for (const auto& ds : load_all(inputs)) {
      const auto s = proxy_stats(ds);
      const auto h = h_score(s, ref);
      Json j{{"name", ds.name}};
      j.update(to_json(h));
      j["stats"] = to_json(s);
      arr.push_back(std::move(j));
      text += ds.name + "\tH " + fixed(h.h) + "\n";
    }
    if (g.format == "text") {
      emit(g, text);
    } else {
      emit_json(g, inputs.size() == 1 ? arr[0] : arr);
    }
  }
};

struct PoolBuildCmd {
  std::vector<std::string> inputs;
  double fraction = 0.05;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    auto* pool = app.add_subcommand("pool", "Outlier and variable pools");
    pool->require_subcommand(1);
    cmd = pool->add_subcommand("build", "Build both pools from labeled datasets into --out <dir>");
    cmd->add_option("inputs", inputs, "Labeled dataset files")->required();
    cmd->add_option("--outlier-fraction", fraction, "Rarest share of each dataset kept as outliers")
        ->capture_default_str();
  }

  void run(const Globals& g) {
    if (g.out.empty()) throw CLI::RequiredError("--out <dir>");
    const auto datasets = load_all(inputs);
    const auto outliers = build_outlier_pool(datasets, fraction);
    const auto variables = build_variable_pool(datasets);
    const fs::path dir = g.out;
    fs::create_directories(dir);
    write_outlier_pool(outliers, dir / kOutlierPoolFile);
    write_variable_pool(variables.pool, dir / kVariablePoolFile);
    const Json summary{{"outlier_entries", outliers.entries.size()},
                       {"variable_values", variables.pool.values.size()},
                       {"skipped_records", variables.skipped.size()},
                       {"directory", dir.string()}};
    std::cout << (g.format == "text" ? std::to_string(outliers.entries.size()) + " outliers, " +
                                           std::to_string(variables.pool.values.size()) + " values\n"
                                     : summary.dump(2) + "\n");
  }
};

struct MixCmd {
  double strength = 0.0;
  std::string pool;
  std::string input;
  std::string parsed;
  bool allow_own = false;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("mix", "Replace frequent-template lines with foreign outliers");
    cmd->add_option("--strength", strength, "0..1, maps onto 0..25% of the lines")->required();
    cmd->add_option("--pool", pool, "Pool directory or outlier pool file")->required();
    cmd->add_option("--in", input, "Input dataset")->required();
    cmd->add_option("--parsed", parsed, "Parser output to rank templates of unlabeled input");
    cmd->add_flag("--allow-own-source", allow_own, "Allow outliers from the input's own dataset");
  }

  void run(const Globals& g) {
    const auto ds = load_dataset(input);
    const auto outliers = load_outlier_pool(outlier_pool_path(pool));
    const MixConfig cfg{strength, seed_or(g, 0), !allow_own};
    const auto out = parsed.empty() ? mix(ds, outliers, cfg)
                                    : mix_with_parser_labels(ds, load_parse_result(parsed), outliers, cfg);
    emit(g, format_structured(out));
  }
};

struct FuzzCmd {
  std::string mode = "labeled";
  std::string vpool;
  std::string input;
  std::string parsed;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("fuzz", "Resample every variable from the variable pool");
    cmd->add_option("--mode", mode, "labeled or parsed")
        ->check(CLI::IsMember({"labeled", "parsed"}))
        ->capture_default_str();
    cmd->add_option("--vpool", vpool, "Pool directory or variable pool file")->required();
    cmd->add_option("--in", input, "Input dataset")->required();
    cmd->add_option("--parsed", parsed, "Parser output for --mode parsed (default: tree parser)");
  }

  void run(const Globals& g) {
    const auto ds = load_dataset(input);
    const auto pool = load_variable_pool(variable_pool_path(vpool));
    const FuzzConfig cfg{seed_or(g, 0), fuzz_mode_from_string(mode)};
    FuzzResult out;
    if (cfg.mode == FuzzMode::parser_driven) {
      const auto labels = parsed.empty() ? parse(ds, ParserConfig{}) : load_parse_result(parsed);
      out = fuzz(ds, pool, cfg, &labels);
    } else {
      out = fuzz(ds, pool, cfg);
    }
    if (!out.skipped.empty()) {
      std::cerr << out.skipped.size() << " lines could not be aligned and were kept as is\n";
    }
    emit(g, format_structured(out.dataset));
  }
};

struct ParseCmd {
  ParserFlags flags;
  std::string input;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("parse", "Run a built-in parser, writing LineId,EventTemplate");
    flags.attach(cmd);
    cmd->add_option("--in", input, "Input dataset")->required();
  }

  void run(const Globals& g) { emit(g, format_parse_result(parse(load_dataset(input), flags.resolve()))); }
};

struct CombineCmd {
  std::vector<std::string> inputs;
  std::size_t size = 2000;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("combine", "Uniform sample across datasets");
    cmd->add_option("inputs", inputs, "Dataset files")->required();
    cmd->add_option("--size", size, "Lines in the combined dataset")->capture_default_str();
  }

  void run(const Globals& g) {
    const auto datasets = load_all(inputs);
    emit(g, format_structured(build_combined_dataset(datasets, size, seed_or(g, 0)), SourceColumn::always));
  }
};

std::string metrics_text(const ParserOutcome& p) {
  if (!p.mean) return "failed (" + std::to_string(p.failed_runs) + " runs)";
  return "GA " + fixed(p.mean->grouping_accuracy) + " TA " + fixed(p.mean->template_accuracy) + " +- " +
         fixed(p.stddev->template_accuracy) + " ED " + fixed(p.mean->mean_edit_distance, 1);
}

std::string report_text(const EvaluationReport& r) {
  std::string text;
  for (const auto& d : r.datasets) {
    text += d.name + (d.h_mean ? "\tH " + fixed(*d.h_mean) : std::string()) + "\n";
    for (const auto& p : d.parsers) text += "  " + p.label + "\t" + metrics_text(p) + "\n";
  }
  return text;
}

struct EvaluateCmd {
  std::string plan_path;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> jobs;
  bool no_timings = false;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Run an experiment plan (JSON) and write the report");
    cmd->add_option("plan", plan_path, "Plan file; relative paths resolve against its directory")->required();
    cmd->add_option("--runs", runs, "Override the plan's run count");
    cmd->add_option("--jobs", jobs, "Worker threads");
    cmd->add_flag("--no-timings", no_timings, "Leave wall-clock timings out of the report");
  }

  void run(const Globals& g) {
    const fs::path path = plan_path;
    Json j;
    try {
      j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::format, plan_path + ": " + e.what());
    }
    auto plan = plan_from_json(j, path.parent_path());
    if (runs) plan.runs = *runs;
    if (jobs) plan.jobs = *jobs;
    if (g.seed) plan.base_seed = *g.seed;
    const auto report = run_experiment(plan);
    if (g.format == "text") {
      emit(g, report_text(report));
    } else {
      emit_json(g, to_json(report, !no_timings));
    }
  }
};

// Original, mixed and mixed+fuzzed accuracy of one parser over a suite of
// labeled datasets, with pools built from the same suite unless given.
struct BenchmarkCmd {
  std::string data;
  std::string pool;
  std::vector<std::string> only;
  std::size_t lines = 2000;
  std::size_t runs = 10;
  std::size_t jobs = 1;
  double strength = 1.0;
  double fraction = 0.05;
  ParserFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("benchmark", "Degradation of a parser under mixing and fuzzing");
    cmd->add_option("--data", data, "Directory searched for *_structured.csv (default: built-in synthetic suite)");
    cmd->add_option("--pool", pool, "Pool directory (default: built from the loaded datasets)");
    cmd->add_option("--dataset", only, "Restrict evaluation to these dataset names (repeatable)");
    cmd->add_option("--lines", lines, "Lines per synthetic dataset")->capture_default_str();
    cmd->add_option("--runs", runs, "Runs per stage")->capture_default_str();
    cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--strength", strength, "Mixing strength")->capture_default_str();
    cmd->add_option("--outlier-fraction", fraction, "Outlier fraction when building pools")
        ->capture_default_str();
    flags.attach(cmd);
  }

  std::vector<Dataset> load_suite(std::uint64_t seed) const {
    if (data.empty()) return synthetic::benchmark_suite(lines, seed);
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(data)) {
      const auto name = e.path().filename().string();
      if (e.is_regular_file() && name.ends_with("_structured.csv")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorKind::io, data + ": no *_structured.csv files found");
    std::vector<Dataset> out;
    for (const auto& f : files) out.push_back(load_structured(f));
    return out;
  }

  void run(const Globals& g) {
    const std::uint64_t seed = seed_or(g, 1);
    const auto suite = load_suite(seed);
    ExperimentInputs base;
    if (pool.empty()) {
      base.outlier_pool = build_outlier_pool(suite, fraction);
      base.variable_pool = build_variable_pool(suite).pool;
    } else {
      base.outlier_pool = load_outlier_pool(outlier_pool_path(pool));
      base.variable_pool = load_variable_pool(variable_pool_path(pool));
    }
    const auto cfg = flags.resolve();
    base.parsers = {{flags.kind, describe(cfg), cfg, {}}};
    base.runs = runs;
    base.jobs = jobs;
    base.base_seed = seed;
    for (const auto& ds : suite) {
      if (only.empty() || std::find(only.begin(), only.end(), ds.name) != only.end()) base.datasets.push_back(ds);
    }
    if (base.datasets.empty()) throw Error(ErrorKind::invalid_argument, "no dataset matches --dataset");

    struct Stage {
      const char* name;
      std::optional<SynthesisPlan> synthesis;
    };
    SynthesisPlan mixed;
    mixed.mix_strength = strength;
    SynthesisPlan fuzzed = mixed;
    fuzzed.fuzz_mode = FuzzMode::labeled;
    const std::vector<Stage> stages = {{"original", std::nullopt}, {"mixed", mixed}, {"fuzzed", fuzzed}};

    std::vector<EvaluationReport> reports;
    for (const auto& stage : stages) {
      auto in = base;
      in.synthesis = stage.synthesis;
      reports.push_back(run_experiment(in));
    }

    Json out{{"schema_version", kReportSchemaVersion},
             {"data", data.empty() ? "synthetic" : data},
             {"seed", seed},
             {"runs", runs},
             {"mix_strength", strength},
             {"parser", parser_config_to_json(cfg)},
             {"outlier_pool_sha256", reports[1].outlier_pool_sha256},
             {"variable_pool_sha256", reports[2].variable_pool_sha256}};
    Json rows = Json::array();
    std::string text;
    for (std::size_t d = 0; d < base.datasets.size(); ++d) {
      Json row{{"name", base.datasets[d].name}};
      text += base.datasets[d].name + "\n";
      for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto& outcome = reports[s].datasets[d];
        const auto& p = outcome.parsers[0];
        Json cell{{"h_mean", outcome.h_mean ? Json(*outcome.h_mean) : Json()}, {"failed_runs", p.failed_runs}};
        if (p.mean) {
          cell["mean"] = to_json(*p.mean);
          cell["std"] = to_json(*p.stddev);
        }
        row[stages[s].name] = std::move(cell);
        text += std::string("  ") + stages[s].name + "\tH " + (outcome.h_mean ? fixed(*outcome.h_mean) : "-") +
                "\t" + metrics_text(p) + "\n";
      }
      rows.push_back(std::move(row));
    }
    out["datasets"] = std::move(rows);
    if (g.format == "text") {
      emit(g, text);
    } else {
      emit_json(g, out);
    }
  }
};

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::invalid_argument ? kUsage : kData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log dataset heterogeneity, synthesis and parser evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file (directory for pool build); stdout when omitted");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  StatsCmd stats;
  HeterogeneityCmd het;
  PoolBuildCmd pool;
  MixCmd mixc;
  FuzzCmd fuzzc;
  ParseCmd parsec;
  CombineCmd combine;
  EvaluateCmd evaluatec;
  BenchmarkCmd bench;
  stats.attach(app);
  het.attach(app);
  pool.attach(app);
  mixc.attach(app);
  fuzzc.attach(app);
  parsec.attach(app);
  combine.attach(app);
  evaluatec.attach(app);
  bench.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "stats") stats.run(g);
    else if (name == "heterogeneity") het.run(g);
    else if (name == "pool") pool.run(g);
    else if (name == "mix") mixc.run(g);
    else if (name == "fuzz") fuzzc.run(g);
    else if (name == "parse") parsec.run(g);
    else if (name == "combine") combine.run(g);
    else if (name == "evaluate") evaluatec.run(g);
    else if (name == "benchmark") bench.run(g);
    return kOk;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << " is required\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    std::cerr << "error (format): " << e.what() << "\n";
    return kData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
