#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/fuzzing.hpp"
#include "loghet/heterogeneity.hpp"
#include "loghet/metrics.hpp"
#include "loghet/mixing.hpp"
#include "loghet/parsers.hpp"
#include "loghet/pool.hpp"
#include "loghet/random.hpp"

namespace loghet {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::invalid_argument, "sha256 failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

// ---------------------------------------------------------------------------
// Combined dataset

// Uniform per-dataset allocation (remainder to the first datasets), sampled
// without replacement, then shuffled and renumbered. Sources are kept.
inline Dataset build_combined_dataset(std::span<const Dataset> datasets, std::size_t size,
                                      std::uint64_t seed, std::string name = "Combined") {
  if (datasets.empty()) throw Error(ErrorKind::insufficient_data, "no datasets to combine");
  if (size == 0) throw Error(ErrorKind::invalid_argument, "combined size must be positive");
  const std::size_t k = datasets.size();
  Dataset out{std::move(name), {}};
  out.records.reserve(size);
  for (std::size_t d = 0; d < k; ++d) {
    const std::size_t quota = size / k + (d < size % k ? 1 : 0);
    const auto& ds = datasets[d];
    if (quota > ds.size()) {
      throw Error(ErrorKind::allocation, "dataset '" + ds.name + "' has " +
                                             std::to_string(ds.size()) + " records, needs " +
                                             std::to_string(quota));
    }
    std::vector<std::size_t> idx(ds.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto rng = Rng::stream(seed, stream_domain::combine, d);
    // Partial Fisher-Yates: the first `quota` slots are the sample.
    for (std::size_t i = 0; i < quota; ++i) {
      std::swap(idx[i], idx[i + rng.index(idx.size() - i)]);
    }
    for (std::size_t i = 0; i < quota; ++i) out.records.push_back(ds.records[idx[i]]);
  }
  auto rng = Rng::stream(seed, stream_domain::combine, k);
  rng.shuffle(std::span<LogRecord>(out.records));
  renumber(out);
  return out;
}

// ---------------------------------------------------------------------------
// Plans

// Parser output produced elsewhere: one result per plan dataset, in order.
struct ExternalParser {
  std::vector<std::filesystem::path> outputs;
};

struct ParserSpec {
  std::string label;
  std::variant<ParserConfig, ExternalParser> how;
};

struct SynthesisPlan {
  std::optional<double> mix_strength;
  bool exclude_source = true;
  std::optional<FuzzMode> fuzz_mode;
  // When set, mixing ranks by this parser's templates instead of ground
  // truth, and parser-driven fuzzing uses it on the mixed data.
  std::optional<ParserConfig> label_parser;
  std::filesystem::path pool_dir;  // outlier_pool.csv + variable_pool.tsv
};

struct DatasetSpec {
  std::filesystem::path path;
  std::optional<std::string> name;
};

struct ExperimentPlan {
  std::vector<DatasetSpec> datasets;
  std::vector<ParserSpec> parsers;
  std::optional<SynthesisPlan> synthesis;
  std::size_t runs = 10;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  ReferenceStats reference;
};

// Everything a run needs, already in memory.
struct ExperimentInputs {
  struct Parser {
    std::string label;
    std::string config;
    std::optional<ParserConfig> builtin;
    std::vector<ParseResult> external;  // per dataset when !builtin
  };

  std::vector<Dataset> datasets;
  std::vector<Parser> parsers;
  std::optional<SynthesisPlan> synthesis;
  OutlierPool outlier_pool;
  VariablePool variable_pool;
  std::size_t runs = 10;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  ReferenceStats reference;
};

// ---------------------------------------------------------------------------
// Reports

struct RunMetrics {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::optional<MetricReport> metrics;
  std::string error;
  double parse_ms = 0.0;
};

struct ParserOutcome {
  std::string label;
  std::string config;
  std::vector<RunMetrics> runs;
  std::optional<MetricReport> mean;
  std::optional<MetricReport> stddev;
  std::size_t failed_runs = 0;
};

struct DatasetRun {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  ProxyStats stats;
  HeterogeneityScore heterogeneity;
  std::size_t mixed_records = 0;
  std::size_t fuzz_skipped = 0;
  std::string error;
  double synthesis_ms = 0.0;
};

struct DatasetOutcome {
  std::string name;
  std::size_t records = 0;
  std::vector<DatasetRun> runs;
  std::optional<double> h_mean;
  std::vector<ParserOutcome> parsers;
};

struct EvaluationReport {
  Json plan;
  std::vector<DatasetOutcome> datasets;
  std::vector<std::uint64_t> seeds;
  std::string outlier_pool_sha256;
  std::string variable_pool_sha256;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

inline double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline void summarize(ParserOutcome& p) {
  std::vector<double> ga, ta, ed;
  for (const auto& r : p.runs) {
    if (!r.metrics) {
      ++p.failed_runs;
      continue;
    }
    ga.push_back(r.metrics->grouping_accuracy);
    ta.push_back(r.metrics->template_accuracy);
    ed.push_back(r.metrics->mean_edit_distance);
  }
  if (p.failed_runs != 0 || p.runs.empty()) return;
  p.mean = MetricReport{mean_of(ga), mean_of(ta), mean_of(ed)};
  p.stddev = MetricReport{sample_std(ga), sample_std(ta), sample_std(ed)};
}

struct SynthesizedData {
  Dataset data;
  std::size_t mixed = 0;
  std::size_t fuzz_skipped = 0;
};

inline SynthesizedData synthesize(const Dataset& ds, const ExperimentInputs& in,
                                  std::uint64_t seed) {
  SynthesizedData out{ds};
  if (!in.synthesis) return out;
  const auto& syn = *in.synthesis;
  if (syn.mix_strength) {
    MixConfig cfg{*syn.mix_strength, seed, syn.exclude_source};
    if (syn.label_parser) {
      out.data = mix_with_parser_labels(ds, parse(ds, *syn.label_parser), in.outlier_pool, cfg);
    } else {
      out.data = mix(ds, in.outlier_pool, cfg);
    }
    out.mixed = mix_replacement_count(*syn.mix_strength, ds.size());
  }
  if (syn.fuzz_mode) {
    FuzzConfig cfg{seed, *syn.fuzz_mode};
    FuzzResult fuzzed;
    if (*syn.fuzz_mode == FuzzMode::parser_driven) {
      const ParserConfig pc = syn.label_parser.value_or(ParserConfig{});
      const ParseResult parsed = parse(out.data, pc);
      fuzzed = fuzz(out.data, in.variable_pool, cfg, &parsed);
    } else {
      fuzzed = fuzz(out.data, in.variable_pool, cfg);
    }
    out.data = std::move(fuzzed.dataset);
    out.fuzz_skipped = fuzzed.skipped.size();
  }
  return out;
}

inline std::string context(const std::string& dataset, const std::string& parser, std::size_t run,
                           const std::string& what) {
  std::string s = "dataset '" + dataset + "'";
  if (!parser.empty()) s += ", parser '" + parser + "'";
  return s + ", run " + std::to_string(run) + ": " + what;
}

// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace detail

// Repeats synthesis -> parse -> evaluate for every (dataset, run) and
// aggregates per parser. Run r uses seed base_seed + r. Failures are kept in
// the report with their context instead of aborting the experiment.
inline EvaluationReport run_experiment(const ExperimentInputs& in, Json plan_echo = Json::object()) {
  if (in.runs == 0) throw Error(ErrorKind::invalid_argument, "runs must be at least 1");
  for (const auto& p : in.parsers) {
    if (!p.builtin && p.external.size() != in.datasets.size()) {
      throw Error(ErrorKind::shape, "external parser '" + p.label + "' has " +
                                        std::to_string(p.external.size()) +
                                        " outputs for " + std::to_string(in.datasets.size()) +
                                        " datasets");
    }
  }
  EvaluationReport report;
  report.plan = std::move(plan_echo);
  for (std::size_t r = 0; r < in.runs; ++r) report.seeds.push_back(in.base_seed + r);
  if (in.synthesis) {
    report.outlier_pool_sha256 = sha256_hex(format_outlier_pool(in.outlier_pool));
    report.variable_pool_sha256 = sha256_hex(format_variable_pool(in.variable_pool));
  }

  report.datasets.resize(in.datasets.size());
  for (std::size_t d = 0; d < in.datasets.size(); ++d) {
    auto& out = report.datasets[d];
    out.name = in.datasets[d].name;
    out.records = in.datasets[d].size();
    out.runs.resize(in.runs);
    out.parsers.resize(in.parsers.size());
    for (std::size_t p = 0; p < in.parsers.size(); ++p) {
      out.parsers[p].label = in.parsers[p].label;
      out.parsers[p].config = in.parsers[p].config;
      out.parsers[p].runs.resize(in.runs);
    }
  }

  // Each (dataset, run) cell writes only its own slots.
  const std::size_t cells = in.datasets.size() * in.runs;
  detail::parallel_for(cells, in.jobs, [&](std::size_t cell) {
    const std::size_t d = cell / in.runs;
    const std::size_t r = cell % in.runs;
    const std::uint64_t seed = in.base_seed + r;
    const Dataset& source = in.datasets[d];
    auto& out = report.datasets[d];
    auto& drun = out.runs[r];
    drun.run = r;
    drun.seed = seed;
    for (std::size_t p = 0; p < in.parsers.size(); ++p) {
      out.parsers[p].runs[r].run = r;
      out.parsers[p].runs[r].seed = seed;
    }

    std::optional<detail::SynthesizedData> syn;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      syn = detail::synthesize(source, in, seed);
      drun.mixed_records = syn->mixed;
      drun.fuzz_skipped = syn->fuzz_skipped;
      drun.stats = proxy_stats(syn->data);
      drun.heterogeneity = h_score(drun.stats, in.reference);
    } catch (const std::exception& e) {
      drun.error = detail::context(source.name, "", r, e.what());
    }
    drun.synthesis_ms = detail::elapsed_ms(t0);
    if (!syn) {
      for (std::size_t p = 0; p < in.parsers.size(); ++p) out.parsers[p].runs[r].error = drun.error;
      return;
    }

    std::optional<ParseResult> truth;
    std::string truth_error;
    try {
      truth = identity_parser(syn->data);
    } catch (const std::exception& e) {
      truth_error = e.what();
    }
    for (std::size_t p = 0; p < in.parsers.size(); ++p) {
      const auto& parser = in.parsers[p];
      auto& prun = out.parsers[p].runs[r];
      const auto t1 = std::chrono::steady_clock::now();
      try {
        if (!truth) throw Error(ErrorKind::labeling, truth_error);
        ParseResult predicted;
        if (parser.builtin) {
          predicted = parse(syn->data, *parser.builtin);
        } else {
          if (in.synthesis) {
            throw Error(ErrorKind::invalid_argument,
                        "external parser output refers to the unsynthesized dataset");
          }
          predicted = parser.external[d];
        }
        prun.metrics = evaluate(predicted, *truth);
      } catch (const std::exception& e) {
        prun.error = detail::context(source.name, parser.label, r, e.what());
      }
      prun.parse_ms = detail::elapsed_ms(t1);
    }
  });

  for (auto& ds : report.datasets) {
    std::vector<double> hs;
    for (const auto& run : ds.runs) {
      if (run.error.empty()) hs.push_back(run.heterogeneity.h);
    }
    if (hs.size() == ds.runs.size()) ds.h_mean = detail::mean_of(hs);
    for (auto& p : ds.parsers) detail::summarize(p);
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const ProxyStats& s) {
  return Json{{"unique_words", s.unique_words},
              {"unique_chars", s.unique_chars},
              {"unique_line_lengths", s.unique_line_lengths}};
}

inline Json to_json(const HeterogeneityScore& h) {
  return Json{{"h", h.h},
              {"components",
               Json{{"unique_words", h.components[0]},
                    {"unique_chars", h.components[1]},
                    {"unique_line_lengths", h.components[2]}}}};
}

inline Json to_json(const MetricReport& m) {
  return Json{{"grouping_accuracy", m.grouping_accuracy},
              {"template_accuracy", m.template_accuracy},
              {"mean_edit_distance", m.mean_edit_distance}};
}

inline Json to_json(const ReferenceStats& r) {
  return Json{{"unique_words", r.unique_words},
              {"unique_chars", r.unique_chars},
              {"unique_line_lengths", r.unique_line_lengths}};
}

inline Json parser_config_to_json(const ParserConfig& cfg) {
  Json j{{"kind", std::string(to_string(cfg.kind))}};
  if (cfg.kind == ParserKind::tree) {
    j["depth"] = cfg.tree.depth;
    j["st"] = cfg.tree.similarity_threshold;
    j["max_children"] = cfg.tree.max_children;
  } else if (cfg.kind == ParserKind::token_frequency) {
    j["threshold"] = cfg.tokenfreq.threshold;
  }
  if (!cfg.masks.empty()) j["masks"] = cfg.masks;
  return j;
}

// Timings are wall-clock and vary between runs; leave them out when
// comparing reports.
inline Json to_json(const EvaluationReport& report, bool include_timings = true) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["plan"] = report.plan;
  Json datasets = Json::array();
  Json timings = Json::array();
  for (const auto& ds : report.datasets) {
    Json dj;
    dj["name"] = ds.name;
    dj["records"] = ds.records;
    Json runs = Json::array();
    Json dt = Json::array();
    for (const auto& run : ds.runs) {
      Json rj{{"run", run.run}, {"seed", run.seed}};
      if (!run.error.empty()) {
        rj["error"] = run.error;
      } else {
        rj["stats"] = to_json(run.stats);
        rj["heterogeneity"] = to_json(run.heterogeneity);
        rj["mixed_records"] = run.mixed_records;
        rj["fuzz_skipped"] = run.fuzz_skipped;
      }
      runs.push_back(std::move(rj));
      dt.push_back(Json{{"run", run.run}, {"synthesis_ms", run.synthesis_ms}});
    }
    dj["runs"] = std::move(runs);
    dj["h_mean"] = ds.h_mean ? Json(*ds.h_mean) : Json(nullptr);
    Json parsers = Json::array();
    Json pt = Json::array();
    for (const auto& p : ds.parsers) {
      Json pj{{"label", p.label}, {"config", p.config}};
      Json pruns = Json::array();
      Json ptimes = Json::array();
      for (const auto& r : p.runs) {
        Json rj{{"run", r.run}, {"seed", r.seed}};
        if (r.metrics) {
          rj.update(to_json(*r.metrics));
        } else {
          rj["error"] = r.error;
        }
        pruns.push_back(std::move(rj));
        ptimes.push_back(r.parse_ms);
      }
      pj["runs"] = std::move(pruns);
      pj["mean"] = p.mean ? to_json(*p.mean) : Json(nullptr);
      pj["std"] = p.stddev ? to_json(*p.stddev) : Json(nullptr);
      pj["failed_runs"] = p.failed_runs;
      parsers.push_back(std::move(pj));
      pt.push_back(Json{{"label", p.label}, {"parse_ms", std::move(ptimes)}});
    }
    dj["parsers"] = std::move(parsers);
    datasets.push_back(std::move(dj));
    timings.push_back(Json{{"dataset", ds.name}, {"runs", std::move(dt)}, {"parsers", std::move(pt)}});
  }
  j["datasets"] = std::move(datasets);
  j["provenance"] = Json{{"seeds", report.seeds},
                         {"outlier_pool_sha256", report.outlier_pool_sha256},
                         {"variable_pool_sha256", report.variable_pool_sha256}};
  if (include_timings) j["timings"] = std::move(timings);
  return j;
}

// ---------------------------------------------------------------------------
// Plan files

inline ParserConfig parser_config_from_json(const Json& j) {
  ParserConfig cfg;
  cfg.kind = parser_kind_from_string(j.value("kind", std::string("tree")));
  cfg.tree.depth = j.value("depth", cfg.tree.depth);
  cfg.tree.similarity_threshold = j.value("st", cfg.tree.similarity_threshold);
  cfg.tree.max_children = j.value("max_children", cfg.tree.max_children);
  cfg.tokenfreq.threshold = j.value("threshold", cfg.tokenfreq.threshold);
  if (j.contains("masks")) cfg.masks = j.at("masks").get<std::vector<std::string>>();
  cfg.validate();
  return cfg;
}

inline FuzzMode fuzz_mode_from_string(std::string_view s) {
  if (s == "labeled") return FuzzMode::labeled;
  if (s == "parsed" || s == "parser-driven") return FuzzMode::parser_driven;
  throw Error(ErrorKind::invalid_argument, "unknown fuzz mode '" + std::string(s) + "'");
}

// Relative paths in the plan resolve against `base`.
inline ExperimentPlan plan_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
  };
  try {
    ExperimentPlan plan;
    for (const auto& d : j.at("datasets")) {
      DatasetSpec spec;
      if (d.is_string()) {
        spec.path = resolve(d.get<std::string>());
      } else {
        spec.path = resolve(d.at("path").get<std::string>());
        if (d.contains("name")) spec.name = d.at("name").get<std::string>();
      }
      plan.datasets.push_back(std::move(spec));
    }
    for (const auto& p : j.at("parsers")) {
      ParserSpec spec;
      const std::string kind = p.value("kind", std::string("tree"));
      if (kind == "external") {
        ExternalParser ext;
        for (const auto& o : p.at("outputs")) ext.outputs.push_back(resolve(o.get<std::string>()));
        spec.how = std::move(ext);
        spec.label = p.value("label", std::string("external"));
      } else {
        auto cfg = parser_config_from_json(p);
        spec.label = p.value("label", std::string(to_string(cfg.kind)));
        spec.how = std::move(cfg);
      }
      plan.parsers.push_back(std::move(spec));
    }
    if (j.contains("synthesis") && !j.at("synthesis").is_null()) {
      const auto& s = j.at("synthesis");
      SynthesisPlan syn;
      if (s.contains("mix")) {
        syn.mix_strength = s.at("mix").at("strength").get<double>();
        syn.exclude_source = s.at("mix").value("exclude_source", true);
      }
      if (s.contains("fuzz")) {
        syn.fuzz_mode = fuzz_mode_from_string(s.at("fuzz").value("mode", std::string("labeled")));
      }
      if (s.contains("label_parser")) syn.label_parser = parser_config_from_json(s.at("label_parser"));
      syn.pool_dir = resolve(s.at("pool").get<std::string>());
      plan.synthesis = std::move(syn);
    }
    plan.runs = j.value("runs", plan.runs);
    plan.base_seed = j.value("base_seed", plan.base_seed);
    plan.jobs = j.value("jobs", plan.jobs);
    if (j.contains("reference")) {
      const auto& r = j.at("reference");
      plan.reference.unique_words = r.value("unique_words", plan.reference.unique_words);
      plan.reference.unique_chars = r.value("unique_chars", plan.reference.unique_chars);
      plan.reference.unique_line_lengths =
          r.value("unique_line_lengths", plan.reference.unique_line_lengths);
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::format, std::string("invalid experiment plan: ") + e.what());
  }
}

// Plan echo for the report; paths as given, no worker count (it must not
// change the output).
inline Json plan_to_json(const ExperimentPlan& plan) {
  Json j;
  Json ds = Json::array();
  for (const auto& d : plan.datasets) {
    Json dj{{"path", d.path.generic_string()}};
    if (d.name) dj["name"] = *d.name;
    ds.push_back(std::move(dj));
  }
  j["datasets"] = std::move(ds);
  Json ps = Json::array();
  for (const auto& p : plan.parsers) {
    if (const auto* cfg = std::get_if<ParserConfig>(&p.how)) {
      Json pj = parser_config_to_json(*cfg);
      pj["label"] = p.label;
      ps.push_back(std::move(pj));
    } else {
      Json outputs = Json::array();
      for (const auto& o : std::get<ExternalParser>(p.how).outputs) outputs.push_back(o.generic_string());
      ps.push_back(Json{{"kind", "external"}, {"label", p.label}, {"outputs", std::move(outputs)}});
    }
  }
  j["parsers"] = std::move(ps);
  if (plan.synthesis) {
    const auto& s = *plan.synthesis;
    Json sj;
    if (s.mix_strength) sj["mix"] = Json{{"strength", *s.mix_strength}, {"exclude_source", s.exclude_source}};
    if (s.fuzz_mode) {
      sj["fuzz"] = Json{{"mode", *s.fuzz_mode == FuzzMode::labeled ? "labeled" : "parsed"}};
    }
    if (s.label_parser) sj["label_parser"] = parser_config_to_json(*s.label_parser);
    sj["pool"] = s.pool_dir.generic_string();
    j["synthesis"] = std::move(sj);
  } else {
    j["synthesis"] = nullptr;
  }
  j["runs"] = plan.runs;
  j["base_seed"] = plan.base_seed;
  j["reference"] = to_json(plan.reference);
  return j;
}

inline ExperimentInputs load_inputs(const ExperimentPlan& plan) {
  ExperimentInputs in;
  for (const auto& d : plan.datasets) in.datasets.push_back(load_dataset(d.path, d.name));
  for (const auto& p : plan.parsers) {
    ExperimentInputs::Parser parser;
    parser.label = p.label;
    if (const auto* cfg = std::get_if<ParserConfig>(&p.how)) {
      parser.builtin = *cfg;
      parser.config = describe(*cfg);
    } else {
      const auto& ext = std::get<ExternalParser>(p.how);
      parser.config = "external";
      for (const auto& o : ext.outputs) parser.external.push_back(load_parse_result(o));
    }
    in.parsers.push_back(std::move(parser));
  }
  if (plan.synthesis) {
    in.synthesis = plan.synthesis;
    if (plan.synthesis->mix_strength) {
      in.outlier_pool = load_outlier_pool(outlier_pool_path(plan.synthesis->pool_dir));
    }
    if (plan.synthesis->fuzz_mode) {
      in.variable_pool = load_variable_pool(variable_pool_path(plan.synthesis->pool_dir));
    }
  }
  in.runs = plan.runs;
  in.base_seed = plan.base_seed;
  in.jobs = plan.jobs;
  in.reference = plan.reference;
  return in;
}

inline EvaluationReport run_experiment(const ExperimentPlan& plan) {
  return run_experiment(load_inputs(plan), plan_to_json(plan));
}

}  // namespace loghet
