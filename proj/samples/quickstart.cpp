// Library walk-through: measure heterogeneity, raise it by mixing and
// fuzzing, and watch a tree parser's template accuracy drop.

#include <cstdio>

#include "loghet.hpp"

using namespace loghet;

namespace {

void report(const char* stage, const Dataset& ds) {
  const auto parsed = parse(ds, ParserConfig{});
  const auto m = evaluate(parsed, identity_parser(ds));
  std::printf("%-8s H %.3f  GA %.3f  TA %.3f  ED %.1f\n", stage, h_score(ds).h, m.grouping_accuracy,
              m.template_accuracy, m.mean_edit_distance);
}

}  // namespace

int main() {
  const auto suite = synthetic::benchmark_suite(2000, 1);
  const auto outliers = build_outlier_pool(suite, 0.05);
  const auto variables = build_variable_pool(suite).pool;
  std::printf("pools: %zu outliers, %zu variable values\n", outliers.entries.size(), variables.values.size());

  const Dataset& apache = suite[0];
  report("original", apache);

  const auto mixed = mix(apache, outliers, {1.0, 7, true});
  report("mixed", mixed);

  const auto fuzzed = fuzz(mixed, variables, {7, FuzzMode::labeled});
  report("fuzzed", fuzzed.dataset);

  const auto& r = fuzzed.dataset.records[1];
  std::printf("\nexample line: %s\ntemplate:     %s\n", r.content.c_str(), r.ground_truth->text().c_str());
  return 0;
}
