#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "benchaudit/dataset.hpp"
#include "benchaudit/gateway.hpp"
#include "benchaudit/rational.hpp"

namespace benchaudit {

// Per-instance verdicts on the original and perturbed form.
struct EvalRecord {
  std::string instance_id;
  Verdict before;
  Verdict after;
};

enum class Degree { none, minor, partial, severe };

std::string degree_name(Degree d);
Degree degree_from_name(const std::string& name);

// Table coloring used in report output: minor=green, partial=yellow,
// severe=red, none uncolored.
std::string degree_color(Degree d);

// Thresholds are task-specific decimals; the Rational overload is the
// report pipeline's route, and the double overload serves values that
// arrive as printed decimals.
Degree classify_degree(const Rational& delta, TaskKind kind);
Degree classify_degree(double delta, TaskKind kind);

// (CR, PCR) as exact percentages. Throws on empty input.
std::pair<Rational, Rational> correct_rates(const std::vector<EvalRecord>& records);

inline Rational delta(const Rational& cr, const Rational& pcr) { return pcr - cr; }

// (X, Phi): count and rate of correct-before but not-correct-after flips.
std::pair<std::int64_t, Rational> instance_leakage(const std::vector<EvalRecord>& records);

struct RunManifest {
  std::string run_id;
  std::string model_id;
  std::string template_id;
  std::uint64_t sample_seed = 0;
  std::uint64_t shuffle_seed = 0;
  std::uint64_t mask_seed = 0;
  std::string pivot_language;  // caption runs only
  std::string translator_id;   // caption runs only
  int concurrency = 1;
  std::string timestamp;
  std::string tool_version;
  // "" when the decode check did not run, else consistent|inconsistent.
  std::string decode_check;
};

struct VerdictBreakdown {
  std::int64_t abstain_before = 0;
  std::int64_t abstain_after = 0;
  std::int64_t unparseable_before = 0;
  std::int64_t unparseable_after = 0;
};

struct ContaminationReport {
  DatasetManifest dataset;
  std::int64_t n_evaluated = 0;
  std::int64_t correct_before = 0;
  std::int64_t correct_after = 0;
  std::int64_t x_count = 0;
  VerdictBreakdown breakdown;
  Rational cr{0, 1};
  Rational pcr{0, 1};
  Rational delta{0, 1};
  Rational phi{0, 1};
  Degree degree = Degree::none;
  std::map<std::string, std::int64_t> skip_counts;
  RunManifest manifest;
};

// Aggregates records into a report and checks the arithmetic identities
// (delta = pcr - cr, phi >= max(0, -delta), phi <= cr) on the way out.
ContaminationReport build_report(const std::vector<EvalRecord>& records,
                                 const DatasetManifest& dataset, const RunManifest& manifest,
                                 const std::map<std::string, std::int64_t>& skip_counts = {});

}  // namespace benchaudit
