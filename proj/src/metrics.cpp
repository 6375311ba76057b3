#include "benchaudit/metrics.hpp"

#include <stdexcept>

namespace benchaudit {

namespace {

struct Thresholds {
  Rational minor;    // none above this, minor at or below
  Rational partial;  // partial at or below
  Rational severe;   // severe at or below
};

Thresholds thresholds_for(TaskKind kind) {
  if (kind == TaskKind::multi_choice) {
    return {Rational(-1, 5), Rational(-8, 5), Rational(-29, 10)};
  }
  return {Rational(-11, 10), Rational(-12, 5), Rational(-5, 1)};
}

}  // namespace

std::string degree_name(Degree d) {
  switch (d) {
    case Degree::none: return "none";
    case Degree::minor: return "minor";
    case Degree::partial: return "partial";
    case Degree::severe: return "severe";
  }
  return "none";
}

Degree degree_from_name(const std::string& name) {
  if (name == "none") return Degree::none;
  if (name == "minor") return Degree::minor;
  if (name == "partial") return Degree::partial;
  if (name == "severe") return Degree::severe;
  throw std::invalid_argument("unknown degree: " + name);
}

std::string degree_color(Degree d) {
  switch (d) {
    case Degree::none: return "none";
    case Degree::minor: return "green";
    case Degree::partial: return "yellow";
    case Degree::severe: return "red";
  }
  return "none";
}

Degree classify_degree(const Rational& delta, TaskKind kind) {
  const Thresholds t = thresholds_for(kind);
  if (delta <= t.severe) return Degree::severe;
  if (delta <= t.partial) return Degree::partial;
  if (delta <= t.minor) return Degree::minor;
  return Degree::none;
}

Degree classify_degree(double delta, TaskKind kind) {
  if (kind == TaskKind::multi_choice) {
    if (delta <= -2.9) return Degree::severe;
    if (delta <= -1.6) return Degree::partial;
    if (delta <= -0.2) return Degree::minor;
    return Degree::none;
  }
  if (delta <= -5.0) return Degree::severe;
  if (delta <= -2.4) return Degree::partial;
  if (delta <= -1.1) return Degree::minor;
  return Degree::none;
}

std::pair<Rational, Rational> correct_rates(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw std::invalid_argument("correct_rates: no records");
  std::int64_t n = static_cast<std::int64_t>(records.size());
  std::int64_t before = 0, after = 0;
  for (const auto& rec : records) {
    if (rec.before.outcome == Outcome::correct) ++before;
    if (rec.after.outcome == Outcome::correct) ++after;
  }
  return {Rational::percent(before, n), Rational::percent(after, n)};
}

std::pair<std::int64_t, Rational> instance_leakage(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw std::invalid_argument("instance_leakage: no records");
  std::int64_t n = static_cast<std::int64_t>(records.size());
  std::int64_t x = 0;
  for (const auto& rec : records) {
    if (rec.before.outcome == Outcome::correct && rec.after.outcome != Outcome::correct) ++x;
  }
  return {x, Rational::percent(x, n)};
}

ContaminationReport build_report(const std::vector<EvalRecord>& records,
                                 const DatasetManifest& dataset, const RunManifest& manifest,
                                 const std::map<std::string, std::int64_t>& skip_counts) {
  ContaminationReport report;
  report.dataset = dataset;
  report.manifest = manifest;
  report.skip_counts = skip_counts;
  report.n_evaluated = static_cast<std::int64_t>(records.size());

  for (const auto& rec : records) {
    if (rec.before.outcome == Outcome::correct) ++report.correct_before;
    if (rec.after.outcome == Outcome::correct) ++report.correct_after;
    if (rec.before.outcome == Outcome::abstain) ++report.breakdown.abstain_before;
    if (rec.after.outcome == Outcome::abstain) ++report.breakdown.abstain_after;
    if (rec.before.outcome == Outcome::unparseable) ++report.breakdown.unparseable_before;
    if (rec.after.outcome == Outcome::unparseable) ++report.breakdown.unparseable_after;
  }

  auto [cr, pcr] = correct_rates(records);
  auto [x, phi] = instance_leakage(records);
  report.cr = cr;
  report.pcr = pcr;
  report.delta = delta(cr, pcr);
  report.x_count = x;
  report.phi = phi;
  report.degree = classify_degree(report.delta, dataset.task_kind);

  // Identities that hold for any verdict sequence; a violation is a bug.
  if (report.delta != report.pcr - report.cr) throw std::logic_error("report: delta identity");
  if (report.phi < Rational(0, 1) || report.phi < -report.delta) {
    throw std::logic_error("report: phi lower bound");
  }
  if (report.phi > report.cr) throw std::logic_error("report: phi upper bound");
  return report;
}

}  // namespace benchaudit
