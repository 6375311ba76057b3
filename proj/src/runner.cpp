#include "benchaudit/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "benchaudit/parallel.hpp"
#include "benchaudit/version.hpp"

namespace benchaudit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

const PromptTemplate& resolve_template(const RunConfig& cfg, PromptKind kind) {
  if (cfg.template_id.empty()) return default_template(kind);
  const PromptTemplate& tmpl = builtin_template(cfg.template_id);
  if (tmpl.kind != kind) {
    throw TemplateError("template '" + cfg.template_id + "' does not fit this task");
  }
  return tmpl;
}

template <typename Fn>
auto with_retries(Fn&& fn, const RetryPolicy& retry) {
  int attempt = 0;
  for (;;) {
    ++attempt;
    try {
      return fn();
    } catch (const TransientError&) {
      if (attempt >= retry.max_attempts) throw;
      int delay = retry.base_delay_ms;
      for (int k = 1; k < attempt; ++k) delay *= 2;
      if (delay > retry.max_delay_ms) delay = retry.max_delay_ms;
      if (delay > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      }
    }
  }
}

std::string derived_run_id(const RunConfig& cfg, const DatasetManifest& manifest) {
  return hex64(fnv1a64({cfg.endpoint.model_id, cfg.template_id, manifest.name, manifest.split,
                        task_kind_name(manifest.task_kind), fmt_u64(cfg.seed),
                        std::to_string(manifest.sample_count)}));
}

RunManifest make_manifest(const RunConfig& cfg, const DatasetManifest& dataset,
                          const std::string& template_id, const std::string& translator_id) {
  RunManifest m;
  m.run_id = cfg.run_id.empty() ? derived_run_id(cfg, dataset) : cfg.run_id;
  m.model_id = cfg.endpoint.model_id;
  m.template_id = template_id;
  m.sample_seed = sample_seed(cfg);
  m.shuffle_seed = shuffle_seed(cfg);
  m.mask_seed = mask_seed(cfg);
  m.pivot_language = dataset.task_kind == TaskKind::caption ? cfg.pivot_language : "";
  m.translator_id = translator_id;
  m.concurrency = cfg.concurrency;
  m.timestamp = cfg.timestamp.empty() ? current_utc_timestamp() : cfg.timestamp;
  m.tool_version = kToolVersion;
  return m;
}

ordered_json rational_to_json(const Rational& r) {
  return ordered_json{{"num", r.num()}, {"den", r.den()}, {"text", r.to_fixed1()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["outcome"] = outcome_name(v.outcome);
  j["raw"] = v.raw;
  if (v.parsed) {
    j["parsed"] = *v.parsed;
  } else {
    j["parsed"] = nullptr;
  }
  return j;
}

Verdict verdict_from_json(const nlohmann::json& j) {
  Verdict v;
  v.outcome = outcome_from_name(j.at("outcome").get<std::string>());
  v.raw = j.at("raw").get<std::string>();
  if (j.contains("parsed") && !j.at("parsed").is_null()) {
    v.parsed = j.at("parsed").get<std::string>();
  }
  return v;
}

// Minimum spacing between request starts (per-endpoint rate limit).
class Pacer {
 public:
  explicit Pacer(int min_interval_ms) : interval_(min_interval_ms) {}
  void wait() {
    if (interval_.count() <= 0) return;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard<std::mutex> lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      slot = next_ < now ? now : next_;
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::chrono::milliseconds interval_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

// Shared query loop: per-instance jobs issue both forms, errors are
// captured per instance, auth failures flip a global abort flag.
struct QueryOutcome {
  std::string before_raw;
  std::string after_raw;
  std::string error;
  bool auth_failed = false;
};

template <typename GetReqs>
std::vector<QueryOutcome> run_query_stage(std::size_t count, const RunConfig& cfg,
                                          EndpointClient& client, ResponseCache* cache,
                                          GetReqs&& get_reqs) {
  std::vector<QueryOutcome> out(count);
  std::atomic<bool> abort_now{false};
  Pacer pacer(cfg.min_interval_ms);
  parallel_for(count, cfg.concurrency, [&](std::size_t i) {
    if (abort_now.load()) {
      out[i].error = "aborted";
      return;
    }
    auto [before_req, after_req, skip] = get_reqs(i);
    if (skip) return;
    try {
      pacer.wait();
      out[i].before_raw = query(*before_req, client, cache, cfg.retry);
      pacer.wait();
      out[i].after_raw = query(*after_req, client, cache, cfg.retry);
    } catch (const AuthError& e) {
      out[i].error = e.what();
      out[i].auth_failed = true;
      abort_now.store(true);
    } catch (const GatewayError& e) {
      out[i].error = e.what();
    }
  });
  for (const auto& o : out) {
    if (o.auth_failed) throw AuthError(o.error);
  }
  return out;
}

// One repeated fresh request tells whether the endpoint really decodes
// deterministically; drifting endpoints get flagged in the manifest.
template <typename GetReq>
std::string decode_check_result(const std::vector<QueryOutcome>& outcomes,
                                EndpointClient& client, GetReq&& fresh_request_for) {
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].error.empty()) continue;
    const ModelRequest* req = fresh_request_for(i);
    if (req == nullptr) continue;
    try {
      return client.complete(*req) == outcomes[i].before_raw ? "consistent" : "inconsistent";
    } catch (const GatewayError&) {
      return "";
    }
  }
  return "";
}

void enforce_failure_budget(std::int64_t failed, std::int64_t total, const RunConfig& cfg,
                            std::map<std::string, std::int64_t> skip_counts) {
  if (failed == 0 || total == 0) return;
  if (static_cast<double>(failed) > cfg.failure_budget * static_cast<double>(total)) {
    throw RunAbortedError("run aborted: " + std::to_string(failed) + " of " +
                              std::to_string(total) + " instances failed after retries " +
                              "(budget " + std::to_string(cfg.failure_budget * 100.0) + "%)",
                          std::move(skip_counts));
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("config file is not valid JSON: " + path);

  RunConfig cfg;
  if (j.contains("endpoint")) {
    const auto& e = j["endpoint"];
    cfg.endpoint.base_url = e.value("base_url", "");
    cfg.endpoint.auth_env = e.value("auth_env", "");
    cfg.endpoint.model_id = e.value("model_id", "");
  }
  if (j.contains("run")) {
    const auto& r = j["run"];
    cfg.seed = r.value("seed", std::uint64_t{0});
    cfg.samples = r.value("samples", std::int64_t{-1});
    cfg.concurrency = r.value("concurrency", 4);
    cfg.cache_path = r.value("cache_path", "");
    cfg.failure_budget = r.value("failure_budget", 0.02);
    cfg.timestamp = r.value("timestamp", "");
    cfg.min_interval_ms = r.value("min_interval_ms", 0);
    cfg.verify_decode = r.value("verify_decode", false);
  }
  if (j.contains("prompts")) {
    cfg.template_id = j["prompts"].value("template_id", "");
  }
  if (j.contains("translator")) {
    const auto& t = j["translator"];
    cfg.translator_kind = t.value("kind", "dict");
    cfg.translator_url = t.value("url", "");
    cfg.translator_auth_env = t.value("auth_env", "");
    cfg.pivot_language = t.value("pivot", "zh");
    cfg.translation_cache_path = t.value("cache_path", "");
  }
  return cfg;
}

std::uint64_t sample_seed(const RunConfig& cfg) { return derive_seed(cfg.seed, {"sample"}); }
std::uint64_t shuffle_seed(const RunConfig& cfg) { return derive_seed(cfg.seed, {"shuffle"}); }
std::uint64_t mask_seed(const RunConfig& cfg) { return derive_seed(cfg.seed, {"mask"}); }

std::string current_utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

ChoiceForms build_choice_forms(const ChoiceInstance& instance, const RunConfig& cfg) {
  const PromptTemplate& tmpl = resolve_template(cfg, PromptKind::multi_choice);
  ChoiceForms forms;
  forms.shuffled = shuffle_options(instance, derive_seed(shuffle_seed(cfg), {instance.id}));
  forms.before_req = build_choice_prompt(instance, tmpl);
  forms.after_req = build_choice_prompt(forms.shuffled, tmpl);
  forms.before_req.model_id = cfg.endpoint.model_id;
  forms.after_req.model_id = cfg.endpoint.model_id;
  forms.before_req.form_tag = "orig";
  forms.after_req.form_tag = "pert";
  return forms;
}

CaptionForms build_caption_forms(const CaptionInstance& instance, const RunConfig& cfg,
                                 Translator& translator, const PosTagger& tagger,
                                 TranslationCache* cache) {
  const PromptTemplate& tmpl = resolve_template(cfg, PromptKind::slot);
  CaptionForms forms;
  forms.pair = perturb_caption_pair(instance, translator, tagger,
                                    derive_seed(mask_seed(cfg), {instance.id}),
                                    cfg.pivot_language, cache);
  if (!forms.pair.skipped) {
    forms.before_req = build_slot_prompt(instance.image_ref, forms.pair.masked_original, tmpl);
    forms.after_req = build_slot_prompt(instance.image_ref, forms.pair.masked_bt, tmpl);
    forms.before_req.model_id = cfg.endpoint.model_id;
    forms.after_req.model_id = cfg.endpoint.model_id;
    forms.before_req.form_tag = "orig";
    forms.after_req.form_tag = "pert";
  }
  return forms;
}

DetectResult detect_choice(const std::vector<ChoiceInstance>& instances,
                           const DatasetManifest& manifest, const RunConfig& cfg,
                           EndpointClient& client) {
  if (instances.empty()) {
    throw RunAbortedError("detect_choice: empty dataset", {});
  }
  DatasetManifest dataset = manifest;
  std::vector<ChoiceInstance> selected = instances;
  if (cfg.samples >= 0 && cfg.samples < static_cast<std::int64_t>(instances.size())) {
    selected = sample(instances, static_cast<std::size_t>(cfg.samples), sample_seed(cfg));
  }
  dataset.sample_seed = sample_seed(cfg);
  dataset.sample_count = static_cast<std::int64_t>(selected.size());

  const PromptTemplate& tmpl = resolve_template(cfg, PromptKind::multi_choice);
  std::vector<ChoiceForms> forms;
  forms.reserve(selected.size());
  for (const auto& inst : selected) forms.push_back(build_choice_forms(inst, cfg));

  ResponseCache cache(cfg.cache_path);
  auto outcomes = run_query_stage(
      forms.size(), cfg, client, &cache, [&](std::size_t i) {
        return std::tuple<const ModelRequest*, const ModelRequest*, bool>(
            &forms[i].before_req, &forms[i].after_req, false);
      });

  std::map<std::string, std::int64_t> skip_counts;
  std::vector<EvalRecord> records;
  records.reserve(selected.size());
  std::int64_t failed = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      ++failed;
      continue;
    }
    EvalRecord rec;
    rec.instance_id = selected[i].id;
    rec.before = parse_choice_answer(outcomes[i].before_raw, selected[i].options,
                                     selected[i].answer_index);
    rec.after = parse_choice_answer(outcomes[i].after_raw, forms[i].shuffled.shuffled_options,
                                    forms[i].shuffled.new_answer_index);
    records.push_back(std::move(rec));
  }
  if (failed > 0) skip_counts["endpoint_error"] = failed;
  enforce_failure_budget(failed, static_cast<std::int64_t>(selected.size()), cfg, skip_counts);
  if (records.empty()) {
    throw RunAbortedError("detect_choice: no instances evaluated", skip_counts);
  }

  RunManifest run_manifest = make_manifest(cfg, dataset, tmpl.id, "");
  if (cfg.verify_decode) {
    run_manifest.decode_check = decode_check_result(
        outcomes, client, [&](std::size_t i) { return &forms[i].before_req; });
  }

  DetectResult result;
  result.records = std::move(records);
  result.report = build_report(result.records, dataset, run_manifest, skip_counts);
  return result;
}

DetectResult detect_caption(const std::vector<CaptionInstance>& instances,
                            const DatasetManifest& manifest, const RunConfig& cfg,
                            EndpointClient& client, Translator& translator,
                            const PosTagger& tagger, TranslationCache* translation_cache) {
  if (instances.empty()) {
    throw RunAbortedError("detect_caption: empty dataset", {});
  }
  DatasetManifest dataset = manifest;
  std::vector<CaptionInstance> selected = instances;
  if (cfg.samples >= 0 && cfg.samples < static_cast<std::int64_t>(instances.size())) {
    selected = sample(instances, static_cast<std::size_t>(cfg.samples), sample_seed(cfg));
  }
  dataset.sample_seed = sample_seed(cfg);
  dataset.sample_count = static_cast<std::int64_t>(selected.size());

  const PromptTemplate& tmpl = resolve_template(cfg, PromptKind::slot);

  // Perturbation stage: translation may hit the wire, so it runs under the
  // same bounded concurrency and retry policy as queries.
  std::vector<CaptionForms> forms(selected.size());
  std::vector<std::string> form_errors(selected.size());
  std::vector<char> auth_flags(selected.size(), 0);
  std::atomic<bool> auth_failed{false};
  parallel_for(selected.size(), cfg.concurrency, [&](std::size_t i) {
    if (auth_failed.load()) {
      form_errors[i] = "aborted";
      return;
    }
    try {
      forms[i] = with_retries(
          [&] {
            return build_caption_forms(selected[i], cfg, translator, tagger, translation_cache);
          },
          cfg.retry);
    } catch (const AuthError& e) {
      form_errors[i] = e.what();
      auth_flags[i] = 1;
      auth_failed.store(true);
    } catch (const std::exception& e) {
      form_errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (auth_flags[i]) throw AuthError(form_errors[i]);
  }

  std::map<std::string, std::int64_t> skip_counts;
  std::int64_t failed = 0;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (!form_errors[i].empty()) {
      ++failed;
      ++skip_counts["translator_error"];
      continue;
    }
    if (forms[i].pair.skipped) ++skip_counts[forms[i].pair.skip_reason];
  }

  ResponseCache cache(cfg.cache_path);
  auto outcomes = run_query_stage(
      forms.size(), cfg, client, &cache, [&](std::size_t i) {
        const bool skip = !form_errors[i].empty() || forms[i].pair.skipped;
        return std::tuple<const ModelRequest*, const ModelRequest*, bool>(
            &forms[i].before_req, &forms[i].after_req, skip);
      });

  std::vector<EvalRecord> records;
  records.reserve(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (!form_errors[i].empty() || forms[i].pair.skipped) continue;
    if (!outcomes[i].error.empty()) {
      ++failed;
      ++skip_counts["endpoint_error"];
      continue;
    }
    EvalRecord rec;
    rec.instance_id = selected[i].id;
    rec.before =
        grade_slot_response(outcomes[i].before_raw, forms[i].pair.masked_original.masked_keyword);
    rec.after =
        grade_slot_response(outcomes[i].after_raw, forms[i].pair.masked_bt.masked_keyword);
    records.push_back(std::move(rec));
  }
  enforce_failure_budget(failed, static_cast<std::int64_t>(selected.size()), cfg, skip_counts);
  if (records.empty()) {
    throw RunAbortedError("detect_caption: no instances evaluated (all skipped or failed)",
                          skip_counts);
  }

  RunManifest run_manifest = make_manifest(cfg, dataset, tmpl.id, translator.id());
  if (cfg.verify_decode) {
    run_manifest.decode_check =
        decode_check_result(outcomes, client, [&](std::size_t i) -> const ModelRequest* {
          if (!form_errors[i].empty() || forms[i].pair.skipped) return nullptr;
          return &forms[i].before_req;
        });
  }

  DetectResult result;
  result.records = std::move(records);
  result.report = build_report(result.records, dataset, run_manifest, skip_counts);
  return result;
}

std::unique_ptr<Translator> make_translator(const RunConfig& cfg) {
  if (cfg.translator_kind == "identity") return make_identity_translator();
  if (cfg.translator_kind == "dict") return make_default_dictionary_translator();
  if (cfg.translator_kind == "http") {
    HttpTranslator::Options opts;
    opts.base_url = cfg.translator_url;
    opts.auth_env = cfg.translator_auth_env;
    return std::make_unique<HttpTranslator>(opts);
  }
  throw std::invalid_argument("unknown translator kind: " + cfg.translator_kind);
}

void write_records_jsonl(const std::string& path, const std::vector<EvalRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open records file for writing: " + path);
  for (const auto& rec : records) {
    ordered_json j;
    j["instance_id"] = rec.instance_id;
    j["before"] = verdict_to_json(rec.before);
    j["after"] = verdict_to_json(rec.after);
    out << j.dump() << "\n";
  }
}

std::vector<EvalRecord> load_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open records file: " + path);
  std::vector<EvalRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw std::invalid_argument("records file line " + std::to_string(line_no) +
                                  ": invalid JSON");
    }
    EvalRecord rec;
    rec.instance_id = j.at("instance_id").get<std::string>();
    rec.before = verdict_from_json(j.at("before"));
    rec.after = verdict_from_json(j.at("after"));
    records.push_back(std::move(rec));
  }
  return records;
}

std::string report_to_json_string(const ContaminationReport& report) {
  ordered_json j;
  j["kind"] = "contamination_report";
  j["dataset"] = {{"name", report.dataset.name},
                  {"split", report.dataset.split},
                  {"task_kind", task_kind_name(report.dataset.task_kind)},
                  {"size", report.dataset.size},
                  {"sample_seed", report.dataset.sample_seed},
                  {"sample_count", report.dataset.sample_count}};
  j["n_evaluated"] = report.n_evaluated;
  j["counts"] = {{"correct_before", report.correct_before},
                 {"correct_after", report.correct_after},
                 {"x_count", report.x_count},
                 {"abstain_before", report.breakdown.abstain_before},
                 {"abstain_after", report.breakdown.abstain_after},
                 {"unparseable_before", report.breakdown.unparseable_before},
                 {"unparseable_after", report.breakdown.unparseable_after}};
  j["rates"] = {{"cr", rational_to_json(report.cr)},
                {"pcr", rational_to_json(report.pcr)},
                {"delta", rational_to_json(report.delta)},
                {"phi", rational_to_json(report.phi)}};
  j["degree"] = degree_name(report.degree);
  j["color"] = degree_color(report.degree);
  ordered_json skips = ordered_json::object();
  for (const auto& [reason, count] : report.skip_counts) skips[reason] = count;
  j["skip_counts"] = skips;
  j["manifest"] = {{"run_id", report.manifest.run_id},
                   {"model_id", report.manifest.model_id},
                   {"template_id", report.manifest.template_id},
                   {"sample_seed", report.manifest.sample_seed},
                   {"shuffle_seed", report.manifest.shuffle_seed},
                   {"mask_seed", report.manifest.mask_seed},
                   {"pivot_language", report.manifest.pivot_language},
                   {"translator_id", report.manifest.translator_id},
                   {"concurrency", report.manifest.concurrency},
                   {"timestamp", report.manifest.timestamp},
                   {"tool_version", report.manifest.tool_version},
                   {"decode_check", report.manifest.decode_check}};
  return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const ContaminationReport& report) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open report file for writing: " + path);
  out << report_to_json_string(report);
}

ContaminationReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open report file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("report file is not valid JSON: " + path);

  ContaminationReport report;
  const auto& d = j.at("dataset");
  report.dataset.name = d.at("name").get<std::string>();
  report.dataset.split = d.at("split").get<std::string>();
  report.dataset.task_kind = task_kind_from_name(d.at("task_kind").get<std::string>());
  report.dataset.size = d.at("size").get<std::int64_t>();
  report.dataset.sample_seed = d.at("sample_seed").get<std::uint64_t>();
  report.dataset.sample_count = d.at("sample_count").get<std::int64_t>();
  report.n_evaluated = j.at("n_evaluated").get<std::int64_t>();
  const auto& c = j.at("counts");
  report.correct_before = c.at("correct_before").get<std::int64_t>();
  report.correct_after = c.at("correct_after").get<std::int64_t>();
  report.x_count = c.at("x_count").get<std::int64_t>();
  report.breakdown.abstain_before = c.at("abstain_before").get<std::int64_t>();
  report.breakdown.abstain_after = c.at("abstain_after").get<std::int64_t>();
  report.breakdown.unparseable_before = c.at("unparseable_before").get<std::int64_t>();
  report.breakdown.unparseable_after = c.at("unparseable_after").get<std::int64_t>();
  const auto& r = j.at("rates");
  report.cr = rational_from_json(r.at("cr"));
  report.pcr = rational_from_json(r.at("pcr"));
  report.delta = rational_from_json(r.at("delta"));
  report.phi = rational_from_json(r.at("phi"));
  report.degree = degree_from_name(j.at("degree").get<std::string>());
  for (const auto& [reason, count] : j.at("skip_counts").items()) {
    report.skip_counts[reason] = count.get<std::int64_t>();
  }
  const auto& m = j.at("manifest");
  report.manifest.run_id = m.at("run_id").get<std::string>();
  report.manifest.model_id = m.at("model_id").get<std::string>();
  report.manifest.template_id = m.at("template_id").get<std::string>();
  report.manifest.sample_seed = m.at("sample_seed").get<std::uint64_t>();
  report.manifest.shuffle_seed = m.at("shuffle_seed").get<std::uint64_t>();
  report.manifest.mask_seed = m.at("mask_seed").get<std::uint64_t>();
  report.manifest.pivot_language = m.at("pivot_language").get<std::string>();
  report.manifest.translator_id = m.at("translator_id").get<std::string>();
  report.manifest.concurrency = m.at("concurrency").get<int>();
  report.manifest.timestamp = m.at("timestamp").get<std::string>();
  report.manifest.tool_version = m.at("tool_version").get<std::string>();
  report.manifest.decode_check = m.value("decode_check", "");
  return report;
}

std::string render_report_table(const ContaminationReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %-12s %8s %7s %7s %7s %7s  %-8s %-6s\n", "dataset",
                "task", "n", "CR", "PCR", "Δ", "Φ", "degree", "color");
  out << line;
  const std::string name =
      report.dataset.split.empty() ? report.dataset.name
                                   : report.dataset.name + "/" + report.dataset.split;
  std::snprintf(line, sizeof(line), "%-24s %-12s %8lld %7s %7s %7s %7s  %-8s %-6s\n",
                name.c_str(), task_kind_name(report.dataset.task_kind).c_str(),
                static_cast<long long>(report.n_evaluated), report.cr.to_fixed1().c_str(),
                report.pcr.to_fixed1().c_str(), report.delta.to_fixed1().c_str(),
                report.phi.to_fixed1().c_str(), degree_name(report.degree).c_str(),
                degree_color(report.degree).c_str());
  out << line;
  if (!report.skip_counts.empty()) {
    out << "skips:";
    for (const auto& [reason, count] : report.skip_counts) {
      out << " " << reason << "=" << count;
    }
    out << "\n";
  }
  out << "model=" << report.manifest.model_id << " template=" << report.manifest.template_id
      << " run_id=" << report.manifest.run_id << " seed(sample/shuffle/mask)="
      << report.manifest.sample_seed << "/" << report.manifest.shuffle_seed << "/"
      << report.manifest.mask_seed;
  if (!report.manifest.decode_check.empty()) {
    out << " decode_check=" << report.manifest.decode_check;
  }
  out << "\n";
  return out.str();
}

}  // namespace benchaudit
