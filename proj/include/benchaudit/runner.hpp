#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "benchaudit/caption_perturb.hpp"
#include "benchaudit/choice_shuffle.hpp"
#include "benchaudit/dataset.hpp"
#include "benchaudit/gateway.hpp"
#include "benchaudit/metrics.hpp"
#include "benchaudit/pos_tagger.hpp"
#include "benchaudit/translator.hpp"

namespace benchaudit {

struct EndpointConfig {
  std::string base_url;
  std::string auth_env;
  std::string model_id;
};

struct RunConfig {
  EndpointConfig endpoint;
  std::uint64_t seed = 0;
  std::int64_t samples = -1;  // -1 = whole dataset
  int concurrency = 4;
  std::string cache_path;     // response cache; "" keeps it in memory
  std::string template_id;    // "" = default for the task
  double failure_budget = 0.02;
  std::string timestamp;      // "" = wall clock; inject for reproducible manifests
  RetryPolicy retry;
  std::string run_id;         // "" = derived from the run parameters
  int min_interval_ms = 0;    // per-endpoint rate limit between request starts
  // Re-issues one request after the run and records in the manifest
  // whether the endpoint actually decodes deterministically.
  bool verify_decode = false;

  // caption runs
  std::string translator_kind = "dict";  // identity | dict | http
  std::string translator_url;
  std::string translator_auth_env;
  std::string pivot_language = "zh";
  std::string translation_cache_path;
};

// JSON config file; documented keys: endpoint.base_url, endpoint.auth_env,
// endpoint.model_id, run.seed, run.samples, run.concurrency, run.cache_path,
// run.failure_budget, run.timestamp, run.min_interval_ms, run.verify_decode,
// prompts.template_id, translator.kind, translator.url, translator.auth_env,
// translator.pivot, translator.cache_path.
RunConfig load_run_config(const std::string& path);

std::uint64_t sample_seed(const RunConfig& cfg);
std::uint64_t shuffle_seed(const RunConfig& cfg);
std::uint64_t mask_seed(const RunConfig& cfg);

std::string current_utc_timestamp();

// Run failed hard: over the failure budget, or nothing left to evaluate.
class RunAbortedError : public std::runtime_error {
 public:
  RunAbortedError(const std::string& what, std::map<std::string, std::int64_t> skip_counts)
      : std::runtime_error(what), skip_counts(std::move(skip_counts)) {}
  std::map<std::string, std::int64_t> skip_counts;
};

// Both request forms for one instance, exactly as the detect pipelines
// build them. Pure functions of (instance, config), which lets a harness
// reproduce the prompts a run will issue.
struct ChoiceForms {
  ShuffledChoice shuffled;
  ModelRequest before_req;
  ModelRequest after_req;
};
ChoiceForms build_choice_forms(const ChoiceInstance& instance, const RunConfig& cfg);

struct CaptionForms {
  PerturbedCaptionPair pair;
  ModelRequest before_req;  // valid only when !pair.skipped
  ModelRequest after_req;
};
CaptionForms build_caption_forms(const CaptionInstance& instance, const RunConfig& cfg,
                                 Translator& translator, const PosTagger& tagger,
                                 TranslationCache* cache);

struct DetectResult {
  ContaminationReport report;
  std::vector<EvalRecord> records;
};

// End-to-end option-order run: sample, shuffle, query both forms inside
// the same run, grade, aggregate. Instance failures are recorded and the
// run aborts only past the failure budget.
DetectResult detect_choice(const std::vector<ChoiceInstance>& instances,
                           const DatasetManifest& manifest, const RunConfig& cfg,
                           EndpointClient& client);

DetectResult detect_caption(const std::vector<CaptionInstance>& instances,
                            const DatasetManifest& manifest, const RunConfig& cfg,
                            EndpointClient& client, Translator& translator,
                            const PosTagger& tagger, TranslationCache* translation_cache);

std::unique_ptr<Translator> make_translator(const RunConfig& cfg);

// Persistence: records as JSONL, the report as a lossless JSON document,
// and a human-readable table with the degree color field.
void write_records_jsonl(const std::string& path, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> load_records_jsonl(const std::string& path);

std::string report_to_json_string(const ContaminationReport& report);
void write_report_json(const std::string& path, const ContaminationReport& report);
ContaminationReport load_report_json(const std::string& path);

std::string render_report_table(const ContaminationReport& report);

}  // namespace benchaudit
