// benchaudit: black-box contamination audit for multimodal benchmarks.
//
// Subcommands: detect-choice, detect-caption, probe-unimodal, simulate,
// similarity, report. Exit codes: 0 success, 1 usage/config error,
// 2 run aborted (failure budget exceeded or nothing evaluated).

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "benchaudit/probe.hpp"
#include "benchaudit/runner.hpp"
#include "benchaudit/similarity.hpp"
#include "benchaudit/simulation.hpp"
#include "benchaudit/version.hpp"

namespace {

using namespace benchaudit;

struct CommonArgs {
  std::string config_path;
  std::string dataset_path;
  std::string endpoint_url;
  std::string auth_env;
  std::string model_id;
  std::string out_prefix = "run";
  std::string template_id;
  std::string cache_path;
  std::string timestamp;
  std::int64_t samples = -1;
  std::uint64_t seed = 0;
  int concurrency = 0;
  double failure_budget = -1.0;
  int min_interval_ms = -1;
  bool verify_decode = false;
  bool seed_set = false;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--dataset", args.dataset_path, "line-delimited dataset file")->required();
  cmd->add_option("--endpoint", args.endpoint_url, "endpoint base URL");
  cmd->add_option("--auth-env", args.auth_env, "env var holding the bearer token");
  cmd->add_option("--model", args.model_id, "model identifier sent to the endpoint");
  cmd->add_option("--out", args.out_prefix, "output path prefix");
  cmd->add_option("--template", args.template_id, "prompt template id");
  cmd->add_option("--cache", args.cache_path, "response cache file");
  cmd->add_option("--timestamp", args.timestamp, "fixed manifest timestamp (reproducibility)");
  cmd->add_option("--samples", args.samples, "sample size (default: whole dataset)");
  cmd->add_option("--seed", args.seed, "master seed")->each([&args](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--concurrency", args.concurrency, "max in-flight requests");
  cmd->add_option("--failure-budget", args.failure_budget,
                  "abort when more than this fraction of instances fail");
  cmd->add_option("--min-interval-ms", args.min_interval_ms,
                  "minimum spacing between request starts");
  cmd->add_flag("--verify-decode", args.verify_decode,
                "re-issue one request and flag non-deterministic endpoints in the manifest");
}

RunConfig build_config(const CommonArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) cfg = load_run_config(args.config_path);
  if (!args.endpoint_url.empty()) cfg.endpoint.base_url = args.endpoint_url;
  if (!args.auth_env.empty()) cfg.endpoint.auth_env = args.auth_env;
  if (!args.model_id.empty()) cfg.endpoint.model_id = args.model_id;
  if (args.seed_set) cfg.seed = args.seed;
  if (args.samples >= 0) cfg.samples = args.samples;
  if (args.concurrency > 0) cfg.concurrency = args.concurrency;
  if (!args.cache_path.empty()) cfg.cache_path = args.cache_path;
  if (!args.template_id.empty()) cfg.template_id = args.template_id;
  if (!args.timestamp.empty()) cfg.timestamp = args.timestamp;
  if (args.failure_budget >= 0.0) cfg.failure_budget = args.failure_budget;
  if (args.min_interval_ms >= 0) cfg.min_interval_ms = args.min_interval_ms;
  if (args.verify_decode) cfg.verify_decode = true;
  return cfg;
}

std::unique_ptr<HttpEndpointClient> build_client(const RunConfig& cfg) {
  if (cfg.endpoint.base_url.empty()) {
    throw std::invalid_argument("no endpoint configured (use --endpoint or a config file)");
  }
  HttpEndpointClient::Options opts;
  opts.base_url = cfg.endpoint.base_url;
  opts.auth_env = cfg.endpoint.auth_env;
  return std::make_unique<HttpEndpointClient>(opts);
}

void emit_detect_outputs(const DetectResult& result, const std::string& out_prefix) {
  write_report_json(out_prefix + ".report.json", result.report);
  write_records_jsonl(out_prefix + ".records.jsonl", result.records);
  std::ofstream table(out_prefix + ".report.txt");
  table << render_report_table(result.report);
  std::cout << render_report_table(result.report);
  std::cout << "wrote " << out_prefix << ".report.json, .records.jsonl, .report.txt\n";
}

int run_detect_choice(const CommonArgs& args) {
  RunConfig cfg = build_config(args);
  auto dataset = load_choice_dataset(args.dataset_path);
  auto client = build_client(cfg);
  auto result = detect_choice(dataset.instances, dataset.manifest, cfg, *client);
  emit_detect_outputs(result, args.out_prefix);
  return 0;
}

int run_detect_caption(const CommonArgs& args, const std::string& translator_kind,
                       const std::string& translator_url, const std::string& pivot,
                       const std::string& translation_cache) {
  RunConfig cfg = build_config(args);
  if (!translator_kind.empty()) cfg.translator_kind = translator_kind;
  if (!translator_url.empty()) {
    cfg.translator_url = translator_url;
    cfg.translator_kind = "http";
  }
  if (!pivot.empty()) cfg.pivot_language = pivot;
  if (!translation_cache.empty()) cfg.translation_cache_path = translation_cache;

  auto dataset = load_caption_dataset(args.dataset_path);
  auto client = build_client(cfg);
  auto translator = make_translator(cfg);
  RuleTagger tagger;
  std::unique_ptr<TranslationCache> bt_cache;
  if (!cfg.translation_cache_path.empty()) {
    bt_cache = std::make_unique<TranslationCache>(cfg.translation_cache_path);
  }

  auto result = detect_caption(dataset.instances, dataset.manifest, cfg, *client, *translator,
                               tagger, bt_cache.get());
  emit_detect_outputs(result, args.out_prefix);

  // Back-translations for the similarity subcommand.
  std::vector<PairRecord> pairs;
  for (const auto& inst : dataset.instances) {
    auto bt = back_translate(inst.caption, *translator, cfg.pivot_language, bt_cache.get());
    pairs.push_back(PairRecord{inst.id, bt.original, bt.back_translated});
  }
  write_pair_records(args.out_prefix + ".pairs.jsonl", pairs);
  std::cout << "wrote " << args.out_prefix << ".pairs.jsonl\n";
  return 0;
}

int run_probe_cmd(const CommonArgs& args, bool no_idk) {
  RunConfig cfg = build_config(args);
  auto dataset = load_choice_dataset(args.dataset_path);
  auto client = build_client(cfg);

  std::vector<ChoiceInstance> selected = dataset.instances;
  if (cfg.samples >= 0 && cfg.samples < static_cast<std::int64_t>(selected.size())) {
    selected = sample(selected, static_cast<std::size_t>(cfg.samples), sample_seed(cfg));
  }

  ResponseCache cache(cfg.cache_path);
  const PromptTemplate& tmpl = cfg.template_id.empty()
                                   ? default_template(PromptKind::multi_choice)
                                   : builtin_template(cfg.template_id);
  auto report = run_probe(selected, *client, &cache, !no_idk, tmpl, cfg.endpoint.model_id,
                          cfg.concurrency, cfg.retry);

  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["accuracy"] = report.accuracy.to_double();
  j["accuracy_text"] = report.accuracy.to_fixed1();
  j["correct"] = report.correct;
  j["incorrect"] = report.incorrect;
  j["idk_count"] = report.idk_count;
  j["unparseable_count"] = report.unparseable_count;
  j["instruction_used"] = report.instruction_used;
  j["model_id"] = report.model_id;
  std::ofstream out(args.out_prefix + ".probe.json");
  out << j.dump(2) << "\n";
  std::cout << "accuracy=" << report.accuracy.to_fixed1() << " idk=" << report.idk_count
            << " n=" << report.n << "\n";
  std::cout << "wrote " << args.out_prefix << ".probe.json\n";
  return 0;
}

int run_simulate(const std::string& task, std::vector<double> ps, double q, double q_bt,
                 std::int64_t n, std::uint64_t seed, int m, const std::string& memory,
                 const std::string& out_prefix) {
  SweepConfig cfg;
  cfg.task_kind = task == "caption" ? TaskKind::caption : TaskKind::multi_choice;
  cfg.base_accuracy = q;
  cfg.bt_guess_accuracy = q_bt;
  cfg.option_count = m;
  cfg.n = n;
  cfg.seed = seed;
  cfg.memory = memory == "text" ? MemoryKind::text : MemoryKind::position;
  if (ps.empty()) ps = {0.0, 0.1, 0.5, 1.0};

  auto rows = run_sensitivity_sweep(ps, cfg);
  write_sweep_outputs(out_prefix, rows);
  std::cout << sweep_csv(rows);
  std::cout << "wrote " << out_prefix << ".csv, " << out_prefix << ".jsonl\n";
  return 0;
}

int run_similarity(const std::string& pairs_path, const std::string& semantic_path,
                   const std::string& out_prefix) {
  auto pairs = load_pair_records(pairs_path);
  std::optional<std::map<std::string, double>> semantic;
  if (!semantic_path.empty()) semantic = load_semantic_scores(semantic_path);
  auto summary = similarity_report(pairs, semantic);
  write_similarity_outputs(out_prefix, summary);
  std::cout << "n=" << summary.n << " mean_bleu4=" << summary.mean_bleu;
  if (summary.mean_semantic) std::cout << " mean_semantic=" << *summary.mean_semantic;
  if (summary.pearson_r) std::cout << " pearson_r=" << *summary.pearson_r;
  std::cout << "\nwrote " << out_prefix << ".rows.jsonl, " << out_prefix << ".summary.json\n";
  return 0;
}

int run_report(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
  auto report = load_report_json(in_path);
  std::string rendered =
      format == "records" ? report_to_json_string(report) : render_report_table(report);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path);
    out << rendered;
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"black-box contamination audit for multimodal benchmarks"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonArgs choice_args, caption_args, probe_args;

  auto* detect_choice_cmd =
      app.add_subcommand("detect-choice", "option-order sensitivity run on a multi-choice set");
  add_common_flags(detect_choice_cmd, choice_args);

  auto* detect_caption_cmd =
      app.add_subcommand("detect-caption", "slot-guessing run on a caption set");
  add_common_flags(detect_caption_cmd, caption_args);
  std::string translator_kind, translator_url, pivot, translation_cache;
  detect_caption_cmd->add_option("--translator", translator_kind,
                                 "translator kind: identity | dict | http");
  detect_caption_cmd->add_option("--translator-url", translator_url,
                                 "translation service base URL (implies --translator http)");
  detect_caption_cmd->add_option("--pivot", pivot, "pivot language code (default zh)");
  detect_caption_cmd->add_option("--translation-cache", translation_cache,
                                 "back-translation cache file");

  auto* probe_cmd = app.add_subcommand(
      "probe-unimodal", "text-only probe of image-required questions (no image sent)");
  add_common_flags(probe_cmd, probe_args);
  bool no_idk = false;
  probe_cmd->add_flag("--no-idk-clause", no_idk, "drop the uncertainty clause (ablation)");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "memorizer sensitivity sweep with analytic oracles");
  std::string sim_task = "choice";
  std::vector<double> sim_ps;
  double sim_q = 0.4, sim_qbt = 0.0;
  std::int64_t sim_n = 10000;
  std::uint64_t sim_seed = 0;
  int sim_m = 4;
  std::string sim_memory = "position";
  std::string sim_out = "sweep";
  simulate_cmd->add_option("--task", sim_task, "choice | caption")
      ->check(CLI::IsMember({"choice", "caption"}));
  simulate_cmd->add_option("--p", sim_ps, "leak fraction (repeatable, ascending)");
  simulate_cmd->add_option("--q", sim_q, "clean-model accuracy");
  simulate_cmd->add_option("--q-bt", sim_qbt, "memorized back-translated slot accuracy");
  simulate_cmd->add_option("--n", sim_n, "synthetic dataset size");
  simulate_cmd->add_option("--seed", sim_seed, "sweep seed");
  simulate_cmd->add_option("--m", sim_m, "options per instance");
  simulate_cmd->add_option("--memory", sim_memory, "position | text")
      ->check(CLI::IsMember({"position", "text"}));
  simulate_cmd->add_option("--out", sim_out, "output prefix");

  auto* similarity_cmd =
      app.add_subcommand("similarity", "lexical similarity of back-translation pairs");
  std::string pairs_path, semantic_path, sim_out_prefix = "similarity";
  similarity_cmd->add_option("--pairs", pairs_path, "pairs file from detect-caption")
      ->required();
  similarity_cmd->add_option("--semantic-scores", semantic_path,
                             "external (id, score) file from an embedder");
  similarity_cmd->add_option("--out", sim_out_prefix, "output prefix");

  auto* report_cmd = app.add_subcommand("report", "re-render a stored report");
  std::string report_in, report_format = "table", report_out;
  report_cmd->add_option("--in", report_in, "report JSON file")->required();
  report_cmd->add_option("--format", report_format, "table | records")
      ->check(CLI::IsMember({"table", "records"}));
  report_cmd->add_option("--out", report_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(detect_choice_cmd)) return run_detect_choice(choice_args);
    if (app.got_subcommand(detect_caption_cmd)) {
      return run_detect_caption(caption_args, translator_kind, translator_url, pivot,
                                translation_cache);
    }
    if (app.got_subcommand(probe_cmd)) return run_probe_cmd(probe_args, no_idk);
    if (app.got_subcommand(simulate_cmd)) {
      return run_simulate(sim_task, sim_ps, sim_q, sim_qbt, sim_n, sim_seed, sim_m, sim_memory,
                          sim_out);
    }
    if (app.got_subcommand(similarity_cmd)) {
      return run_similarity(pairs_path, semantic_path, sim_out_prefix);
    }
    if (app.got_subcommand(report_cmd)) {
      return run_report(report_in, report_format, report_out);
    }
  } catch (const RunAbortedError& e) {
    std::cerr << "run aborted: " << e.what() << "\n";
    for (const auto& [reason, count] : e.skip_counts) {
      std::cerr << "  " << reason << "=" << count << "\n";
    }
    return 2;
  } catch (const AuthError& e) {
    std::cerr << "auth error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
