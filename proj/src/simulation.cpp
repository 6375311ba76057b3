#include "benchaudit/simulation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace benchaudit {

namespace {

double draw(const MemorizerSpec& spec, std::string_view tag, const std::string& id,
            std::string_view form) {
  return unit_interval(derive_seed(spec.seed, {tag, id, form}));
}

std::string wrong_slot_token(const std::string& keyword) {
  return normalize_token(keyword) == "mismatch" ? "offtoken" : "mismatch";
}

std::string letter_reply(int index) { return std::string(1, option_letter(index)); }

}  // namespace

std::string memory_kind_name(MemoryKind kind) {
  return kind == MemoryKind::position ? "position" : "text";
}

bool is_memorized(const MemorizerSpec& spec, const std::string& instance_id) {
  return unit_interval(derive_seed(spec.seed, {"assign", instance_id})) < spec.leak_fraction;
}

std::string memorizer_choice_response(const ChoiceFormInfo& form, const MemorizerSpec& spec) {
  if (form.option_count < 2) throw std::invalid_argument("memorizer: option_count < 2");
  const std::string_view form_tag = form.perturbed ? "pert" : "orig";

  if (is_memorized(spec, form.id)) {
    if (!form.perturbed || spec.memory == MemoryKind::text) {
      return letter_reply(form.correct_index);
    }
    // Position memory: the letter where the answer used to sit, which the
    // shuffle guarantees is now wrong.
    return letter_reply(form.original_index);
  }

  if (draw(spec, "know", form.id, form_tag) < spec.base_accuracy) {
    return letter_reply(form.correct_index);
  }
  int wrong = static_cast<int>(draw(spec, "wrong", form.id, form_tag) *
                               static_cast<double>(form.option_count - 1));
  if (wrong >= form.option_count - 1) wrong = form.option_count - 2;
  if (wrong >= form.correct_index) ++wrong;
  return letter_reply(wrong);
}

std::string memorizer_slot_response(const SlotFormInfo& form, const MemorizerSpec& spec) {
  const std::string_view form_tag = form.perturbed ? "pert" : "orig";

  if (is_memorized(spec, form.id)) {
    if (!form.perturbed || spec.memory == MemoryKind::text) return form.keyword;
    if (draw(spec, "guess", form.id, form_tag) < spec.bt_guess_accuracy) return form.keyword;
    return wrong_slot_token(form.keyword);
  }

  if (draw(spec, "know", form.id, form_tag) < spec.base_accuracy) return form.keyword;
  return wrong_slot_token(form.keyword);
}

namespace {
// Distinct instances can collapse to the same masked prompt text; the
// image reference is what still tells them apart, exactly as it would
// for a live endpoint.
std::string form_key(const std::string& form_tag, const std::optional<std::string>& image_ref,
                     const std::string& text) {
  return form_tag + "\x1f" + (image_ref ? *image_ref : "") + "\x1f" + text;
}
}  // namespace

void MemorizerEndpoint::register_choice_form(const ModelRequest& request, ChoiceFormInfo info) {
  std::lock_guard<std::mutex> lock(mu_);
  choice_forms_[form_key(info.perturbed ? "pert" : "orig", request.image_ref, request.text)] =
      std::move(info);
}

void MemorizerEndpoint::register_slot_form(const ModelRequest& request, SlotFormInfo info) {
  std::lock_guard<std::mutex> lock(mu_);
  slot_forms_[form_key(info.perturbed ? "pert" : "orig", request.image_ref, request.text)] =
      std::move(info);
}

std::string MemorizerEndpoint::complete(const ModelRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  ++calls_;
  const std::string key = form_key(request.form_tag, request.image_ref, request.text);
  if (auto it = choice_forms_.find(key); it != choice_forms_.end()) {
    return memorizer_choice_response(it->second, spec_);
  }
  if (auto it = slot_forms_.find(key); it != slot_forms_.end()) {
    return memorizer_slot_response(it->second, spec_);
  }
  throw FatalError("memorizer endpoint received an unregistered prompt");
}

std::int64_t MemorizerEndpoint::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

ExpectedMetrics expected_metrics(const MemorizerSpec& spec, std::int64_t n) {
  const double p = spec.leak_fraction;
  const double q = spec.base_accuracy;

  double v1 = 0.0;  // P(correct before)
  double v2 = 0.0;  // P(correct after)
  double joint = 0.0;  // P(correct before AND after)
  double phi = 0.0;   // P(correct before AND not after)

  if (spec.task_kind == TaskKind::multi_choice) {
    v1 = p + (1 - p) * q;
    if (spec.memory == MemoryKind::position) {
      v2 = (1 - p) * q;
      joint = (1 - p) * q * q;
      phi = p + (1 - p) * q * (1 - q);
    } else {  // text memory: leaked answers survive the shuffle
      v2 = p + (1 - p) * q;
      joint = p + (1 - p) * q * q;
      phi = (1 - p) * q * (1 - q);
    }
  } else {
    const double qbt = spec.memory == MemoryKind::text ? 1.0 : spec.bt_guess_accuracy;
    v1 = p + (1 - p) * q;
    v2 = p * qbt + (1 - p) * q;
    joint = p * qbt + (1 - p) * q * q;
    phi = p * (1 - qbt) + (1 - p) * q * (1 - q);
  }

  ExpectedMetrics out;
  out.cr = 100.0 * v1;
  out.pcr = 100.0 * v2;
  out.delta = out.pcr - out.cr;
  out.phi = 100.0 * phi;
  if (n > 0) {
    const double nd = static_cast<double>(n);
    out.se_cr = 100.0 * std::sqrt(v1 * (1 - v1) / nd);
    out.se_pcr = 100.0 * std::sqrt(v2 * (1 - v2) / nd);
    // Var(CR_i - PCR_i) for Bernoulli pairs with joint success probability.
    const double var_diff =
        v1 * (1 - v1) + v2 * (1 - v2) - 2.0 * (joint - v1 * v2);
    out.se_delta = 100.0 * std::sqrt(var_diff > 0 ? var_diff / nd : 0.0);
  }
  return out;
}

std::vector<ChoiceInstance> make_synthetic_choice_dataset(std::int64_t n, int option_count,
                                                          std::uint64_t seed) {
  if (option_count < 2 || option_count > 26) {
    throw std::invalid_argument("make_synthetic_choice_dataset: option_count out of range");
  }
  std::vector<ChoiceInstance> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    ChoiceInstance inst;
    inst.id = "sim-" + std::to_string(i);
    inst.question = "Synthetic item " + std::to_string(i) + ": which label is flagged?";
    for (int j = 0; j < option_count; ++j) {
      inst.options.push_back("label-" + std::to_string(i) + "-" + std::to_string(j));
    }
    SplitMix64 rng(derive_seed(seed, {"answer", inst.id}));
    inst.answer_index =
        static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(option_count)));
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<CaptionInstance> make_synthetic_caption_dataset(std::int64_t n, std::uint64_t seed) {
  static const std::vector<std::string> adjectives = {"red",   "blue",  "green", "small",
                                                      "large", "old",   "young", "bright",
                                                      "dark",  "quiet"};
  static const std::vector<std::string> nouns = {"dog",  "cat",   "horse", "bike",  "car",
                                                 "boat", "tree",  "house", "bird",  "train",
                                                 "lake", "field", "bridge", "tower", "garden"};
  std::vector<CaptionInstance> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    CaptionInstance inst;
    inst.id = "sim-" + std::to_string(i);
    inst.image_ref = "synthetic://image/" + std::to_string(i);
    SplitMix64 rng(derive_seed(seed, {"caption", inst.id}));
    const std::string& adj = adjectives[uniform_below(rng, adjectives.size())];
    const std::string& noun1 = nouns[uniform_below(rng, nouns.size())];
    const std::string& noun2 = nouns[uniform_below(rng, nouns.size())];
    inst.caption = "A " + adj + " " + noun1 + " near the " + noun2 + ".";
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<SweepRow> run_sensitivity_sweep(const std::vector<double>& leak_fractions,
                                            const SweepConfig& cfg) {
  for (std::size_t i = 1; i < leak_fractions.size(); ++i) {
    if (leak_fractions[i] < leak_fractions[i - 1]) {
      throw std::invalid_argument("run_sensitivity_sweep: leak fractions must be ascending");
    }
  }

  RunConfig rc;
  rc.endpoint.model_id = "memorizer";
  rc.seed = derive_seed(cfg.seed, {"run"});
  rc.concurrency = cfg.concurrency;
  rc.failure_budget = 0.0;
  rc.timestamp = "1970-01-01T00:00:00Z";
  rc.translator_kind = "identity";

  DatasetManifest manifest;
  manifest.name = cfg.task_kind == TaskKind::multi_choice ? "synthetic-choice"
                                                          : "synthetic-caption";
  manifest.split = "sim";
  manifest.task_kind = cfg.task_kind;
  manifest.size = cfg.n;
  manifest.sample_count = cfg.n;

  std::vector<ChoiceInstance> choice_data;
  std::vector<CaptionInstance> caption_data;
  if (cfg.task_kind == TaskKind::multi_choice) {
    choice_data = make_synthetic_choice_dataset(cfg.n, cfg.option_count, cfg.seed);
  } else {
    caption_data = make_synthetic_caption_dataset(cfg.n, cfg.seed);
  }

  RuleTagger tagger;
  std::vector<SweepRow> rows;
  rows.reserve(leak_fractions.size());

  for (double p : leak_fractions) {
    MemorizerSpec spec;
    spec.leak_fraction = p;
    spec.base_accuracy = cfg.base_accuracy;
    spec.bt_guess_accuracy = cfg.bt_guess_accuracy;
    spec.task_kind = cfg.task_kind;
    spec.memory = cfg.memory;
    char pbuf[32];
    std::snprintf(pbuf, sizeof(pbuf), "%.6f", p);
    spec.seed = derive_seed(cfg.seed, {"memorizer", pbuf});

    MemorizerEndpoint endpoint(spec);
    DetectResult result;

    if (cfg.task_kind == TaskKind::multi_choice) {
      for (const auto& inst : choice_data) {
        ChoiceForms forms = build_choice_forms(inst, rc);
        endpoint.register_choice_form(
            forms.before_req,
            ChoiceFormInfo{inst.id, static_cast<int>(inst.options.size()), inst.answer_index,
                           inst.answer_index, false});
        endpoint.register_choice_form(
            forms.after_req,
            ChoiceFormInfo{inst.id, static_cast<int>(inst.options.size()),
                           forms.shuffled.new_answer_index, inst.answer_index, true});
      }
      result = detect_choice(choice_data, manifest, rc, endpoint);
    } else {
      auto translator = make_identity_translator();
      for (const auto& inst : caption_data) {
        CaptionForms forms = build_caption_forms(inst, rc, *translator, tagger, nullptr);
        if (forms.pair.skipped) continue;
        endpoint.register_slot_form(
            forms.before_req,
            SlotFormInfo{inst.id, forms.pair.masked_original.masked_keyword, false});
        endpoint.register_slot_form(
            forms.after_req,
            SlotFormInfo{inst.id, forms.pair.masked_bt.masked_keyword, true});
      }
      auto run_translator = make_identity_translator();
      result = detect_caption(caption_data, manifest, rc, endpoint, *run_translator, tagger,
                              nullptr);
    }

    SweepRow row;
    row.leak_fraction = p;
    row.report = result.report;
    row.expected = expected_metrics(spec, result.report.n_evaluated);
    auto z_of = [](double observed, double exp, double se) {
      if (se <= 0.0) return observed == exp ? 0.0 : std::numeric_limits<double>::infinity();
      return (observed - exp) / se;
    };
    row.z_cr = z_of(row.report.cr.to_double(), row.expected.cr, row.expected.se_cr);
    row.z_pcr = z_of(row.report.pcr.to_double(), row.expected.pcr, row.expected.se_pcr);
    row.z_delta = z_of(row.report.delta.to_double(), row.expected.delta, row.expected.se_delta);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "p,n,cr,pcr,delta,phi,delta_expected,se_delta,z_delta,degree\n";
  for (const auto& row : rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%.4f,%lld,%s,%s,%s,%s,%.4f,%.4f,%.4f,%s\n",
                  row.leak_fraction, static_cast<long long>(row.report.n_evaluated),
                  row.report.cr.to_fixed1().c_str(), row.report.pcr.to_fixed1().c_str(),
                  row.report.delta.to_fixed1().c_str(), row.report.phi.to_fixed1().c_str(),
                  row.expected.delta, row.expected.se_delta, row.z_delta,
                  degree_name(row.report.degree).c_str());
    out << line;
  }
  return out.str();
}

void write_sweep_outputs(const std::string& out_prefix, const std::vector<SweepRow>& rows) {
  {
    std::ofstream csv(out_prefix + ".csv");
    if (!csv) throw std::invalid_argument("cannot write sweep csv: " + out_prefix + ".csv");
    csv << sweep_csv(rows);
  }
  std::ofstream jsonl(out_prefix + ".jsonl");
  if (!jsonl) throw std::invalid_argument("cannot write sweep records: " + out_prefix + ".jsonl");
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j["p"] = row.leak_fraction;
    j["n"] = row.report.n_evaluated;
    j["cr"] = row.report.cr.to_double();
    j["pcr"] = row.report.pcr.to_double();
    j["delta"] = row.report.delta.to_double();
    j["phi"] = row.report.phi.to_double();
    j["expected"] = {{"cr", row.expected.cr},
                     {"pcr", row.expected.pcr},
                     {"delta", row.expected.delta},
                     {"phi", row.expected.phi}};
    j["se"] = {{"cr", row.expected.se_cr},
               {"pcr", row.expected.se_pcr},
               {"delta", row.expected.se_delta}};
    j["z"] = {{"cr", row.z_cr}, {"pcr", row.z_pcr}, {"delta", row.z_delta}};
    j["degree"] = degree_name(row.report.degree);
    jsonl << j.dump() << "\n";
  }
}

}  // namespace benchaudit
