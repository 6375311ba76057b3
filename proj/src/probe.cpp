#include "benchaudit/probe.hpp"

#include <stdexcept>

#include "benchaudit/parallel.hpp"

namespace benchaudit {

ModelRequest build_probe_prompt(const ChoiceInstance& instance, bool with_idk,
                                const PromptTemplate& tmpl) {
  if (tmpl.kind == PromptKind::slot) {
    throw TemplateError("build_probe_prompt requires a question template");
  }
  ModelRequest req;
  req.text = render_template(tmpl, instance.question + "\n" +
                                       render_options_block(instance.options));
  if (with_idk) {
    req.text += "\n";
    req.text += kUncertaintyClause;
  }
  req.image_ref = std::nullopt;  // probe contract: never send the image
  return req;
}

ProbeReport run_probe(const std::vector<ChoiceInstance>& instances, EndpointClient& client,
                      ResponseCache* cache, bool with_idk, const PromptTemplate& tmpl,
                      const std::string& model_id, int concurrency, const RetryPolicy& retry) {
  if (instances.empty()) throw std::invalid_argument("run_probe: no instances");

  std::vector<std::string> raws(instances.size());
  std::vector<std::string> errors(instances.size());
  parallel_for(instances.size(), concurrency, [&](std::size_t i) {
    ModelRequest req = build_probe_prompt(instances[i], with_idk, tmpl);
    req.model_id = model_id;
    try {
      raws[i] = query(req, client, cache, retry);
    } catch (const GatewayError& e) {
      errors[i] = e.what();
    }
  });

  ProbeReport report;
  report.instruction_used = with_idk;
  report.model_id = model_id;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!errors[i].empty()) {
      throw FatalError("probe query failed for instance '" + instances[i].id +
                       "': " + errors[i]);
    }
    ++report.n;
    if (is_abstention(raws[i])) {
      ++report.idk_count;
      continue;
    }
    Verdict v = parse_choice_answer(raws[i], instances[i].options, instances[i].answer_index);
    switch (v.outcome) {
      case Outcome::correct: ++report.correct; break;
      case Outcome::incorrect: ++report.incorrect; break;
      case Outcome::abstain: ++report.idk_count; break;
      case Outcome::unparseable: ++report.unparseable_count; break;
    }
  }
  report.accuracy = Rational::percent(report.correct, report.n);
  return report;
}

}  // namespace benchaudit
