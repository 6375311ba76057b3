#pragma once

#include <cstdint>
#include <vector>

#include "benchaudit/dataset.hpp"
#include "benchaudit/gateway.hpp"
#include "benchaudit/metrics.hpp"
#include "benchaudit/rational.hpp"

namespace benchaudit {

// Text-only probing of image-required questions. Abstentions ("I don't
// know") are first-class here, unlike in the detection pipelines.
struct ProbeReport {
  std::int64_t n = 0;
  std::int64_t correct = 0;
  std::int64_t incorrect = 0;
  std::int64_t idk_count = 0;
  std::int64_t unparseable_count = 0;
  Rational accuracy{0, 1};  // abstentions graded not-correct
  bool instruction_used = true;
  std::string model_id;
};

// Question + options, image withheld even when the instance has one.
// with_idk appends the uncertainty clause as the final line.
ModelRequest build_probe_prompt(const ChoiceInstance& instance, bool with_idk,
                                const PromptTemplate& tmpl);

ProbeReport run_probe(const std::vector<ChoiceInstance>& instances, EndpointClient& client,
                      ResponseCache* cache, bool with_idk, const PromptTemplate& tmpl,
                      const std::string& model_id, int concurrency = 4,
                      const RetryPolicy& retry = {});

}  // namespace benchaudit
