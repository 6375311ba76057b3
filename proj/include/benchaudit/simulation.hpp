#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "benchaudit/dataset.hpp"
#include "benchaudit/gateway.hpp"
#include "benchaudit/metrics.hpp"
#include "benchaudit/runner.hpp"

namespace benchaudit {

// position: a leaked multi-choice instance is answered by the remembered
// option index, so any shuffle breaks it. text: the remembered option text
// is found wherever it moved, which makes leakage invisible to the
// detector; shipped as a false-negative demonstrator.
enum class MemoryKind { position, text };

std::string memory_kind_name(MemoryKind kind);

// Synthetic contaminated model: a leaked fraction p is answered from
// memory, the rest with base accuracy q. Caption memorizers guess the
// perturbed slot with probability q_bt.
struct MemorizerSpec {
  double leak_fraction = 0.0;     // p
  double base_accuracy = 0.0;     // q
  double bt_guess_accuracy = 0.0; // q' (caption only)
  TaskKind task_kind = TaskKind::multi_choice;
  std::uint64_t seed = 0;
  MemoryKind memory = MemoryKind::position;
};

// Pure function of (seed, id): reruns reproduce identical assignments.
bool is_memorized(const MemorizerSpec& spec, const std::string& instance_id);

struct ChoiceFormInfo {
  std::string id;
  int option_count = 0;
  int correct_index = 0;   // answer position in this form
  int original_index = 0;  // answer position in the canonical form
  bool perturbed = false;
};

struct SlotFormInfo {
  std::string id;
  std::string keyword;  // this form's masked keyword
  bool perturbed = false;
};

std::string memorizer_choice_response(const ChoiceFormInfo& form, const MemorizerSpec& spec);
std::string memorizer_slot_response(const SlotFormInfo& form, const MemorizerSpec& spec);

// In-process endpoint speaking the gateway's request/response contract.
// The harness registers each prompt it is about to issue together with
// that form's ground truth.
class MemorizerEndpoint : public EndpointClient {
 public:
  explicit MemorizerEndpoint(MemorizerSpec spec) : spec_(spec) {}

  void register_choice_form(const ModelRequest& request, ChoiceFormInfo info);
  void register_slot_form(const ModelRequest& request, SlotFormInfo info);
  std::string complete(const ModelRequest& request) override;

  const MemorizerSpec& spec() const { return spec_; }
  std::int64_t calls() const;

 private:
  MemorizerSpec spec_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, ChoiceFormInfo> choice_forms_;
  std::unordered_map<std::string, SlotFormInfo> slot_forms_;
  std::int64_t calls_ = 0;
};

// Closed-form expectations and binomial standard errors for a memorizer
// run of n instances. SE(delta) carries the CR/PCR covariance induced by
// the shared memorized assignment.
struct ExpectedMetrics {
  double cr = 0.0;
  double pcr = 0.0;
  double delta = 0.0;
  double phi = 0.0;
  double se_cr = 0.0;
  double se_pcr = 0.0;
  double se_delta = 0.0;
};

ExpectedMetrics expected_metrics(const MemorizerSpec& spec, std::int64_t n);

std::vector<ChoiceInstance> make_synthetic_choice_dataset(std::int64_t n, int option_count,
                                                          std::uint64_t seed);
std::vector<CaptionInstance> make_synthetic_caption_dataset(std::int64_t n, std::uint64_t seed);

struct SweepRow {
  double leak_fraction = 0.0;
  ContaminationReport report;
  ExpectedMetrics expected;
  double z_cr = 0.0;
  double z_pcr = 0.0;
  double z_delta = 0.0;
};

struct SweepConfig {
  TaskKind task_kind = TaskKind::multi_choice;
  double base_accuracy = 0.4;      // q
  double bt_guess_accuracy = 0.0;  // q'
  MemoryKind memory = MemoryKind::position;
  int option_count = 4;
  std::int64_t n = 10000;
  std::uint64_t seed = 0;
  int concurrency = 2;
};

// Runs the real pipeline (perturbation, gateway with the in-process
// endpoint, metrics) once per leak fraction.
std::vector<SweepRow> run_sensitivity_sweep(const std::vector<double>& leak_fractions,
                                            const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);
void write_sweep_outputs(const std::string& out_prefix, const std::vector<SweepRow>& rows);

}  // namespace benchaudit
