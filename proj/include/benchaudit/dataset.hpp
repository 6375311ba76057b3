#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "benchaudit/text.hpp"

namespace benchaudit {

enum class TaskKind { multi_choice, caption };

std::string task_kind_name(TaskKind kind);
TaskKind task_kind_from_name(const std::string& name);

// One multiple-choice datapoint: question, ordered options, 0-based answer.
struct ChoiceInstance {
  std::string id;
  std::optional<std::string> image_ref;  // path, URI, or data: base64
  std::string question;
  std::vector<std::string> options;
  int answer_index = 0;
};

// One image-caption datapoint.
struct CaptionInstance {
  std::string id;
  std::string image_ref;
  std::string caption;
};

struct DatasetManifest {
  std::string name;
  std::string split;
  TaskKind task_kind = TaskKind::multi_choice;
  std::int64_t size = 0;
  std::uint64_t sample_seed = 0;
  std::int64_t sample_count = 0;
};

// Malformed record files report the offending line and field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChoiceDataset {
  std::vector<ChoiceInstance> instances;
  DatasetManifest manifest;
};

struct CaptionDataset {
  std::vector<CaptionInstance> instances;
  DatasetManifest manifest;
};

// Line-delimited JSON records, UTF-8, one instance per line.
// Multi-choice fields: id, image (string|null), question, choices, answer_index.
// Caption fields: id, image, caption.
ChoiceDataset load_choice_dataset(const std::string& path, const std::string& name = "",
                                  const std::string& split = "");
CaptionDataset load_caption_dataset(const std::string& path, const std::string& name = "",
                                    const std::string& split = "");

// Canonical field order; load(serialize(x)) is byte-identical.
std::string serialize_choice_line(const ChoiceInstance& inst);
std::string serialize_caption_line(const CaptionInstance& inst);
void write_choice_dataset(const std::string& path, const std::vector<ChoiceInstance>& instances);
void write_caption_dataset(const std::string& path, const std::vector<CaptionInstance>& instances);

// Uniform sampling without replacement; pure function of (instances, n, seed).
template <typename T>
std::vector<T> sample(const std::vector<T>& instances, std::size_t n, std::uint64_t seed) {
  if (n > instances.size()) {
    throw std::invalid_argument("sample: n (" + std::to_string(n) + ") exceeds dataset size (" +
                                std::to_string(instances.size()) + ")");
  }
  std::vector<std::size_t> idx(instances.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(instances[idx[i]]);
  return out;
}

}  // namespace benchaudit
