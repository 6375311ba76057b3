#include "benchaudit/choice_shuffle.hpp"

#include <stdexcept>

namespace benchaudit {

namespace {

ModelRequest build_request(const ChoiceInstance& base, const std::vector<std::string>& options,
                           const PromptTemplate& tmpl) {
  if (tmpl.kind != PromptKind::multi_choice) {
    throw TemplateError("build_choice_prompt requires a multi_choice template");
  }
  ModelRequest req;
  req.text = render_template(tmpl, base.question + "\n" + render_options_block(options));
  req.image_ref = base.image_ref;
  return req;
}

}  // namespace

ShuffledChoice shuffle_options(const ChoiceInstance& instance, std::uint64_t seed) {
  const std::size_t m = instance.options.size();
  if (m < 2) {
    throw std::invalid_argument("shuffle_options: instance '" + instance.id +
                                "' needs at least 2 options for the answer position to move");
  }

  SplitMix64 rng(seed);
  // order[new_index] = old_index
  std::vector<int> order(m);
  do {
    for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<int>(i);
    for (std::size_t i = m - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(rng, i + 1));
      std::swap(order[i], order[j]);
    }
  } while (order[static_cast<std::size_t>(instance.answer_index)] == instance.answer_index);

  ShuffledChoice out;
  out.original = instance;
  out.rng_seed = seed;
  out.shuffled_options.resize(m);
  out.permutation.assign(m, 0);
  for (std::size_t new_idx = 0; new_idx < m; ++new_idx) {
    int old_idx = order[new_idx];
    out.shuffled_options[new_idx] = instance.options[static_cast<std::size_t>(old_idx)];
    out.permutation[static_cast<std::size_t>(old_idx)] = static_cast<int>(new_idx);
    if (old_idx == instance.answer_index) out.new_answer_index = static_cast<int>(new_idx);
  }
  return out;
}

ModelRequest build_choice_prompt(const ChoiceInstance& instance, const PromptTemplate& tmpl) {
  return build_request(instance, instance.options, tmpl);
}

ModelRequest build_choice_prompt(const ShuffledChoice& shuffled, const PromptTemplate& tmpl) {
  return build_request(shuffled.original, shuffled.shuffled_options, tmpl);
}

}  // namespace benchaudit
