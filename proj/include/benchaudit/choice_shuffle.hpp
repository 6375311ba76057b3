#pragma once

#include <cstdint>
#include <vector>

#include "benchaudit/dataset.hpp"
#include "benchaudit/prompt.hpp"

namespace benchaudit {

// Option-order perturbation of one instance. The correct option keeps its
// text but is guaranteed to sit at a different index.
struct ShuffledChoice {
  ChoiceInstance original;
  std::vector<std::string> shuffled_options;
  int new_answer_index = 0;
  std::vector<int> permutation;  // permutation[old_index] = new_index
  std::uint64_t rng_seed = 0;
};

// Rejection-samples uniform permutations until the correct option moves,
// so the distribution is uniform over admissible permutations.
// Deterministic in (instance, seed). Throws for fewer than 2 options.
ShuffledChoice shuffle_options(const ChoiceInstance& instance, std::uint64_t seed);

// Question + lettered options rendered into the template. The image and
// question bytes are identical between the original and shuffled form.
ModelRequest build_choice_prompt(const ChoiceInstance& instance, const PromptTemplate& tmpl);
ModelRequest build_choice_prompt(const ShuffledChoice& shuffled, const PromptTemplate& tmpl);

}  // namespace benchaudit
