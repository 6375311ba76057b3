#include "doctest.h"

#include <string>

#include "benchaudit/probe.hpp"

using namespace benchaudit;

namespace {

std::vector<ChoiceInstance> image_required_instances(int n) {
  std::vector<ChoiceInstance> out;
  for (int i = 0; i < n; ++i) {
    ChoiceInstance inst;
    inst.id = "p" + std::to_string(i);
    inst.image_ref = "img/" + inst.id + ".png";  // probe must drop this
    inst.question = "Item " + std::to_string(i) + ": what is shown?";
    inst.options = {"alpha", "beta", "gamma", "delta"};
    inst.answer_index = i % 4;
    out.push_back(inst);
  }
  return out;
}

int index_from_prompt(const std::string& text) {
  const std::string tag = "Item ";
  auto pos = text.find(tag);
  if (pos == std::string::npos) throw FatalError("prompt missing item tag");
  return std::stoi(text.substr(pos + tag.size()));
}

}  // namespace

TEST_CASE("probe prompts omit the image and append the clause verbatim") {
  auto instances = image_required_instances(1);
  const auto& tmpl = default_template(PromptKind::multi_choice);

  auto with = build_probe_prompt(instances[0], true, tmpl);
  auto without = build_probe_prompt(instances[0], false, tmpl);

  CHECK(!with.image_ref.has_value());
  CHECK(!without.image_ref.has_value());

  const std::string clause = "If you do not know the answer, output I don't know";
  REQUIRE(with.text.size() > clause.size());
  CHECK(with.text.substr(with.text.size() - clause.size()) == clause);
  CHECK(without.text.find(clause) == std::string::npos);
  CHECK(with.text.substr(0, without.text.size()) == without.text);
}

TEST_CASE("all-abstaining model scores zero with full idk count") {
  class AlwaysIdk : public EndpointClient {
   public:
    std::string complete(const ModelRequest&) override { return "I don't know."; }
  } client;
  auto instances = image_required_instances(25);
  auto report = run_probe(instances, client, nullptr, true,
                          default_template(PromptKind::multi_choice), "m", 2);
  CHECK(report.n == 25);
  CHECK(report.accuracy == Rational(0, 1));
  CHECK(report.idk_count == 25);
  CHECK(report.correct + report.incorrect + report.idk_count + report.unparseable_count ==
        report.n);
}

TEST_CASE("probe tallies add up and accuracy ignores abstentions") {
  // Scripted: items 0-2 correct, 3-4 abstain, 5-9 wrong.
  class Scripted : public EndpointClient {
   public:
    std::string complete(const ModelRequest& req) override {
      const int i = index_from_prompt(req.text);
      if (i < 3) return std::string(1, static_cast<char>('A' + i % 4));
      if (i < 5) return "I don't know";
      return std::string(1, static_cast<char>('A' + (i + 1) % 4));
    }
  } client;
  auto instances = image_required_instances(10);
  auto report = run_probe(instances, client, nullptr, true,
                          default_template(PromptKind::multi_choice), "m", 1);
  CHECK(report.n == 10);
  CHECK(report.correct == 3);
  CHECK(report.idk_count == 2);
  CHECK(report.accuracy == Rational(30, 1));
  CHECK(report.correct + report.incorrect + report.idk_count + report.unparseable_count ==
        report.n);
  CHECK(report.instruction_used);
}

TEST_CASE("uncertainty clause can only lower accuracy on consistent mocks") {
  // Without the clause the model guesses; with it, the guesses abstain.
  class GuessyModel : public EndpointClient {
   public:
    std::string complete(const ModelRequest& req) override {
      const int i = index_from_prompt(req.text);
      const bool clause = req.text.find("I don't know") != std::string::npos;
      const bool knows = i < 30;
      const bool lucky = i >= 30 && i < 41;
      if (knows) return std::string(1, static_cast<char>('A' + i % 4));
      if (clause) return "I don't know";
      if (lucky) return std::string(1, static_cast<char>('A' + i % 4));
      return std::string(1, static_cast<char>('A' + (i + 1) % 4));
    }
  } client;
  auto instances = image_required_instances(100);
  const auto& tmpl = default_template(PromptKind::multi_choice);
  auto with = run_probe(instances, client, nullptr, true, tmpl, "m", 2);
  auto without = run_probe(instances, client, nullptr, false, tmpl, "m", 2);
  CHECK(with.accuracy.to_double() <= without.accuracy.to_double());
  CHECK(with.accuracy == Rational(30, 1));
  CHECK(without.accuracy == Rational(41, 1));
  CHECK(with.idk_count == 70);
  CHECK(without.idk_count == 0);
}
