#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "benchaudit/gateway.hpp"
#include "benchaudit/text.hpp"
#include "test_support.hpp"

using namespace benchaudit;

namespace {

const std::vector<std::string> kOptions = {"granite", "basalt", "marble", "slate"};
constexpr int kAnswer = 2;  // letter C, "marble"

struct ParseCase {
  const char* raw;
  Outcome outcome;
};

class CountingEcho : public EndpointClient {
 public:
  std::string complete(const ModelRequest& request) override {
    ++calls;
    return request.text;
  }
  std::atomic<int> calls{0};
};

class FlakyClient : public EndpointClient {
 public:
  explicit FlakyClient(int failures) : failures_remaining(failures) {}
  std::string complete(const ModelRequest&) override {
    ++calls;
    if (failures_remaining > 0) {
      --failures_remaining;
      throw TransientError("synthetic outage");
    }
    return "ok";
  }
  int failures_remaining;
  int calls = 0;
};

}  // namespace

TEST_CASE("parse_choice_answer hand-enumerated fixture") {
  const std::vector<std::string> options = {"granite", "basalt", "marble", "slate"};
  const int answer = 2;

  // 20 cases enumerated by hand against the three-rule cascade, with the
  // correct option at index 2 (letter C, text "marble").
  const std::vector<ParseCase> cases = {
      {"C", Outcome::correct},
      {"c", Outcome::correct},
      {"C.", Outcome::correct},
      {"(C)", Outcome::correct},
      {"[C]", Outcome::correct},
      {"Answer: C", Outcome::correct},
      {"The answer is (C) marble.", Outcome::correct},
      {"The answer is C", Outcome::correct},
      {"B", Outcome::incorrect},
      {"C is correct", Outcome::correct},
      {"A bike rolls", Outcome::unparseable},
      {"marble", Outcome::correct},
      {"Marble.", Outcome::correct},
      {"It is marble", Outcome::correct},
      {"marble or basalt", Outcome::unparseable},
      {"I don't know", Outcome::abstain},
      {"I do not know.", Outcome::abstain},
      {"E", Outcome::unparseable},
      {"", Outcome::unparseable},
      {"The rock type is D) slate", Outcome::incorrect},
  };
  for (const auto& c : cases) {
    CAPTURE(c.raw);
    Verdict v = parse_choice_answer(c.raw, options, answer);
    CHECK(v.outcome == c.outcome);
    if (v.outcome == Outcome::correct) {
      REQUIRE(v.parsed.has_value());
      CHECK(*v.parsed == options[answer]);
    }
  }
}

TEST_CASE("parse_choice_answer never credits without a parsed option") {
  const std::vector<std::string> options = {"alpha", "beta"};
  for (const std::string raw : {"??", "zz top", "the answer is maybe", "42", "..."}) {
    Verdict v = parse_choice_answer(raw, options, 0);
    CHECK(v.outcome == Outcome::unparseable);
    CHECK(!v.parsed.has_value());
  }
}

TEST_CASE("parse_choice_answer handles curly apostrophes in abstentions") {
  Verdict v = parse_choice_answer("I don’t know", kOptions, kAnswer);
  CHECK(v.outcome == Outcome::abstain);
}

TEST_CASE("duplicate option texts resolve to the first index") {
  const std::vector<std::string> options = {"red", "red", "blue"};
  Verdict v = parse_choice_answer("red", options, 1);
  // first-match convention: parsed index 0, which is not the answer
  CHECK(v.outcome == Outcome::incorrect);
}

TEST_CASE("normalize_slot_answer follows the first-token contract") {
  REQUIRE(normalize_slot_answer("Bike.").has_value());
  CHECK(*normalize_slot_answer("Bike.") == "bike");
  CHECK(*normalize_slot_answer("  a  bike ") == "a");
  CHECK(*normalize_slot_answer("\"woods\"") == "woods");
  CHECK(!normalize_slot_answer("").has_value());
  CHECK(!normalize_slot_answer("  ...  ").has_value());
}

TEST_CASE("grade_slot is byte-exact after normalization") {
  CHECK(grade_slot("bike", "bike").outcome == Outcome::correct);
  CHECK(grade_slot("bicycle", "bike").outcome == Outcome::incorrect);
  CHECK(grade_slot("Woods", "woods").outcome == Outcome::correct);
  CHECK(grade_slot("", "woods").outcome == Outcome::unparseable);

  // grade(normalize(x), normalize(x)) is correct for any token
  for (const std::string token : {"Bike.", "WOODS", "fence-post", "café"}) {
    auto norm = normalize_slot_answer(token);
    REQUIRE(norm.has_value());
    CHECK(grade_slot(*norm, *norm).outcome == Outcome::correct);
  }
}

TEST_CASE("grade_slot_response applies the one-word rule") {
  CHECK(grade_slot_response("Bike.", "bike").outcome == Outcome::correct);
  CHECK(grade_slot_response("a bike", "bike").outcome == Outcome::incorrect);
  CHECK(grade_slot_response("", "bike").outcome == Outcome::unparseable);
}

TEST_CASE("is_abstention matches prefixes, parse only exact forms") {
  CHECK(is_abstention("I don't know, sorry"));
  CHECK(is_abstention("i do not know the answer"));
  CHECK(!is_abstention("knowing is half"));
  // the detect-pipeline parser treats only the bare reply as abstention
  CHECK(parse_choice_answer("I don't know, sorry", kOptions, kAnswer).outcome !=
        Outcome::abstain);
}

TEST_CASE("response cache hits bypass the endpoint") {
  CountingEcho client;
  ResponseCache cache("");
  ModelRequest req;
  req.text = "hello";
  req.model_id = "m";
  QueryStats stats;
  CHECK(query(req, client, &cache, {}, &stats) == "hello");
  CHECK(stats.cache_hit == false);
  CHECK(client.calls == 1);
  CHECK(query(req, client, &cache, {}, &stats) == "hello");
  CHECK(stats.cache_hit == true);
  CHECK(client.calls == 1);  // zero extra network calls
}

TEST_CASE("response cache persists to disk") {
  auto dir = testsupport::temp_dir("response_cache");
  const std::string path = (dir / "cache.jsonl").string();
  {
    ResponseCache cache(path);
    cache.store("k1", "v1");
  }
  ResponseCache reloaded(path);
  REQUIRE(reloaded.lookup("k1").has_value());
  CHECK(*reloaded.lookup("k1") == "v1");
  CHECK(!reloaded.lookup("k2").has_value());
}

TEST_CASE("query retries transient failures with a cap") {
  ModelRequest req;
  req.text = "x";
  req.model_id = "m";
  RetryPolicy retry;
  retry.max_attempts = 3;
  retry.base_delay_ms = 0;

  FlakyClient two_failures(2);
  QueryStats stats;
  CHECK(query(req, two_failures, nullptr, retry, &stats) == "ok");
  CHECK(stats.attempts == 3);
  CHECK(two_failures.calls == 3);

  FlakyClient three_failures(3);
  CHECK_THROWS_AS(query(req, three_failures, nullptr, retry), TransientError);
  CHECK(three_failures.calls == 3);
}

TEST_CASE("auth failures do not retry") {
  class AuthFail : public EndpointClient {
   public:
    std::string complete(const ModelRequest&) override {
      ++calls;
      throw AuthError("bad token");
    }
    int calls = 0;
  } client;
  ModelRequest req;
  req.text = "x";
  CHECK_THROWS_AS(query(req, client, nullptr, {}), AuthError);
  CHECK(client.calls == 1);
}

TEST_CASE("request cache key covers model, text, and image") {
  ModelRequest a;
  a.text = "t";
  a.model_id = "m1";
  ModelRequest b = a;
  b.model_id = "m2";
  CHECK(request_cache_key(a) != request_cache_key(b));
  ModelRequest c = a;
  c.image_ref = "data:image/png;base64,AAAA";
  CHECK(request_cache_key(a) != request_cache_key(c));
  CHECK(request_cache_key(a) == request_cache_key(a));
}

TEST_CASE("http endpoint client speaks the chat-completion contract") {
  auto dir = testsupport::temp_dir("http_gateway");
  testsupport::write_file(dir / "pic.png", "fakepngbytes");

  httplib::Server server;
  nlohmann::json last_body;
  std::string last_auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    last_body = nlohmann::json::parse(req.body);
    last_auth = req.get_header_value("Authorization");
    nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", "B"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  server.Post("/unauth/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 401;
    res.set_content("{}", "application/json");
  });
  server.Post("/flaky/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
    res.set_content("{}", "application/json");
  });

  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  setenv("BENCHAUDIT_TEST_TOKEN", "sekret", 1);

  HttpEndpointClient::Options opts;
  opts.base_url = "http://127.0.0.1:" + std::to_string(port);
  opts.auth_env = "BENCHAUDIT_TEST_TOKEN";
  HttpEndpointClient client(opts);

  ModelRequest req;
  req.text = "Please answer";
  req.model_id = "test-model";
  req.image_ref = (dir / "pic.png").string();

  CHECK(client.complete(req) == "B");
  CHECK(last_auth == "Bearer sekret");
  CHECK(last_body["model"] == "test-model");
  CHECK(last_body["temperature"] == 0);
  REQUIRE(last_body["messages"].size() == 1);
  const auto& content = last_body["messages"][0]["content"];
  REQUIRE(content.size() == 2);
  CHECK(content[0]["type"] == "image_url");
  const std::string url = content[0]["image_url"]["url"].get<std::string>();
  CHECK(url.rfind("data:image/png;base64,", 0) == 0);
  CHECK(url.find(base64_encode("fakepngbytes")) != std::string::npos);
  CHECK(content[1]["type"] == "text");
  CHECK(content[1]["text"] == "Please answer");

  // text-only request carries no image part
  ModelRequest text_only;
  text_only.text = "hi";
  text_only.model_id = "test-model";
  CHECK(client.complete(text_only) == "B");
  CHECK(last_body["messages"][0]["content"].size() == 1);

  HttpEndpointClient::Options unauth_opts = opts;
  unauth_opts.path = "/unauth/chat/completions";
  HttpEndpointClient unauth(unauth_opts);
  CHECK_THROWS_AS(unauth.complete(text_only), AuthError);

  HttpEndpointClient::Options flaky_opts = opts;
  flaky_opts.path = "/flaky/chat/completions";
  HttpEndpointClient flaky(flaky_opts);
  CHECK_THROWS_AS(flaky.complete(text_only), TransientError);

  // configured auth env var that is unset is an auth error
  HttpEndpointClient::Options missing_opts = opts;
  missing_opts.auth_env = "BENCHAUDIT_MISSING_TOKEN";
  unsetenv("BENCHAUDIT_MISSING_TOKEN");
  HttpEndpointClient missing(missing_opts);
  CHECK_THROWS_AS(missing.complete(text_only), AuthError);

  server.stop();
  server_thread.join();
}
