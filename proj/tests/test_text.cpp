#include "doctest.h"

#include "benchaudit/rational.hpp"
#include "benchaudit/text.hpp"

using namespace benchaudit;

TEST_CASE("tokenize splits on punctuation and whitespace") {
  auto tokens = tokenize("A man, riding a bike-path. 'quoted'");
  CHECK(tokens == std::vector<std::string>{"A", "man", "riding", "a", "bike-path", "quoted"});
  CHECK(tokenize("   ").empty());
  CHECK(tokenize("the of and").size() == 3);
}

TEST_CASE("find_token_span respects word boundaries") {
  auto span = find_token_span("the catalog has a cat inside", "cat");
  REQUIRE(span.has_value());
  CHECK(span->begin == 18);
  CHECK(span->end == 21);
  CHECK(!find_token_span("catalog", "cat").has_value());
  auto first = find_token_span("a dog chases a dog", "dog");
  REQUIRE(first.has_value());
  CHECK(first->begin == 2);
}

TEST_CASE("normalize_text lowers, trims punctuation, collapses spaces") {
  CHECK(normalize_text("  The  Answer.  ") == "the answer");
  CHECK(normalize_text("\"Granite.\"") == "granite");
  CHECK(normalize_text("") == "");
}

TEST_CASE("normalize_token strips edges only") {
  CHECK(normalize_token("Bike.") == "bike");
  CHECK(normalize_token("'woods'") == "woods");
  CHECK(normalize_token("...") == "");
}

TEST_CASE("fnv1a64 is stable and part-sensitive") {
  CHECK(fnv1a64("abc") == fnv1a64("abc"));
  CHECK(fnv1a64({"ab", "c"}) != fnv1a64({"a", "bc"}));
  CHECK(derive_seed(1, {"x"}) != derive_seed(2, {"x"}));
}

TEST_CASE("uniform_below stays in range and varies") {
  SplitMix64 rng(42);
  bool saw_nonzero = false;
  for (int i = 0; i < 1000; ++i) {
    auto v = uniform_below(rng, 7);
    CHECK(v < 7);
    if (v != 0) saw_nonzero = true;
  }
  CHECK(saw_nonzero);
}

TEST_CASE("unit_interval maps into [0,1)") {
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    double u = unit_interval(rng.next());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("base64 encodes classic vectors") {
  CHECK(base64_encode("") == "");
  CHECK(base64_encode("f") == "Zg==");
  CHECK(base64_encode("fo") == "Zm8=");
  CHECK(base64_encode("foo") == "Zm9v");
  CHECK(base64_encode("foobar") == "Zm9vYmFy");
}

TEST_CASE("rational arithmetic is exact") {
  Rational cr = Rational::percent(703, 1000);
  Rational pcr = Rational::percent(650, 1000);
  Rational d = pcr - cr;
  CHECK(d == Rational(-53, 10));
  CHECK(d.to_fixed1() == "-5.3");
  CHECK(cr.to_fixed1() == "70.3");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 5) == Rational(-20, 100));
  CHECK((-Rational(1, 5)).to_double() == doctest::Approx(-0.2));
  CHECK(Rational(0, 5).to_fixed1() == "0.0");
  CHECK(Rational(1, 100).to_fixed1() == "0.0");
  CHECK(Rational(5, 100).to_fixed1() == "0.1");  // half away from zero
  CHECK(Rational(-5, 100).to_fixed1() == "-0.1");
  CHECK_THROWS(Rational(1, 0));
}
