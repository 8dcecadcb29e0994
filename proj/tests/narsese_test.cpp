#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <variant>

#include "narsrl/narsese.hpp"
#include "narsrl/rng.hpp"

using namespace narsrl;
using namespace narsrl::narsese;

namespace {

std::string random_token(Rng& rng, bool allow_op) {
  static const std::string chars =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
  const int len = 1 + rng.uniform_index(12);
  std::string out;
  if (allow_op && rng.bernoulli(0.3)) out += '^';
  for (int i = 0; i < len; ++i) out += chars[rng.uniform_index(static_cast<int>(chars.size()))];
  return out;
}

Sentence random_sentence(Rng& rng) {
  Sentence s;
  s.term.name = random_token(rng, false);
  s.punctuation = rng.bernoulli(0.5) ? Punctuation::judgment : Punctuation::goal;
  s.present = rng.bernoulli(0.8);
  if (rng.bernoulli(0.4)) s.truth = TruthAnnotation{rng.uniform01(), rng.uniform01()};
  return s;
}

}  // namespace

TEST_CASE("event and goal emission") {
  CHECK(emit_event("138_-4") == "138_-4. :|:");
  CHECK(emit_event("36") == "36. :|:");
  CHECK(emit_event("G") == "G. :|:");
  CHECK(emit_goal() == "G! :|:");
  CHECK(emit_goal() == emit_goal());
  CHECK(emit_setopname(1, "^left") == "*setopname 1 ^left");

  CHECK_THROWS(emit_event("two tokens"));
  CHECK_THROWS(emit_event(""));
  CHECK_THROWS(emit_event("^up"));  // operations are not observable states
}

TEST_CASE("goal line round-trips") {
  const ParseResult r = parse_line(emit_goal());
  REQUIRE(std::holds_alternative<Sentence>(r));
  const Sentence& s = std::get<Sentence>(r);
  CHECK(s.term.name == kGoalTerm);
  CHECK(s.punctuation == Punctuation::goal);
  CHECK(s.present);
  CHECK(!s.truth.has_value());
}

TEST_CASE("line classification") {
  CHECK(std::holds_alternative<Sentence>(parse_line("138_-4. :|:")));
  const auto ev = std::get<Sentence>(parse_line("138_-4. :|:"));
  CHECK(ev.term.name == "138_-4");
  CHECK(ev.punctuation == Punctuation::judgment);
  CHECK(ev.present);

  const ParseResult reg = parse_line("*setopname 1 ^left");
  REQUIRE(std::holds_alternative<OpRegistration>(reg));
  CHECK(std::get<OpRegistration>(reg) == OpRegistration{1, "^left"});

  const ParseResult exec = parse_line("^left executed with args");
  REQUIRE(std::holds_alternative<ExecutionReport>(exec));
  CHECK(std::get<ExecutionReport>(exec).op == "^left");

  // ONA prefixes some execution lines with bookkeeping; the op token still
  // has to be followed by "executed".
  const ParseResult exec2 = parse_line("EXE ^right executed with args (0.9)");
  REQUIRE(std::holds_alternative<ExecutionReport>(exec2));
  CHECK(std::get<ExecutionReport>(exec2).op == "^right");

  CHECK(std::holds_alternative<Unrecognized>(parse_line("Input: performing inference")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("^left")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("answers: none")));

  // Malformed sentence tails are errors, not noise.
  CHECK(std::holds_alternative<ParseError>(parse_line("36. :|x")));
  CHECK(std::holds_alternative<ParseError>(parse_line("36. :|: {1.5 0.9}")));
  CHECK(std::holds_alternative<ParseError>(parse_line("36. :|: {0.9}")));
  CHECK(std::holds_alternative<ParseError>(parse_line("36. :|: trailing")));
}

TEST_CASE("setopname needs a positive index and an op token") {
  CHECK(std::holds_alternative<Unrecognized>(parse_line("*setopname 0 ^left")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("*setopname x ^left")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("*setopname 1 left")));
  CHECK(std::holds_alternative<Unrecognized>(parse_line("*setopname 1")));
}

TEST_CASE("truth annotations parse back to the same doubles") {
  Sentence s;
  s.term.name = "36";
  s.present = true;
  s.truth = TruthAnnotation{0.875, 0.5};
  const std::string line = serialize(s);
  CHECK(line == "36. :|: {0.875 0.5}");
  CHECK(std::get<Sentence>(parse_line(line)) == s);
}

TEST_CASE("round-trip identity over generated sentences") {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const Sentence s = random_sentence(rng);
    const ParseResult r = parse_line(serialize(s));
    REQUIRE(std::holds_alternative<Sentence>(r));
    CHECK(std::get<Sentence>(r) == s);
  }
}

TEST_CASE("fuzz: arbitrary lines never abort and classify exactly once") {
  Rng rng(77);
  for (int i = 0; i < 100000; ++i) {
    std::string line;
    const int len = rng.uniform_index(40);
    for (int j = 0; j < len; ++j) {
      // Printable junk plus tabs; newlines cannot occur in a line.
      const int c = rng.uniform_index(96);
      line += c == 95 ? '\t' : static_cast<char>(32 + c);
    }
    const ParseResult r = parse_line(line);
    CHECK(r.index() != std::variant_npos);
  }
}

TEST_CASE("fuzz: grammar-adjacent noise") {
  Rng rng(78);
  const std::string pieces[] = {"36.", "G!", ":|:", "{0.5", "0.5}", "^up",
                                "executed", "*setopname", "1", "-", "{", "}"};
  for (int i = 0; i < 20000; ++i) {
    std::string line;
    const int n = 1 + rng.uniform_index(5);
    for (int j = 0; j < n; ++j) {
      if (j) line += ' ';
      line += pieces[rng.uniform_index(12)];
    }
    (void)parse_line(line);
  }
}

TEST_CASE("term token validity") {
  CHECK(valid_term_token("138_-4"));
  CHECK(valid_term_token("^left"));
  CHECK(valid_term_token("G"));
  CHECK(!valid_term_token(""));
  CHECK(!valid_term_token("^"));
  CHECK(!valid_term_token("a^b"));
  CHECK(!valid_term_token("a b"));
  CHECK(!valid_term_token("<a-->b>"));
}
