#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace narsrl::narsese {

/// Token over [A-Za-z0-9_^-]; a leading '^' marks an operation and '^' is
/// allowed nowhere else.
struct Term {
  std::string name;
  bool is_operation() const { return !name.empty() && name[0] == '^'; }
  bool operator==(const Term&) const = default;
};

bool valid_term_token(std::string_view token);

enum class Punctuation { judgment, goal };

struct TruthAnnotation {
  double frequency = 1.0;
  double confidence = 0.9;
  bool operator==(const TruthAnnotation&) const = default;
};

struct Sentence {
  Term term;
  Punctuation punctuation = Punctuation::judgment;
  bool present = false;  // occurrence marker ":|:"
  std::optional<TruthAnnotation> truth;
  bool operator==(const Sentence&) const = default;
};

struct OpRegistration {
  int index = 0;  // 1-based
  std::string op;
  bool operator==(const OpRegistration&) const = default;
};

struct ExecutionReport {
  std::string op;
  bool operator==(const ExecutionReport&) const = default;
};

struct Unrecognized {
  std::string line;
  bool operator==(const Unrecognized&) const = default;
};

struct ParseError {
  std::string message;
  bool operator==(const ParseError&) const = default;
};

using ParseResult =
    std::variant<Sentence, OpRegistration, ExecutionReport, Unrecognized, ParseError>;

/// "<token>. :|:" for a state or goal-achievement event.
std::string emit_event(std::string_view state_token);

/// "G! :|:", the standing objective.
std::string emit_goal();

/// "*setopname <index> <op>", registering an operation with ONA.
std::string emit_setopname(int index, std::string_view op);

std::string serialize(const Sentence& sentence);

/// Classifies one line (no terminator). Sentences, "*setopname" commands and
/// "<op> executed" reports are parsed; anything else is Unrecognized. Only a
/// sentence-shaped line with a malformed tail is a ParseError.
ParseResult parse_line(std::string_view line);

inline constexpr std::string_view kGoalTerm = "G";
inline constexpr std::string_view kPresentTense = ":|:";

}  // namespace narsrl::narsese
