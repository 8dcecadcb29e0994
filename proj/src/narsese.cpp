#include "narsrl/narsese.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

#include "narsrl/format.hpp"

namespace narsrl::narsese {

namespace {

bool term_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '^';
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view token) {
  int value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

bool valid_term_token(std::string_view token) {
  if (token.empty()) return false;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (!term_char(token[i])) return false;
    if (token[i] == '^' && i != 0) return false;
  }
  if (token == "^") return false;
  return true;
}

std::string emit_event(std::string_view state_token) {
  if (!valid_term_token(state_token) || state_token.front() == '^')
    throw std::invalid_argument("bad event token: " + std::string(state_token));
  std::string line(state_token);
  line += ". :|:";
  return line;
}

std::string emit_goal() { return std::string(kGoalTerm) + "! :|:"; }

std::string emit_setopname(int index, std::string_view op) {
  if (index < 1) throw std::invalid_argument("setopname index is 1-based");
  if (!valid_term_token(op) || op.front() != '^')
    throw std::invalid_argument("bad operation name: " + std::string(op));
  return "*setopname " + std::to_string(index) + " " + std::string(op);
}

std::string serialize(const Sentence& sentence) {
  if (!valid_term_token(sentence.term.name))
    throw std::invalid_argument("bad term token: " + sentence.term.name);
  std::string line = sentence.term.name;
  line += sentence.punctuation == Punctuation::goal ? '!' : '.';
  if (sentence.present) {
    line += ' ';
    line += kPresentTense;
  }
  if (sentence.truth) {
    line += " {";
    line += format_double(sentence.truth->frequency);
    line += ' ';
    line += format_double(sentence.truth->confidence);
    line += '}';
  }
  return line;
}

ParseResult parse_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
    line.remove_suffix(1);
  const auto tokens = split_ws(line);
  if (tokens.empty()) return Unrecognized{std::string(line)};

  if (tokens[0] == "*setopname") {
    if (tokens.size() == 3) {
      const auto index = parse_int(tokens[1]);
      if (index && *index >= 1 && valid_term_token(tokens[2]) &&
          tokens[2].front() == '^')
        return OpRegistration{*index, std::string(tokens[2])};
    }
    return Unrecognized{std::string(line)};
  }

  // ONA reports executions inside otherwise free-form output lines.
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i + 1] == "executed" && tokens[i].size() > 1 &&
        tokens[i].front() == '^' && valid_term_token(tokens[i]))
      return ExecutionReport{std::string(tokens[i])};
  }

  // Sentence: "<term><punct> [:|:] [{f c}]".
  std::string_view head = tokens[0];
  const char punct = head.back();
  if (punct != '.' && punct != '!') return Unrecognized{std::string(line)};
  head.remove_suffix(1);
  if (!valid_term_token(head)) return Unrecognized{std::string(line)};

  Sentence s;
  s.term.name = std::string(head);
  s.punctuation = punct == '!' ? Punctuation::goal : Punctuation::judgment;

  std::size_t next = 1;
  if (next < tokens.size() && tokens[next] == kPresentTense) {
    s.present = true;
    ++next;
  }
  if (next < tokens.size() && tokens[next].front() == '{') {
    if (next + 1 >= tokens.size() || tokens[next + 1].back() != '}')
      return ParseError{"malformed truth annotation"};
    const auto f = parse_double(tokens[next].substr(1));
    const auto c =
        parse_double(tokens[next + 1].substr(0, tokens[next + 1].size() - 1));
    if (!f || !c || *f < 0.0 || *f > 1.0 || *c < 0.0 || *c > 1.0)
      return ParseError{"truth values must be reals in [0,1]"};
    s.truth = TruthAnnotation{*f, *c};
    next += 2;
  }
  if (next != tokens.size())
    return ParseError{"unexpected trailing tokens after sentence"};
  return s;
}

}  // namespace narsrl::narsese
