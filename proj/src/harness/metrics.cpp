#include "narsrl/harness/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "narsrl/format.hpp"

namespace narsrl {

std::string metrics_to_csv(const std::vector<MetricRow>& rows) {
  std::string out = kMetricsHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(r.step);
    out += ',';
    out += std::to_string(r.episode);
    out += ',';
    out += r.episode_end ? "episode_end" : "step";
    out += ',';
    if (r.reward) out += format_double(*r.reward);
    out += ',';
    if (r.episode_return) out += format_double(*r.episode_return);
    out += ',';
    out += std::to_string(r.success_cum);
    out += ',';
    out += std::to_string(r.random_cum);
    out += ',';
    out += std::to_string(r.nonrandom_cum);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("bad integer field: '" + s + "'");
  return v;
}

std::optional<double> parse_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("bad real field: '" + s + "'");
  return v;
}

}  // namespace

std::vector<MetricRow> metrics_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw std::runtime_error("metrics csv: bad header: '" + line + "'");
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9)
      throw std::runtime_error("metrics csv: expected 9 fields, got " +
                               std::to_string(f.size()));
    MetricRow r;
    r.trial = static_cast<int>(parse_long(f[0]));
    r.step = parse_long(f[1]);
    r.episode = parse_long(f[2]);
    if (f[3] == "episode_end")
      r.episode_end = true;
    else if (f[3] != "step")
      throw std::runtime_error("metrics csv: bad event: '" + f[3] + "'");
    r.reward = parse_opt_double(f[4]);
    r.episode_return = parse_opt_double(f[5]);
    r.success_cum = parse_long(f[6]);
    r.random_cum = parse_long(f[7]);
    r.nonrandom_cum = parse_long(f[8]);
    rows.push_back(r);
  }
  return rows;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for write: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace narsrl
