#include "run_config.hpp"

#include <charconv>
#include <filesystem>
#include <sstream>

#include <fmt/format.h>

#include "strust/error.hpp"

namespace strust::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InvalidArgument(fmt::format("{} expects a number, got '{}'", key, value));
  }
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw InvalidArgument(fmt::format("{} expects an integer, got '{}'", key, value));
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw InvalidArgument(fmt::format("{} expects true/false, got '{}'", key, value));
}

}  // namespace

std::map<std::string, std::string> RunConfig::to_map() const {
  return {
      {"command", command},
      {"input", input},
      {"format", format},
      {"delimiter", delimiter},
      {"header", std::to_string(header)},
      {"context", context},
      {"projection", projection},
      {"alpha", fmt::format("{}", alpha)},
      {"aggregation", aggregation},
      {"out_dir", out_dir},
      {"emit", emit},
      {"expand_weights", expand_weights ? "true" : "false"},
      {"skip_bad_lines", skip_bad_lines ? "true" : "false"},
      {"dataset", dataset},
      {"top", std::to_string(top)},
      {"k", std::to_string(k)},
      {"overlap_kmax", std::to_string(overlap_kmax)},
      {"compare", compare},
      {"kinds", kinds},
      {"percents", percents},
      {"threshold", fmt::format("{}", threshold)},
      {"member", member},
      {"mode", mode},
  };
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : to_map()) out += fmt::format("{}={}\n", key, value);
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "command") command = value;
  else if (key == "input") input = value;
  else if (key == "format") format = value;
  else if (key == "delimiter") delimiter = value;
  else if (key == "header") header = to_int(key, value);
  else if (key == "context") context = value;
  else if (key == "projection") projection = value;
  else if (key == "alpha") alpha = to_double(key, value);
  else if (key == "aggregation") aggregation = value;
  else if (key == "out_dir") out_dir = value;
  else if (key == "emit") emit = value;
  else if (key == "expand_weights") expand_weights = to_bool(key, value);
  else if (key == "skip_bad_lines") skip_bad_lines = to_bool(key, value);
  else if (key == "dataset") dataset = value;
  else if (key == "top") top = to_int(key, value);
  else if (key == "k") k = to_int(key, value);
  else if (key == "overlap_kmax") overlap_kmax = to_int(key, value);
  else if (key == "compare") compare = value;
  else if (key == "kinds") kinds = value;
  else if (key == "percents") percents = value;
  else if (key == "threshold") threshold = to_double(key, value);
  else if (key == "member") member = value;
  else if (key == "mode") mode = value;
  else throw InvalidArgument(fmt::format("unknown config key '{}'", key));
}

std::map<std::string, std::string> RunConfig::parse_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(fmt::format("config line {}: expected key=value", line_no));
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

bool RunConfig::wants(const std::string& output_format) const {
  for (const auto& f : split_list(emit)) {
    if (f == output_format) return true;
  }
  return false;
}

std::string RunConfig::dataset_label() const {
  if (!dataset.empty()) return dataset;
  return std::filesystem::path(input).stem().string();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_percent_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double("percents", item));
  return out;
}

}  // namespace strust::cli
