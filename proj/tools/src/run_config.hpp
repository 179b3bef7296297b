#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace strust::cli {

// Everything a run depends on. Serializes to a flat key=value file; every
// emitted report echoes the same lines.
struct RunConfig {
  std::string command;
  std::string input;
  std::string format = "edge-list";
  std::string delimiter = "auto";
  int header = 0;
  std::string context = "global";
  std::string projection;  // empty: plain edge list
  double alpha = 0.5;
  std::string aggregation = "store";  // store | member
  std::string out_dir = ".";
  std::string emit = "json,csv,dot";
  bool expand_weights = false;
  bool skip_bad_lines = false;
  std::string dataset;  // label for reports; defaults to the input file stem

  // trust
  int top = 0;
  // roles
  int k = 10;
  int overlap_kmax = 0;  // 0: min(20, |M|)
  std::string compare;   // optional second store for the overlap comparison
  // sustain
  std::string kinds = "social,popularity,engagement";
  std::string percents = "5,10,15";
  double threshold = 50.0;
  // ego
  std::string member;
  std::string mode = "engagement";

  // Sorted key=value pairs.
  std::map<std::string, std::string> to_map() const;
  std::string to_text() const;
  // Applies one key; throws strust::InvalidArgument on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Parses key=value lines ('#' comments allowed).
  static std::map<std::string, std::string> parse_text(const std::string& text);

  bool wants(const std::string& output_format) const;
  std::string dataset_label() const;
};

std::vector<double> parse_percent_list(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

}  // namespace strust::cli
