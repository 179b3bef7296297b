#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "run_config.hpp"
#include "strust/strust.hpp"

#ifndef STRUST_VERSION
#define STRUST_VERSION "0.0.0"
#endif

namespace strust::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct CliFailure {
  int code;
  std::string message;
};

struct Loaded {
  InteractionStore store;
  std::string input_sha256;
  std::size_t records = 0;
  std::vector<LineIssue> skipped;
};

// Shared state for one invocation: the effective config and the input hash
// that every emitted file echoes.
struct Session {
  RunConfig config;
  std::string input_sha256;
  std::ostream& out;
  std::ostream& err;

  std::vector<std::string> header_lines() const {
    std::vector<std::string> lines{fmt::format("tool=strust {}", STRUST_VERSION),
                                   fmt::format("input_sha256={}", input_sha256)};
    for (const auto& [key, value] : config.to_map()) {
      lines.push_back(fmt::format("config.{}={}", key, value));
    }
    return lines;
  }

  ordered_json meta() const {
    ordered_json m;
    m["tool"] = "strust";
    m["version"] = STRUST_VERSION;
    m["input_sha256"] = input_sha256;
    ordered_json cfg;
    for (const auto& [key, value] : config.to_map()) cfg[key] = value;
    m["config"] = std::move(cfg);
    return m;
  }

  std::string csv_header() const {
    std::string s;
    for (const auto& line : header_lines()) s += "# " + line + "\n";
    return s;
  }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const auto path = dir / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw CliFailure{kExitArgument, fmt::format("cannot write {}", path.string())};
    file << content;
    return path;
  }

  void write_json(const std::string& name, ordered_json doc) const {
    ordered_json wrapped;
    wrapped["meta"] = meta();
    for (auto& [key, value] : doc.items()) wrapped[key] = std::move(value);
    write(name, wrapped.dump(2) + "\n");
  }
};

std::string read_file(const std::string& path, int failure_code) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw CliFailure{failure_code, fmt::format("cannot read input '{}'", path)};
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

bool is_store_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

bool is_bipartite_format(const std::string& format) {
  if (format == "bipartite" || format == "opsahl-forum") return true;
  for (const auto& col : split_list(format)) {
    if (col == "user" || col == "thread") return true;
  }
  return false;
}

FormatSpec format_spec(const RunConfig& cfg) {
  FormatSpec spec;
  try {
    spec = FormatSpec::parse(cfg.format);
  } catch (const InvalidArgument& e) {
    throw CliFailure{kExitInput, e.what()};
  }
  if (cfg.delimiter == "whitespace") spec.delimiter = Delimiter::whitespace;
  else if (cfg.delimiter == "comma") spec.delimiter = Delimiter::comma;
  else if (cfg.delimiter != "auto") throw CliFailure{kExitInput, "delimiter must be auto, whitespace or comma"};
  if (cfg.header != 0 && cfg.header != 1) throw CliFailure{kExitInput, "header must be 0 or 1"};
  spec.header_lines = static_cast<std::size_t>(cfg.header);
  spec.default_context = ContextId(cfg.context);
  spec.expand_weights = cfg.expand_weights;
  spec.skip_bad_lines = cfg.skip_bad_lines;
  return spec;
}

TrustOptions trust_options(const RunConfig& cfg) {
  if (cfg.aggregation == "store") return {ContextAggregation::store_contexts};
  if (cfg.aggregation == "member") return {ContextAggregation::member_contexts};
  throw CliFailure{kExitArgument, "aggregation must be 'store' or 'member'"};
}

Loaded load_raw(const RunConfig& cfg, const std::string& bytes) {
  const auto spec = format_spec(cfg);
  const bool bipartite = is_bipartite_format(cfg.format);
  if (bipartite && cfg.projection.empty()) {
    throw CliFailure{kExitInput,
                     "bipartite input needs --projection (prior-posters | all-coposters)"};
  }
  IngestResult result = [&] {
    if (!cfg.projection.empty()) {
      ProjectionRule rule;
      try {
        rule = ProjectionRule::parse(cfg.projection);
      } catch (const InvalidArgument& e) {
        throw CliFailure{kExitInput, e.what()};
      }
      return project_bipartite(bytes, spec, rule, cfg.input);
    }
    return ingest_edge_list(bytes, spec, cfg.input);
  }();
  return Loaded{std::move(result.store), sha256_hex(bytes), result.records,
                std::move(result.skipped)};
}

// Canonical store JSON (".json") or a raw edge list / bipartite file.
Loaded load_input(const RunConfig& cfg, bool accept_store) {
  if (cfg.input.empty()) throw CliFailure{kExitInput, "--input is required"};
  if (accept_store && is_store_json(cfg.input)) {
    const auto bytes = read_file(cfg.input, kExitStore);
    auto store = store_from_json_text(bytes);
    const auto records = store.ledger().size();
    return Loaded{std::move(store), sha256_hex(bytes), records, {}};
  }
  return load_raw(cfg, read_file(cfg.input, kExitInput));
}

void report_skipped(const Loaded& loaded, std::ostream& err) {
  for (const auto& issue : loaded.skipped) {
    err << fmt::format("skipped line {}: {}\n", issue.line, issue.reason);
  }
}

std::string file_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    out += safe ? c : '_';
  }
  return out;
}

int cmd_ingest(Session& s) {
  const auto loaded = load_input(s.config, false);
  s.input_sha256 = loaded.input_sha256;
  report_skipped(loaded, s.err);
  const auto capital = loaded.store.social_capital();
  if (s.config.wants("json")) s.write_json("store.json", store_to_json(loaded.store));
  ordered_json summary;
  summary["members"] = loaded.store.member_count();
  summary["total_interactions"] = capital.total;
  summary["unique_interactions"] = capital.unique;
  summary["records"] = loaded.records;
  summary["skipped_lines"] = loaded.skipped.size();
  s.out << summary.dump() << "\n";
  return kExitOk;
}

int cmd_trust(Session& s) {
  const auto loaded = load_input(s.config, true);
  s.input_sha256 = loaded.input_sha256;
  report_skipped(loaded, s.err);
  const Alpha alpha(s.config.alpha);
  const auto options = trust_options(s.config);
  const auto scores = score_all(loaded.store, alpha, options);
  const auto community = community_from_scores(scores);

  const std::vector<Ranking> rankings{rank_scores(scores, TrustKind::popularity()),
                                      rank_scores(scores, TrustKind::engagement()),
                                      rank_scores(scores, TrustKind::social(alpha))};
  if (s.config.wants("csv")) {
    for (const auto& r : rankings) {
      s.write(fmt::format("rankings_{}.csv", r.kind.name()), s.csv_header() + ranking_csv(r));
    }
  }
  ordered_json doc;
  doc["dataset"] = s.config.dataset_label();
  doc["alpha"] = alpha.value();
  doc["members"] = loaded.store.member_count();
  doc["value"] = community.value;
  doc["is_trust_community"] = community.is_trust_community;
  doc["degenerate"] = community.degenerate;
  if (s.config.wants("json")) s.write_json("community.json", doc);
  s.out << doc.dump() << "\n";
  if (s.config.top > 0) {
    for (const auto& r : rankings) {
      s.out << fmt::format("top {} by {}:\n", s.config.top, r.kind.label());
      for (std::size_t i = 0; i < r.entries.size() && i < static_cast<std::size_t>(s.config.top); ++i) {
        const auto& e = r.entries[i];
        s.out << fmt::format("  {:>4}  {:<12} {:.6f}\n", e.rank, e.member.str(), e.score);
      }
    }
  }
  return kExitOk;
}

int cmd_roles(Session& s) {
  const auto loaded = load_input(s.config, true);
  s.input_sha256 = loaded.input_sha256;
  report_skipped(loaded, s.err);
  const auto& store = loaded.store;
  const auto options = trust_options(s.config);
  const auto members = store.member_count();
  if (s.config.k < 1 || static_cast<std::size_t>(s.config.k) > members) {
    throw KOutOfRange(s.config.k, members);
  }
  const auto k = static_cast<std::size_t>(s.config.k);
  std::size_t kmax = std::min<std::size_t>(20, members);
  if (s.config.overlap_kmax != 0) {
    if (s.config.overlap_kmax < 1 || static_cast<std::size_t>(s.config.overlap_kmax) > members) {
      throw KOutOfRange(s.config.overlap_kmax, members);
    }
    kmax = static_cast<std::size_t>(s.config.overlap_kmax);
  }

  const auto scores = score_all(store, Alpha(0.5), options);
  const auto leaders = rank_scores(scores, TrustKind::popularity());
  const auto mentors = rank_scores(scores, TrustKind::engagement());
  const auto overlap = topk_overlap(store, kmax, options);

  std::vector<OverlapPoint> other;
  if (!s.config.compare.empty()) {
    const auto bytes = read_file(s.config.compare, kExitStore);
    const auto compare_store = store_from_json_text(bytes);
    if (kmax > compare_store.member_count()) throw KOutOfRange(static_cast<long long>(kmax), compare_store.member_count());
    other = topk_overlap(compare_store, kmax, options);
  }

  if (s.config.wants("csv")) {
    s.write("leaders.csv", s.csv_header() + ranking_csv(leaders, k));
    s.write("mentors.csv", s.csv_header() + ranking_csv(mentors, k));
    s.write("overlap.csv", s.csv_header() + overlap_csv(overlap));
    if (!other.empty()) {
      std::string body = "k,overlap,compare_overlap\n";
      for (std::size_t i = 0; i < overlap.size(); ++i) {
        body += fmt::format("{},{},{}\n", overlap[i].k, overlap[i].overlap, other[i].overlap);
      }
      s.write("overlap_compare.csv", s.csv_header() + body);
    }
  }

  ordered_json doc;
  doc["dataset"] = s.config.dataset_label();
  doc["k"] = k;
  auto& l = doc["leaders"] = ordered_json::array();
  for (const auto& m : leaders.top(k)) l.push_back(m.str());
  auto& m = doc["mentors"] = ordered_json::array();
  for (const auto& id : mentors.top(k)) m.push_back(id.str());
  auto& curve = doc["overlap"] = ordered_json::array();
  for (const auto& p : overlap) curve.push_back({{"k", p.k}, {"overlap", p.overlap}});
  if (!other.empty()) {
    bool at_or_below = true;
    for (std::size_t i = 0; i < overlap.size(); ++i) at_or_below &= overlap[i].overlap <= other[i].overlap;
    doc["compare"] = s.config.compare;
    doc["overlap_at_or_below_compare"] = at_or_below;
  }
  if (s.config.wants("json")) s.write_json("roles.json", doc);
  s.out << doc.dump() << "\n";
  return kExitOk;
}

int cmd_sustain(Session& s) {
  const auto loaded = load_input(s.config, true);
  s.input_sha256 = loaded.input_sha256;
  report_skipped(loaded, s.err);
  const Alpha alpha(s.config.alpha);
  const auto options = trust_options(s.config);
  const auto percents = parse_percent_list(s.config.percents);
  const auto kinds = split_list(s.config.kinds);
  if (kinds.empty()) throw InvalidArgument("kinds must name at least one trust kind");

  ordered_json summary = ordered_json::array();
  for (const auto& name : kinds) {
    const RemovalSpec spec{TrustKind::parse(name, alpha), percents};
    const auto reports = run_removal(loaded.store, spec, alpha, options);
    auto doc = removal_json(s.config.dataset_label(), spec.kind, alpha, reports);
    doc["threshold_pct"] = s.config.threshold;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      doc["runs"][i]["capital_drop_exceeds_threshold"] = capital_drop_check(reports[i], s.config.threshold);
    }
    if (s.config.wants("json")) s.write_json(fmt::format("sustain_{}.json", name), doc);
    if (s.config.wants("csv")) {
      s.write(fmt::format("sustain_{}.csv", name), s.csv_header() + removal_csv(reports));
    }
    for (const auto& r : reports) {
      summary.push_back({{"kind", name},
                         {"percent", r.percent},
                         {"removed", r.removed.size()},
                         {"trust_drop_pct", r.trust_drop_pct ? ordered_json(*r.trust_drop_pct) : nullptr},
                         {"capital_drop_pct", r.capital_drop_pct},
                         {"gap_pct", r.gap_pct},
                         {"interactions_reduced_pct", r.interactions_reduced_pct},
                         {"capital_drop_exceeds_threshold", capital_drop_check(r, s.config.threshold)}});
    }
  }
  for (const auto& row : summary) s.out << row.dump() << "\n";
  return kExitOk;
}

int cmd_ego(Session& s) {
  const auto loaded = load_input(s.config, true);
  s.input_sha256 = loaded.input_sha256;
  report_skipped(loaded, s.err);
  if (s.config.member.empty()) throw CliFailure{kExitInput, "--member is required"};
  const auto mode = parse_ego_mode(s.config.mode);
  const auto ego = ego_network(loaded.store, MemberId(s.config.member), mode);
  const auto name = fmt::format("ego_{}_{}.dot", file_token(s.config.member), to_string(mode));
  if (s.config.wants("dot")) s.write(name, to_dot(ego, s.header_lines()));
  ordered_json doc;
  doc["member"] = s.config.member;
  doc["mode"] = to_string(mode);
  doc["nodes"] = ego.nodes.size();
  doc["edges"] = ego.edges.size();
  s.out << doc.dump() << "\n";
  return kExitOk;
}

std::string option_name(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_file;
  std::string save_config;

  CLI::App app{"strust: social trust analytics over interaction logs", "strust"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", STRUST_VERSION);

  std::map<std::string, CLI::Option*> options;
  const auto add = [&](const std::string& key, auto& field, const std::string& help) {
    options[key] = app.add_option(option_name(key), field, help);
  };
  const auto add_flag = [&](const std::string& key, bool& field, const std::string& help) {
    options[key] = app.add_flag(option_name(key), field, help);
  };
  app.add_option("--config", config_file, "key=value config file; flags override its values");
  app.add_option("--save-config", save_config, "write the effective config to this file");
  add("input", cfg.input, "edge list, bipartite post list, or canonical store .json");
  add("format", cfg.format,
      "preset (edge-list, collegemsg, opsahl, bipartite, opsahl-forum) or column list");
  add("delimiter", cfg.delimiter, "auto | whitespace | comma");
  add("header", cfg.header, "number of header lines (0 or 1)");
  add("context", cfg.context, "default context for lines without a context column");
  add("projection", cfg.projection, "prior-posters[:timestamp|:file] | all-coposters");
  add("alpha", cfg.alpha, "popularity weight in social trust, in [0, 1]");
  add("aggregation", cfg.aggregation, "context aggregation: store | member");
  add("out_dir", cfg.out_dir, "output directory");
  add("emit", cfg.emit, "comma list of output formats: json, csv, dot");
  add("dataset", cfg.dataset, "dataset label used in reports");
  add_flag("expand_weights", cfg.expand_weights, "count a weight-w line as w interactions");
  add_flag("skip_bad_lines", cfg.skip_bad_lines, "skip malformed lines instead of failing");

  auto* ingest = app.add_subcommand("ingest", "load a dataset and write the canonical store");
  auto* trust = app.add_subcommand("trust", "popularity, engagement and social trust rankings");
  options["top"] = trust->add_option("--top", cfg.top, "print the top N of each ranking");
  auto* roles = app.add_subcommand("roles", "leaders, mentors and their top-K overlap");
  options["k"] = roles->add_option("-k,--k", cfg.k, "number of leaders and mentors");
  options["overlap_kmax"] = roles->add_option("--overlap-kmax", cfg.overlap_kmax, "largest K for the overlap curve");
  options["compare"] = roles->add_option("--compare", cfg.compare, "store .json to compare overlap against");
  auto* sustain = app.add_subcommand("sustain", "remove top-ranked members and measure the damage");
  options["kinds"] = sustain->add_option("--kinds", cfg.kinds, "comma list of ranking kinds");
  options["percents"] = sustain->add_option("--percents", cfg.percents, "comma list of removal percents");
  options["threshold"] = sustain->add_option("--threshold", cfg.threshold, "capital drop threshold in percent");
  auto* ego = app.add_subcommand("ego", "DOT ego network of one member");
  options["member"] = ego->add_option("--member", cfg.member, "member id");
  options["mode"] = ego->add_option("--mode", cfg.mode, "engagement | popularity");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << STRUST_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  for (auto* sub : {ingest, trust, roles, sustain, ego}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  try {
    if (!config_file.empty()) {
      const auto entries = RunConfig::parse_text(read_file(config_file, kExitInput));
      for (const auto& [key, value] : entries) {
        if (key == "command") continue;
        const auto it = options.find(key);
        if (it != options.end() && it->second->count() > 0) continue;
        cfg.set(key, value);
      }
    }
    if (!save_config.empty()) {
      std::ofstream file(save_config, std::ios::binary);
      if (!file) throw CliFailure{kExitArgument, fmt::format("cannot write {}", save_config)};
      file << cfg.to_text();
    }
    Session session{cfg, {}, out, err};
    (void)Alpha(cfg.alpha);
    if (cfg.command == "ingest") return cmd_ingest(session);
    if (cfg.command == "trust") return cmd_trust(session);
    if (cfg.command == "roles") return cmd_roles(session);
    if (cfg.command == "sustain") return cmd_sustain(session);
    return cmd_ego(session);
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EmptyInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MissingOrder& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const StoreFormatError& e) {
    err << "store error: " << e.what() << "\n";
    return kExitStore;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitArgument;
  }
}

}  // namespace strust::cli
