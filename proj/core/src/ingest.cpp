#include "strust/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

#include "strust/error.hpp"

namespace strust {
namespace {

struct ColumnName {
  std::string_view name;
  Column column;
};

constexpr ColumnName kColumnNames[] = {
    {"source", Column::source},       {"src", Column::source},
    {"user", Column::source},         {"target", Column::target},
    {"dst", Column::target},          {"thread", Column::target},
    {"weight", Column::weight},       {"timestamp", Column::timestamp},
    {"ts", Column::timestamp},        {"time", Column::timestamp},
    {"context", Column::context},     {"polarity", Column::polarity},
    {"kind", Column::kind},           {"skip", Column::skip},
    {"_", Column::skip},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

// Splits one data line. Double quotes group whitespace ("2004-04-15 07:56:01").
std::vector<std::string> tokenize(std::string_view line, Delimiter delimiter, std::size_t line_no) {
  if (delimiter == Delimiter::automatic) {
    delimiter = line.find(',') != std::string_view::npos ? Delimiter::comma : Delimiter::whitespace;
  }
  std::vector<std::string> tokens;
  if (delimiter == Delimiter::comma) {
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i < line.size() && line[i] == '"') quoted = !quoted;
      if (i == line.size() || (line[i] == ',' && !quoted)) {
        tokens.emplace_back(unquote(trim(line.substr(start, i - start))));
        start = i + 1;
      }
    }
    if (quoted) throw ParseError(line_no, "unterminated quote");
    return tokens;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    if (line[i] == '"') {
      const auto close = line.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError(line_no, "unterminated quote");
      tokens.emplace_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      const auto start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      tokens.emplace_back(line.substr(start, i - start));
    }
  }
  return tokens;
}

struct Row {
  std::size_t line;
  std::string source;
  std::string target;
  std::uint64_t weight = 1;
  std::optional<double> timestamp;
  std::optional<ContextId> context;
  std::optional<Polarity> polarity;
  std::optional<InteractionKind> kind;
};

Row parse_row(const std::vector<std::string>& tokens, const FormatSpec& format,
              std::size_t line_no) {
  const auto required = format.required_columns();
  if (tokens.size() < required || tokens.size() > format.columns.size()) {
    if (required == format.columns.size()) {
      throw ParseError(line_no, fmt::format("expected {} fields, got {}", required, tokens.size()));
    }
    throw ParseError(line_no, fmt::format("expected {} to {} fields, got {}", required,
                                          format.columns.size(), tokens.size()));
  }
  Row row;
  row.line = line_no;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const bool optional_field = i >= required;
    if (tok.empty() && optional_field) continue;
    switch (format.columns[i]) {
      case Column::source:
        if (tok.empty()) throw ParseError(line_no, "empty source id");
        row.source = tok;
        break;
      case Column::target:
        if (tok.empty()) throw ParseError(line_no, "empty target id");
        row.target = tok;
        break;
      case Column::weight: {
        std::uint64_t w = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || w == 0) {
          throw ParseError(line_no, fmt::format("invalid weight '{}'", tok));
        }
        row.weight = w;
        break;
      }
      case Column::timestamp:
        row.timestamp = parse_timestamp(tok);
        if (!row.timestamp) throw ParseError(line_no, fmt::format("invalid timestamp '{}'", tok));
        break;
      case Column::context:
        if (tok.empty()) throw ParseError(line_no, "empty context id");
        row.context = ContextId(tok);
        break;
      case Column::polarity:
        row.polarity = parse_polarity(tok);
        if (!row.polarity) throw ParseError(line_no, fmt::format("invalid polarity '{}'", tok));
        break;
      case Column::kind:
        row.kind = parse_kind(tok);
        if (!row.kind) throw ParseError(line_no, fmt::format("invalid kind '{}'", tok));
        break;
      case Column::skip:
        break;
    }
  }
  return row;
}

// Walks data lines, handing each parsed row to `sink`. Errors thrown by the
// row parser or the sink are either fatal or recorded, per skip_bad_lines.
template <typename Sink>
std::vector<LineIssue> for_each_row(std::string_view text, const FormatSpec& format, Sink&& sink) {
  if (format.header_lines > 1) throw InvalidArgument("header_lines must be 0 or 1");
  std::vector<LineIssue> skipped;
  std::size_t headers_left = format.header_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    if (headers_left > 0) {
      --headers_left;
      continue;
    }
    try {
      sink(parse_row(tokenize(line, format.delimiter, line_no), format, line_no));
    } catch (const ParseError& e) {
      if (!format.skip_bad_lines) throw;
      skipped.push_back({e.line(), e.reason()});
    } catch (const Error& e) {
      if (!format.skip_bad_lines) throw ParseError(line_no, e.what());
      skipped.push_back({line_no, e.what()});
    }
  }
  return skipped;
}

std::string quote_if_needed(const std::string& token) {
  if (token.find_first_of(", \t\"") == std::string::npos) return token;
  std::string out = "\"";
  for (char c : token) {
    if (c != '"') out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(Column column) noexcept {
  switch (column) {
    case Column::source: return "source";
    case Column::target: return "target";
    case Column::weight: return "weight";
    case Column::timestamp: return "timestamp";
    case Column::context: return "context";
    case Column::polarity: return "polarity";
    case Column::kind: return "kind";
    case Column::skip: return "skip";
  }
  return "?";
}

std::string_view to_string(Delimiter delimiter) noexcept {
  switch (delimiter) {
    case Delimiter::whitespace: return "whitespace";
    case Delimiter::comma: return "comma";
    case Delimiter::automatic: return "auto";
  }
  return "?";
}

std::size_t FormatSpec::required_columns() const {
  std::size_t required = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == Column::source || columns[i] == Column::target) required = i + 1;
  }
  return required;
}

bool FormatSpec::has_column(Column column) const {
  return std::find(columns.begin(), columns.end(), column) != columns.end();
}

FormatSpec FormatSpec::parse(std::string_view text) {
  using enum Column;
  FormatSpec spec;
  if (text.empty() || text == "edge-list" || text == "bipartite") return spec;
  if (text == "collegemsg") {
    spec.delimiter = Delimiter::whitespace;
    spec.columns = {source, target, timestamp};
    return spec;
  }
  if (text == "opsahl" || text == "opsahl-forum") {
    spec.delimiter = Delimiter::whitespace;
    spec.columns = {timestamp, source, target, weight};
    return spec;
  }
  spec.columns.clear();
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto name = trim(text.substr(start, end - start));
    const auto* it = std::find_if(std::begin(kColumnNames), std::end(kColumnNames),
                                  [&](const ColumnName& c) { return c.name == name; });
    if (it == std::end(kColumnNames)) {
      throw InvalidArgument(fmt::format("unknown format column or preset '{}'", name));
    }
    spec.columns.push_back(it->column);
    start = end + 1;
  }
  for (auto needed : {source, target}) {
    if (std::count(spec.columns.begin(), spec.columns.end(), needed) != 1) {
      throw InvalidArgument(fmt::format("format needs exactly one '{}' column", to_string(needed)));
    }
  }
  for (auto once : {weight, timestamp, context, polarity, kind}) {
    if (std::count(spec.columns.begin(), spec.columns.end(), once) > 1) {
      throw InvalidArgument(fmt::format("format repeats the '{}' column", to_string(once)));
    }
  }
  return spec;
}

std::string FormatSpec::describe() const {
  std::string cols;
  for (const auto c : columns) {
    if (!cols.empty()) cols += ',';
    cols += to_string(c);
  }
  return fmt::format("columns={};delimiter={};header={};context={};expand_weights={};skip_bad_lines={}",
                     cols, to_string(delimiter), header_lines, default_context.str(),
                     expand_weights ? 1 : 0, skip_bad_lines ? 1 : 0);
}

std::optional<double> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double numeric = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), numeric);
  if (ec == std::errc{} && ptr == text.data() + text.size()) {
    if (!std::isfinite(numeric) || numeric < 0.0) return std::nullopt;
    return numeric;
  }
  // YYYY-MM-DD[ T]HH:MM:SS
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' || (text[10] != ' ' && text[10] != 'T') ||
      text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  const auto field = [&](std::size_t at, std::size_t len) -> std::optional<int> {
    int v = 0;
    const auto [p, e] = std::from_chars(text.data() + at, text.data() + at + len, v);
    if (e != std::errc{} || p != text.data() + at + len) return std::nullopt;
    return v;
  };
  const auto y = field(0, 4), mo = field(5, 2), d = field(8, 2);
  const auto h = field(11, 2), mi = field(14, 2), sec = field(17, 2);
  if (!y || !mo || !d || !h || !mi || !sec || *h > 23 || *mi > 59 || *sec > 60) return std::nullopt;
  using namespace std::chrono;
  const year_month_day date{year{*y}, month{static_cast<unsigned>(*mo)},
                            day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  const auto since_epoch = sys_days{date}.time_since_epoch();
  const double total = static_cast<double>(duration_cast<seconds>(since_epoch).count()) + *h * 3600.0 + *mi * 60.0 + *sec;
  if (total < 0.0) return std::nullopt;
  return total;
}

IngestResult ingest_edge_list(std::string_view text, const FormatSpec& format,
                              std::string source_file) {
  std::vector<Interaction> ledger;
  auto skipped = for_each_row(text, format, [&](Row row) {
    Interaction event{.source = MemberId(std::move(row.source)),
                      .target = MemberId(std::move(row.target)),
                      .context = row.context.value_or(format.default_context),
                      .kind = row.kind.value_or(InteractionKind::active),
                      .polarity = row.polarity.value_or(Polarity::positive),
                      .timestamp = row.timestamp,
                      .weight = format.expand_weights ? row.weight : 1};
    validate(event);
    ledger.push_back(std::move(event));
  });
  if (ledger.empty()) throw EmptyInput();
  IngestResult result{.store = {}, .skipped = std::move(skipped), .records = ledger.size()};
  result.store = InteractionStore::from_ledger(
      std::move(ledger), {}, StoreMetadata{std::move(source_file), format.describe(), std::nullopt});
  return result;
}

ProjectionRule ProjectionRule::parse(std::string_view text) {
  if (text == "prior-posters") return {Kind::prior_posters, PostOrder::automatic};
  if (text == "prior-posters:timestamp") return {Kind::prior_posters, PostOrder::timestamp};
  if (text == "prior-posters:file") return {Kind::prior_posters, PostOrder::file};
  if (text == "all-coposters") return {Kind::all_coposters, PostOrder::automatic};
  throw InvalidArgument(fmt::format("unknown projection rule '{}'", text));
}

std::string ProjectionRule::describe() const {
  if (kind == Kind::all_coposters) return "all-coposters";
  switch (order) {
    case PostOrder::timestamp: return "prior-posters:timestamp";
    case PostOrder::file: return "prior-posters:file";
    case PostOrder::automatic: break;
  }
  return "prior-posters";
}

IngestResult project_bipartite(std::string_view text, const FormatSpec& format,
                               const ProjectionRule& rule, std::string source_file) {
  std::vector<Row> posts;
  auto skipped = for_each_row(text, format, [&](Row row) { posts.push_back(std::move(row)); });
  if (posts.empty()) throw EmptyInput();

  ProjectionRule resolved = rule;
  if (resolved.kind == ProjectionRule::Kind::prior_posters &&
      resolved.order == PostOrder::automatic) {
    resolved.order = format.has_column(Column::timestamp) ? PostOrder::timestamp : PostOrder::file;
  }
  if (resolved.kind == ProjectionRule::Kind::prior_posters &&
      resolved.order == PostOrder::timestamp) {
    if (!format.has_column(Column::timestamp)) throw MissingOrder("format has no timestamp column");
    for (const auto& p : posts) {
      if (!p.timestamp) throw MissingOrder(fmt::format("line {} has no timestamp", p.line));
    }
  }

  std::vector<MemberId> users;
  users.reserve(posts.size());
  for (const auto& p : posts) users.emplace_back(p.source);
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  std::unordered_map<std::string, std::size_t> user_index;
  for (std::size_t i = 0; i < users.size(); ++i) user_index.emplace(users[i].str(), i);

  // Threads are keyed by (context, thread token); posts keep file order.
  std::map<std::pair<ContextId, std::string>, std::vector<std::size_t>> threads;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    threads[{posts[i].context.value_or(format.default_context), posts[i].target}].push_back(i);
  }

  const std::uint64_t n = users.size();
  std::map<ContextId, std::unordered_map<std::uint64_t, std::uint64_t>> counts;
  for (auto& [key, thread_posts] : threads) {
    auto& pair_counts = counts[key.first];
    const auto weight_of = [&](std::size_t post) {
      return format.expand_weights ? posts[post].weight : std::uint64_t{1};
    };
    if (resolved.kind == ProjectionRule::Kind::all_coposters) {
      std::vector<std::size_t> posters;
      for (auto p : thread_posts) posters.push_back(user_index.at(posts[p].source));
      std::sort(posters.begin(), posters.end());
      posters.erase(std::unique(posters.begin(), posters.end()), posters.end());
      for (auto p : thread_posts) {
        const auto u = user_index.at(posts[p].source);
        for (auto v : posters) {
          if (v != u) pair_counts[u * n + v] += weight_of(p);
        }
      }
      continue;
    }
    if (resolved.order == PostOrder::timestamp) {
      std::stable_sort(thread_posts.begin(), thread_posts.end(), [&](std::size_t a, std::size_t b) {
        return *posts[a].timestamp < *posts[b].timestamp;
      });
    }
    std::vector<std::size_t> seen;
    std::unordered_set<std::size_t> seen_set;
    for (auto p : thread_posts) {
      const auto u = user_index.at(posts[p].source);
      for (auto v : seen) {
        if (v != u) pair_counts[u * n + v] += weight_of(p);
      }
      if (seen_set.insert(u).second) seen.push_back(u);
    }
  }

  std::vector<Interaction> ledger;
  for (auto& [context, pair_counts] : counts) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(pair_counts.begin(), pair_counts.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, count] : sorted) {
      ledger.push_back(Interaction{.source = users[key / n],
                                   .target = users[key % n],
                                   .context = context,
                                   .weight = count});
    }
  }

  IngestResult result{.store = {}, .skipped = std::move(skipped), .records = posts.size()};
  result.store = InteractionStore::from_ledger(
      std::move(ledger), std::move(users),
      StoreMetadata{std::move(source_file), format.describe(), resolved.describe()});
  return result;
}

FormatSpec edge_list_export_format() {
  using enum Column;
  FormatSpec spec;
  spec.delimiter = Delimiter::comma;
  spec.columns = {source, target, context, kind, polarity, weight, timestamp};
  spec.expand_weights = true;
  return spec;
}

std::string export_edge_list(const InteractionStore& store) {
  std::string out = "# source,target,context,kind,polarity,weight,timestamp\n";
  for (const auto& e : store.ledger()) {
    out += fmt::format("{},{},{},{},{},{}", quote_if_needed(e.source.str()),
                       quote_if_needed(e.target.str()), quote_if_needed(e.context.str()),
                       to_string(e.kind), to_string(e.polarity), e.weight);
    if (e.timestamp) out += fmt::format(",{}", *e.timestamp);
    out += '\n';
  }
  return out;
}

}  // namespace strust
