#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strust/interaction_store.hpp"

namespace strust {

enum class Delimiter { whitespace, comma, automatic };

// Column roles. In bipartite files `source` holds the user and `target` the
// thread; the parser accepts "user"/"thread" as aliases.
enum class Column { source, target, weight, timestamp, context, polarity, kind, skip };

// Describes one text layout. Columns up to and including the later of
// source/target are required on every line; the rest are optional trailing
// fields. Lines starting with '#' or '%' and blank lines are ignored.
struct FormatSpec {
  Delimiter delimiter = Delimiter::automatic;
  std::vector<Column> columns{Column::source, Column::target, Column::weight, Column::timestamp};
  std::size_t header_lines = 0;  // 0 or 1
  ContextId default_context{};
  // When false every line counts as one interaction and the weight column is
  // only validated.
  bool expand_weights = false;
  // Skip malformed lines (reported in IngestResult::skipped) instead of failing.
  bool skip_bad_lines = false;

  std::size_t required_columns() const;

  // Parses a preset name ("edge-list", "collegemsg", "opsahl", "bipartite",
  // "opsahl-forum") or a comma-separated column list such as
  // "timestamp,source,target,weight". Throws InvalidArgument.
  static FormatSpec parse(std::string_view text);
  // Stable textual description recorded in store metadata.
  std::string describe() const;
  bool has_column(Column column) const;
};

std::string_view to_string(Column column) noexcept;
std::string_view to_string(Delimiter delimiter) noexcept;

struct LineIssue {
  std::size_t line;
  std::string reason;
};

struct IngestResult {
  InteractionStore store;
  std::vector<LineIssue> skipped;
  std::size_t records = 0;  // data lines accepted
};

// One directed interaction per line, active and positive unless the format
// carries kind/polarity columns. Throws ParseError (with the 1-based line)
// or EmptyInput.
IngestResult ingest_edge_list(std::string_view text, const FormatSpec& format,
                              std::string source_file = {});

enum class PostOrder { automatic, timestamp, file };

struct ProjectionRule {
  enum class Kind { prior_posters, all_coposters };
  Kind kind = Kind::prior_posters;
  // prior-posters only. `automatic` uses timestamps when the format has a
  // timestamp column and file order otherwise.
  PostOrder order = PostOrder::automatic;

  // "prior-posters", "prior-posters:timestamp", "prior-posters:file",
  // "all-coposters". Throws InvalidArgument.
  static ProjectionRule parse(std::string_view text);
  std::string describe() const;
};

// Projects `user thread [weight] [timestamp]` posts onto user -> user
// interactions.
//  - prior-posters: a post by u in thread t yields u -> v once for every
//    distinct poster v that posted in t before it. Equal timestamps fall
//    back to file order.
//  - all-coposters: a post by u yields u -> v for every other distinct
//    poster v of t.
// A post with weight w (when expand_weights is set) counts as w posts. The
// resulting ledger holds one aggregated record per (source, target, context).
// Every user seen becomes a member, even without interactions. Throws
// ParseError, EmptyInput, MissingOrder.
IngestResult project_bipartite(std::string_view text, const FormatSpec& format,
                               const ProjectionRule& rule, std::string source_file = {});

// Writes the ledger back out as text that ingest_edge_list reads with
// edge_list_export_format(), reproducing every directed count.
std::string export_edge_list(const InteractionStore& store);
FormatSpec edge_list_export_format();

// Accepts a non-negative decimal number of seconds or a UTC date-time
// "YYYY-MM-DD HH:MM:SS" (a 'T' separator is also accepted).
std::optional<double> parse_timestamp(std::string_view text);

}  // namespace strust
