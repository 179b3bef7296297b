#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strust/interaction_store.hpp"
#include "strust/recommender.hpp"
#include "strust/trust_engine.hpp"

namespace strust {

// Returns a store without `members` and without every interaction touching
// them. Surviving members stay even when isolated; the context set is
// re-derived from the surviving ledger. Throws UnknownMember.
InteractionStore remove_members(const InteractionStore& store, const std::vector<MemberId>& members);

struct RemovalSpec {
  TrustKind kind = TrustKind::social(Alpha(0.5));
  std::vector<double> percents{5.0, 10.0, 15.0};

  // Percents must be strictly increasing, inside (0, 100), and each must
  // remove between 1 and |M| - 1 members. Throws InvalidArgument.
  void validate(std::size_t member_count) const;
};

struct RemovalReport {
  double percent = 0.0;
  std::vector<MemberId> removed;  // ranking order
  double trust_before = 0.5;
  double trust_after = 0.5;
  // 100 * (before - after) / (before - 0.5); empty when before <= 0.5.
  std::optional<double> trust_drop_pct;
  SocialCapital capital_before;
  SocialCapital capital_after;
  // Drop in total positive interactions.
  double capital_drop_pct = 0.0;
  // Drop in unique interacting pairs, reported separately.
  double unique_drop_pct = 0.0;
  // 100 * (total - unique) / total on the post-removal store (0 when empty).
  double gap_pct = 0.0;
  double interactions_reduced_pct = 0.0;
};

// Measures one removal against `store`; `percent` is only recorded.
RemovalReport measure_removal(const InteractionStore& store, const std::vector<MemberId>& removed,
                              double percent, Alpha alpha, TrustOptions options = {});

// For each percent, independently from the original store: rank by
// spec.kind, remove the top round-half-up(p * |M| / 100), and measure.
// Reports come back ordered by percent.
std::vector<RemovalReport> run_removal(const InteractionStore& store, const RemovalSpec& spec,
                                       Alpha alpha, TrustOptions options = {});

// (percent, gap_pct) per report. Throws InvalidArgument on an empty list.
std::vector<std::pair<double, double>> gap_curve(const std::vector<RemovalReport>& reports);

bool capital_drop_check(const RemovalReport& report, double threshold_pct) noexcept;

// True when each report's removed set contains the previous one.
bool removals_nested(const std::vector<RemovalReport>& reports);

// {dataset, kind, alpha, runs: [...]}.
nlohmann::ordered_json removal_json(const std::string& dataset, const TrustKind& kind, Alpha alpha,
                                    const std::vector<RemovalReport>& reports);
// Long format `percent,metric,value`.
std::string removal_csv(const std::vector<RemovalReport>& reports);

}  // namespace strust
