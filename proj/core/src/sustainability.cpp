#include "strust/sustainability.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "strust/error.hpp"

namespace strust {
namespace {

double pct_drop(std::uint64_t before, std::uint64_t after) {
  if (before == 0) return 0.0;
  return 100.0 * (static_cast<double>(before) - static_cast<double>(after)) /
         static_cast<double>(before);
}

}  // namespace

InteractionStore remove_members(const InteractionStore& store, const std::vector<MemberId>& members) {
  std::unordered_set<MemberId> gone;
  for (const auto& m : members) {
    store.require_member(m);
    gone.insert(m);
  }
  std::vector<MemberId> survivors;
  for (const auto& m : store.members()) {
    if (!gone.contains(m)) survivors.push_back(m);
  }
  std::vector<Interaction> ledger;
  for (const auto& e : store.ledger()) {
    if (!gone.contains(e.source) && !gone.contains(e.target)) ledger.push_back(e);
  }
  return InteractionStore::from_ledger(std::move(ledger), std::move(survivors), store.metadata());
}

void RemovalSpec::validate(std::size_t member_count) const {
  if (percents.empty()) throw InvalidArgument("removal needs at least one percent");
  for (std::size_t i = 0; i < percents.size(); ++i) {
    const double p = percents[i];
    if (!(p > 0.0 && p < 100.0)) {
      throw InvalidArgument(fmt::format("removal percent {} is outside (0, 100)", p));
    }
    if (i > 0 && !(p > percents[i - 1])) {
      throw InvalidArgument("removal percents must be strictly increasing");
    }
    const auto n = removal_count(p, member_count);
    if (n < 1 || n >= member_count) {
      throw InvalidArgument(fmt::format(
          "removal percent {} removes {} of {} members; need 1 <= n < |M|", p, n, member_count));
    }
  }
}

RemovalReport measure_removal(const InteractionStore& store, const std::vector<MemberId>& removed,
                              double percent, Alpha alpha, TrustOptions options) {
  const auto after = remove_members(store, removed);
  RemovalReport r;
  r.percent = percent;
  r.removed = removed;
  r.trust_before = strust_community(store, alpha, options).value;
  r.trust_after = strust_community(after, alpha, options).value;
  if (r.trust_before > kBootstrapTrust) {
    r.trust_drop_pct = 100.0 * (r.trust_before - r.trust_after) / (r.trust_before - kBootstrapTrust);
  }
  r.capital_before = store.social_capital();
  r.capital_after = after.social_capital();
  r.capital_drop_pct = pct_drop(r.capital_before.total, r.capital_after.total);
  r.unique_drop_pct = pct_drop(r.capital_before.unique, r.capital_after.unique);
  r.interactions_reduced_pct = r.capital_drop_pct;
  if (r.capital_after.total > 0) {
    r.gap_pct = 100.0 *
                (static_cast<double>(r.capital_after.total) - static_cast<double>(r.capital_after.unique)) /
                static_cast<double>(r.capital_after.total);
  }
  return r;
}

std::vector<RemovalReport> run_removal(const InteractionStore& store, const RemovalSpec& spec,
                                       Alpha alpha, TrustOptions options) {
  spec.validate(store.member_count());
  const auto ranking = rank(store, spec.kind, options);
  auto percents = spec.percents;
  std::sort(percents.begin(), percents.end());
  std::vector<RemovalReport> reports;
  reports.reserve(percents.size());
  for (const double p : percents) {
    const auto n = removal_count(p, store.member_count());
    reports.push_back(measure_removal(store, ranking.top(n), p, alpha, options));
  }
  return reports;
}

std::vector<std::pair<double, double>> gap_curve(const std::vector<RemovalReport>& reports) {
  if (reports.empty()) throw InvalidArgument("gap curve needs at least one report");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(reports.size());
  for (const auto& r : reports) curve.emplace_back(r.percent, r.gap_pct);
  return curve;
}

bool capital_drop_check(const RemovalReport& report, double threshold_pct) noexcept {
  return report.capital_drop_pct > threshold_pct;
}

bool removals_nested(const std::vector<RemovalReport>& reports) {
  for (std::size_t i = 1; i < reports.size(); ++i) {
    std::unordered_set<MemberId> later(reports[i].removed.begin(), reports[i].removed.end());
    for (const auto& m : reports[i - 1].removed) {
      if (!later.contains(m)) return false;
    }
  }
  return true;
}

nlohmann::ordered_json removal_json(const std::string& dataset, const TrustKind& kind, Alpha alpha,
                                    const std::vector<RemovalReport>& reports) {
  nlohmann::ordered_json doc;
  doc["dataset"] = dataset;
  doc["kind"] = kind.name();
  doc["kind_alpha"] = kind.alpha().value();
  doc["alpha"] = alpha.value();
  doc["nested"] = removals_nested(reports);
  auto& runs = doc["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json run;
    run["percent"] = r.percent;
    run["removed_count"] = r.removed.size();
    auto& removed = run["removed"] = nlohmann::ordered_json::array();
    for (const auto& m : r.removed) removed.push_back(m.str());
    run["trust_before"] = r.trust_before;
    run["trust_after"] = r.trust_after;
    run["trust_drop_pct"] = r.trust_drop_pct ? nlohmann::ordered_json(*r.trust_drop_pct) : nullptr;
    run["capital_before"] = {{"total", r.capital_before.total}, {"unique", r.capital_before.unique}};
    run["capital_after"] = {{"total", r.capital_after.total}, {"unique", r.capital_after.unique}};
    run["capital_drop_pct"] = r.capital_drop_pct;
    run["unique_drop_pct"] = r.unique_drop_pct;
    run["gap_pct"] = r.gap_pct;
    run["interactions_reduced_pct"] = r.interactions_reduced_pct;
    runs.push_back(std::move(run));
  }
  return doc;
}

std::string removal_csv(const std::vector<RemovalReport>& reports) {
  std::string out = "percent,metric,value\n";
  const auto row = [&](double p, std::string_view metric, double value) {
    out += fmt::format("{},{},{:.17g}\n", p, metric, value);
  };
  for (const auto& r : reports) {
    row(r.percent, "removed_count", static_cast<double>(r.removed.size()));
    row(r.percent, "trust_before", r.trust_before);
    row(r.percent, "trust_after", r.trust_after);
    if (r.trust_drop_pct) {
      row(r.percent, "trust_drop_pct", *r.trust_drop_pct);
    } else {
      out += fmt::format("{},trust_drop_pct,\n", r.percent);
    }
    row(r.percent, "capital_total_after", static_cast<double>(r.capital_after.total));
    row(r.percent, "capital_unique_after", static_cast<double>(r.capital_after.unique));
    row(r.percent, "capital_drop_pct", r.capital_drop_pct);
    row(r.percent, "unique_drop_pct", r.unique_drop_pct);
    row(r.percent, "gap_pct", r.gap_pct);
    row(r.percent, "interactions_reduced_pct", r.interactions_reduced_pct);
  }
  return out;
}

}  // namespace strust
