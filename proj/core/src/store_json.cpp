#include "strust/store_json.hpp"

#include "strust/error.hpp"

namespace strust {

nlohmann::ordered_json store_to_json(const InteractionStore& store) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kStoreFormatVersion;

  const auto& meta = store.metadata();
  nlohmann::ordered_json metadata;
  metadata["source_file"] = meta.source_file;
  metadata["format"] = meta.format;
  if (meta.projection_rule) metadata["projection_rule"] = *meta.projection_rule;
  doc["metadata"] = std::move(metadata);

  auto& members = doc["members"] = nlohmann::ordered_json::array();
  for (const auto& m : store.members()) members.push_back(m.str());
  auto& contexts = doc["contexts"] = nlohmann::ordered_json::array();
  for (const auto& c : store.contexts()) contexts.push_back(c.str());

  auto& ledger = doc["ledger"] = nlohmann::ordered_json::array();
  for (const auto& e : store.ledger()) {
    nlohmann::ordered_json entry;
    entry["source"] = e.source.str();
    entry["target"] = e.target.str();
    entry["context"] = e.context.str();
    entry["kind"] = std::string(to_string(e.kind));
    entry["polarity"] = std::string(to_string(e.polarity));
    entry["weight"] = e.weight;
    if (e.timestamp) entry["timestamp"] = *e.timestamp;
    ledger.push_back(std::move(entry));
  }
  return doc;
}

InteractionStore store_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw StoreFormatError("store document must be a JSON object");
    if (doc.value("format_version", 0) != kStoreFormatVersion) {
      throw StoreFormatError("unsupported or missing store format_version");
    }
    StoreMetadata meta;
    if (const auto it = doc.find("metadata"); it != doc.end()) {
      meta.source_file = it->value("source_file", "");
      meta.format = it->value("format", "");
      if (it->contains("projection_rule")) {
        meta.projection_rule = it->at("projection_rule").get<std::string>();
      }
    }
    std::vector<MemberId> members;
    for (const auto& m : doc.at("members")) members.emplace_back(m.get<std::string>());
    std::vector<ContextId> contexts;
    for (const auto& c : doc.at("contexts")) contexts.emplace_back(c.get<std::string>());

    std::vector<Interaction> ledger;
    for (const auto& entry : doc.at("ledger")) {
      const auto kind = parse_kind(entry.at("kind").get<std::string>());
      const auto polarity = parse_polarity(entry.at("polarity").get<std::string>());
      if (!kind || !polarity) throw StoreFormatError("ledger entry has invalid kind or polarity");
      Interaction event{.source = MemberId(entry.at("source").get<std::string>()),
                        .target = MemberId(entry.at("target").get<std::string>()),
                        .context = ContextId(entry.at("context").get<std::string>()),
                        .kind = *kind,
                        .polarity = *polarity,
                        .timestamp = std::nullopt,
                        .weight = entry.at("weight").get<std::uint64_t>()};
      if (entry.contains("timestamp")) event.timestamp = entry.at("timestamp").get<double>();
      ledger.push_back(std::move(event));
    }
    return InteractionStore::from_ledger(std::move(ledger), std::move(members), std::move(meta),
                                         std::move(contexts));
  } catch (const nlohmann::json::exception& e) {
    throw StoreFormatError(std::string("malformed store JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw StoreFormatError(std::string("invalid store content: ") + e.what());
  }
}

InteractionStore store_from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw StoreFormatError(std::string("store is not valid JSON: ") + e.what());
  }
  return store_from_json(doc);
}

}  // namespace strust
