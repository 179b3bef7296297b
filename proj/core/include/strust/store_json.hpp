#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "strust/interaction_store.hpp"

namespace strust {

inline constexpr int kStoreFormatVersion = 1;

// Canonical serialization: sorted members, sorted contexts, the ledger in
// store order, and the ingest metadata. Key order is fixed so equal stores
// serialize to identical bytes.
nlohmann::ordered_json store_to_json(const InteractionStore& store);

// Throws StoreFormatError on malformed documents and the usual validation
// errors (SelfInteraction, NegativePassive) on invalid ledger entries.
InteractionStore store_from_json(const nlohmann::json& doc);
InteractionStore store_from_json_text(std::string_view text);

}  // namespace strust
