#pragma once

#include "strust/error.hpp"
#include "strust/ingest.hpp"
#include "strust/interaction.hpp"
#include "strust/interaction_store.hpp"
#include "strust/member_id.hpp"
#include "strust/recommender.hpp"
#include "strust/store_json.hpp"
#include "strust/sustainability.hpp"
#include "strust/trust_engine.hpp"
