#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "refgen/symbol.hpp"

namespace refgen {

enum class HearerMode {
  perceptual,     // knows exactly what is accurate
  depth_limited,  // can only tell apart the listed values of an attribute
  explicit_facts, // knows only what is listed
};

const char* to_string(HearerMode mode);
std::optional<HearerMode> parse_hearer_mode(const std::string& text);

struct HearerModel {
  HearerMode mode = HearerMode::perceptual;

  // depth-limited: per attribute, the values the user can distinguish.
  // Attributes without an entry are perceived fully.
  std::map<AttributeName, std::set<ValueName>> distinguishable;

  // Overrides honoured in every mode.
  std::map<std::tuple<EntityId, AttributeName, ValueName>, bool> known_facts;

  // Per-user basic levels; an empty entity id applies to every entity.
  std::map<std::pair<EntityId, AttributeName>, ValueName> basic_overrides;

  bool operator==(const HearerModel&) const = default;
};

}  // namespace refgen
