#include "refgen/hearer.hpp"

#include "refgen/error.hpp"

namespace refgen {

const char* to_string(HearerMode mode) {
  switch (mode) {
    case HearerMode::perceptual: return "perceptual";
    case HearerMode::depth_limited: return "depth-limited";
    case HearerMode::explicit_facts: return "explicit";
  }
  return "perceptual";
}

std::optional<HearerMode> parse_hearer_mode(const std::string& text) {
  if (text == "perceptual") return HearerMode::perceptual;
  if (text == "depth-limited") return HearerMode::depth_limited;
  if (text == "explicit") return HearerMode::explicit_facts;
  return std::nullopt;
}

const char* to_string(Knowledge knowledge) {
  switch (knowledge) {
    case Knowledge::yes: return "true";
    case Knowledge::no: return "false";
    case Knowledge::unknown: return "unknown";
  }
  return "unknown";
}

Knowledge user_knows(const Scene& scene, const EntityId& entity,
                     const AttributeValuePair& pair) {
  if (pair.is_no_value())
    throw Error(ErrorCode::precondition, "user_knows called with no-value");
  const Taxonomy& taxonomy = scene.taxonomy(pair.attribute);
  const Entity& e = scene.entity(entity);
  const ValueName& value = *pair.value;
  if (!taxonomy.contains(value))
    throw Error(ErrorCode::invalid_value, "value '" + value.str() +
                                              "' is not in the taxonomy of '" +
                                              pair.attribute.str() + "'");

  const HearerModel& hearer = scene.hearer();
  auto fact = hearer.known_facts.find({entity, pair.attribute, value});
  if (fact != hearer.known_facts.end()) return fact->second ? Knowledge::yes : Knowledge::no;

  auto own = e.value_of(pair.attribute);
  const bool accurate = own && taxonomy.subsumes(value, *own);

  switch (hearer.mode) {
    case HearerMode::perceptual:
      break;
    case HearerMode::depth_limited: {
      auto it = hearer.distinguishable.find(pair.attribute);
      if (it != hearer.distinguishable.end() && !it->second.count(value))
        return Knowledge::unknown;
      break;
    }
    case HearerMode::explicit_facts:
      return Knowledge::unknown;
  }
  return accurate ? Knowledge::yes : Knowledge::no;
}

namespace {

const ValueName& recorded_value(const Entity& e, const AttributeName& attribute,
                                std::optional<ValueName>& slot) {
  slot = e.value_of(attribute);
  if (!slot)
    throw Error(ErrorCode::invalid_reference,
                "entity '" + e.id.str() + "' has no value for '" + attribute.str() + "'");
  return *slot;
}

}  // namespace

ValueName basic_level_value(const Scene& scene, const EntityId& entity,
                            const AttributeName& attribute) {
  const Entity& e = scene.entity(entity);
  std::optional<ValueName> slot;
  const ValueName& own = recorded_value(e, attribute, slot);
  const Taxonomy& taxonomy = scene.taxonomy(attribute);
  const HearerModel& hearer = scene.hearer();

  for (const EntityId& key : {entity, EntityId{}}) {
    auto it = hearer.basic_overrides.find({key, attribute});
    if (it != hearer.basic_overrides.end() && taxonomy.contains(it->second) &&
        taxonomy.subsumes(it->second, own))
      return it->second;
  }
  auto path = taxonomy.path_from_root(own);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    if (taxonomy.is_basic(*it)) return *it;
  return own;
}

std::optional<ValueName> more_specific_value(const Scene& scene, const EntityId& entity,
                                             const AttributeName& attribute,
                                             const std::optional<ValueName>& value) {
  const Entity& e = scene.entity(entity);
  std::optional<ValueName> slot;
  const ValueName& own = recorded_value(e, attribute, slot);
  const Taxonomy& taxonomy = scene.taxonomy(attribute);
  auto path = taxonomy.path_from_root(own);
  if (!value) return path.front();
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == *value) {
      if (i + 1 == path.size()) return std::nullopt;
      return path[i + 1];
    }
  }
  if (!taxonomy.contains(*value))
    throw Error(ErrorCode::invalid_value, "value '" + value->str() +
                                              "' is not in the taxonomy of '" +
                                              attribute.str() + "'");
  throw Error(ErrorCode::invalid_specialization,
              "'" + value->str() + "' does not subsume " + e.id.str() + "'s " +
                  attribute.str() + " '" + own.str() + "'");
}

}  // namespace refgen
