#pragma once
// Knowledge model: entities described by attribute-value pairs, with a
// subsumption forest of values for every attribute.
//
// A Scene is built once (by the parser or a generator) and then only read.
// Nothing in the generation path mutates it.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "refgen/hearer_model.hpp"
#include "refgen/symbol.hpp"

namespace refgen {

// ⟨attribute, value⟩. An empty value is the `no-value` sentinel.
struct AttributeValuePair {
  AttributeName attribute;
  std::optional<ValueName> value;

  bool is_no_value() const { return !value.has_value(); }

  auto operator<=>(const AttributeValuePair&) const = default;
};

inline AttributeValuePair make_pair(std::string attribute, std::string value) {
  return {AttributeName{std::move(attribute)}, ValueName{std::move(value)}};
}

std::string to_string(const AttributeValuePair& pair);

// Semantic content of a referring expression, in selection order.
struct Description {
  std::vector<AttributeValuePair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool has_attribute(const AttributeName& attribute) const;
  const AttributeValuePair* find(const AttributeName& attribute) const;

  bool operator==(const Description&) const = default;
};

std::string to_string(const Description& description);

// One attribute's value forest. Values are declared in order; re-declaring a
// value under a parent is recorded as-is so that check_scene can report
// cycles and multiple parents instead of the builder silently fixing them.
class Taxonomy {
 public:
  Taxonomy() = default;
  explicit Taxonomy(AttributeName attribute) : attribute_(std::move(attribute)) {}

  void add(const ValueName& value, std::optional<ValueName> parent = std::nullopt,
           bool basic_level = false);
  void mark_basic(const ValueName& value);

  const AttributeName& attribute() const { return attribute_; }
  bool contains(const ValueName& value) const { return parent_.count(value) > 0; }
  std::size_t size() const { return order_.size(); }

  // Declaration order.
  const std::vector<ValueName>& values() const { return order_; }
  std::optional<ValueName> parent(const ValueName& value) const;
  std::vector<ValueName> children(const ValueName& value) const;
  std::vector<ValueName> roots() const;
  bool is_basic(const ValueName& value) const { return basic_.count(value) > 0; }
  const std::set<ValueName>& basic_level() const { return basic_; }

  // Values declared under two different parents.
  const std::vector<ValueName>& conflicts() const { return conflicts_; }

  // Root-to-value path, inclusive at both ends. Throws invalid_value for an
  // unknown value. On a cyclic chain the walk stops after size() steps.
  std::vector<ValueName> path_from_root(const ValueName& value) const;

  bool has_cycle() const;

  // Reflexive-transitive: true iff ancestor == descendant or ancestor lies on
  // descendant's parent chain.
  bool subsumes(const ValueName& ancestor, const ValueName& descendant) const;

  bool operator==(const Taxonomy& other) const;

 private:
  void require(const ValueName& value) const;

  AttributeName attribute_;
  std::vector<ValueName> order_;
  std::map<ValueName, std::optional<ValueName>> parent_;
  std::set<ValueName> basic_;
  std::vector<ValueName> conflicts_;
};

bool subsumes(const Taxonomy& taxonomy, const ValueName& ancestor,
              const ValueName& descendant);

struct Entity {
  EntityId id;
  // Most specific value the system knows, per attribute, in declaration order.
  std::vector<std::pair<AttributeName, ValueName>> properties;

  std::optional<ValueName> value_of(const AttributeName& attribute) const;
  void set(const AttributeName& attribute, const ValueName& value);

  bool operator==(const Entity&) const = default;
};

class Scene {
 public:
  void add_taxonomy(Taxonomy taxonomy);
  Taxonomy& taxonomy_for(const AttributeName& attribute);  // creates if absent
  void add_entity(Entity entity) { entities_.push_back(std::move(entity)); }
  void set_preferred(std::vector<AttributeName> preferred) {
    preferred_ = std::move(preferred);
  }
  void set_hearer(HearerModel hearer) { hearer_ = std::move(hearer); }

  const std::vector<Entity>& entities() const { return entities_; }
  const Entity* find_entity(const EntityId& id) const;
  const Entity& entity(const EntityId& id) const;  // throws invalid_reference
  std::vector<EntityId> entity_ids() const;

  const std::vector<Taxonomy>& taxonomies() const { return taxonomies_; }
  const Taxonomy* find_taxonomy(const AttributeName& attribute) const;
  const Taxonomy& taxonomy(const AttributeName& attribute) const;  // throws

  const std::vector<AttributeName>& preferred_attributes() const { return preferred_; }
  const HearerModel& hearer() const { return hearer_; }

  bool operator==(const Scene&) const = default;

 private:
  std::vector<Entity> entities_;
  std::vector<Taxonomy> taxonomies_;
  std::vector<AttributeName> preferred_;
  HearerModel hearer_;
};

// C1 building block: the entity has a value for the attribute and the pair's
// value subsumes it. A no-value pair never applies.
bool applies(const Scene& scene, const EntityId& entity, const AttributeValuePair& pair);

enum class Severity { error, warning };

struct Violation {
  std::string code;               // machine-readable, e.g. "missing-type"
  std::vector<std::string> args;  // e.g. {"Object1"}
  Severity severity = Severity::error;

  // "missing-type(Object1)"
  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

std::vector<Violation> check_scene(const Scene& scene);
bool is_well_formed(const std::vector<Violation>& violations);

}  // namespace refgen
