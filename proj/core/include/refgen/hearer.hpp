#pragma once
// The three knowledge-base interface functions the generators rely on:
// user_knows, basic_level_value and more_specific_value.

#include <optional>

#include "refgen/kb.hpp"

namespace refgen {

enum class Knowledge { yes, no, unknown };

const char* to_string(Knowledge knowledge);

// Whether the hearer knows or can easily perceive that the pair applies.
// Throws invalid_reference for an unknown entity or attribute and
// invalid_value for a value outside the attribute's taxonomy.
Knowledge user_knows(const Scene& scene, const EntityId& entity,
                     const AttributeValuePair& pair);

// Override, else the basic-level ancestor (inclusive) of the entity's value,
// else the entity's value itself.
ValueName basic_level_value(const Scene& scene, const EntityId& entity,
                            const AttributeName& attribute);

// The child of `value` on the path toward the entity's recorded value, or
// nullopt once the recorded value is reached. A no-value argument (nullopt)
// starts at the root of that path.
std::optional<ValueName> more_specific_value(const Scene& scene, const EntityId& entity,
                                             const AttributeName& attribute,
                                             const std::optional<ValueName>& value);

}  // namespace refgen
