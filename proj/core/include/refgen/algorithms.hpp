#pragma once
// Content determination for referring expressions.
//
// Four readings of the brevity maxim are provided:
//   full_brevity     exhaustive search for a smallest description
//   greedy_heuristic set-cover style: repeatedly take the pair ruling out most
//   local_brevity    iterative improvement of an initial description
//   incremental      fixed sweep over the preferred attributes, no backtracking
//
// All of them read the Scene only and keep their working state per call, so
// concurrent runs over one Scene are safe. Each run reports its own counters.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refgen/hearer.hpp"
#include "refgen/kb.hpp"

namespace refgen {

using EntitySet = std::set<EntityId>;

struct GenerationTask {
  const Scene& scene;
  EntityId referent;
  EntitySet contrast;

  // Validates ids; throws invalid_reference / precondition.
  static GenerationTask make(const Scene& scene, const EntityId& referent,
                             EntitySet contrast);
  // Contrast set = every other entity in the scene.
  static GenerationTask against_all(const Scene& scene, const EntityId& referent);
};

struct RunCounters {
  std::uint64_t user_knows_calls = 0;
  std::uint64_t distinguishing_checks = 0;
  std::uint64_t candidates_enumerated = 0;
  std::uint64_t pairs_considered = 0;

  RunCounters& operator+=(const RunCounters& other);
  bool operator==(const RunCounters&) const = default;
};

struct GenerationResult {
  std::optional<Description> description;  // nullopt means failure
  RunCounters counters;
  // incremental only: the trailing type pair was appended as head noun rather
  // than selected for its discriminating power.
  bool head_noun_added = false;

  bool ok() const { return description.has_value(); }
};

enum class Algorithm { full_brevity, greedy, local_brevity, incremental };

const char* to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& text);

enum class CheckMode { system, hearer };

// Members of `remaining` the hearer knows the pair does not apply to.
// `unknown` is never ruled out; a no-value pair rules out nothing.
EntitySet rules_out(const GenerationTask& task, const EntitySet& remaining,
                    const AttributeValuePair& pair, RunCounters* counters = nullptr);

bool is_distinguishing(const GenerationTask& task, const Description& description,
                       CheckMode mode, RunCounters* counters = nullptr);

// One pair per preferred attribute the referent has: the hearer-known value on
// the referent's path ruling out most of the contrast set, ties going to the
// least specific value. Order follows the preferred attributes.
std::vector<AttributeValuePair> candidate_pool(const GenerationTask& task,
                                               RunCounters* counters = nullptr);

GenerationResult full_brevity(const GenerationTask& task);
GenerationResult greedy_heuristic(const GenerationTask& task);

// `initial` must be a hearer-distinguishing description; when absent the
// greedy result is used as the starting point.
GenerationResult local_brevity(const GenerationTask& task,
                               const std::optional<Description>& initial = std::nullopt);

// Best value for `attribute` at or below `initial_value` against `remaining`;
// nullopt is no-value.
std::optional<ValueName> find_best_value(const GenerationTask& task,
                                         const EntitySet& remaining,
                                         const AttributeName& attribute,
                                         const std::optional<ValueName>& initial_value,
                                         RunCounters* counters = nullptr);

GenerationResult incremental(const GenerationTask& task);

// Appends <type, basic-level type of the referent> unless a type pair exists.
Description ensure_head_noun(const GenerationTask& task, Description description);

GenerationResult generate(Algorithm algorithm, const GenerationTask& task);

}  // namespace refgen
