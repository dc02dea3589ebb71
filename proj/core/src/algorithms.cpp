#include "refgen/algorithms.hpp"

#include <algorithm>

#include "refgen/error.hpp"

namespace refgen {

GenerationTask GenerationTask::make(const Scene& scene, const EntityId& referent,
                                    EntitySet contrast) {
  scene.entity(referent);
  for (const auto& id : contrast) scene.entity(id);
  if (contrast.count(referent))
    throw Error(ErrorCode::precondition,
                "referent '" + referent.str() + "' is in its own contrast set");
  return GenerationTask{scene, referent, std::move(contrast)};
}

GenerationTask GenerationTask::against_all(const Scene& scene, const EntityId& referent) {
  EntitySet contrast;
  for (const auto& e : scene.entities())
    if (e.id != referent) contrast.insert(e.id);
  return make(scene, referent, std::move(contrast));
}

RunCounters& RunCounters::operator+=(const RunCounters& other) {
  user_knows_calls += other.user_knows_calls;
  distinguishing_checks += other.distinguishing_checks;
  candidates_enumerated += other.candidates_enumerated;
  pairs_considered += other.pairs_considered;
  return *this;
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::full_brevity: return "full-brevity";
    case Algorithm::greedy: return "greedy";
    case Algorithm::local_brevity: return "local-brevity";
    case Algorithm::incremental: return "incremental";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& text) {
  for (auto a : {Algorithm::full_brevity, Algorithm::greedy, Algorithm::local_brevity,
                 Algorithm::incremental})
    if (text == to_string(a)) return a;
  return std::nullopt;
}

namespace {

// Counts every hearer query made during one run.
Knowledge knows(const GenerationTask& task, const EntityId& entity,
                const AttributeValuePair& pair, RunCounters* counters) {
  if (counters) ++counters->user_knows_calls;
  return user_knows(task.scene, entity, pair);
}

std::size_t count_ruled_out(const GenerationTask& task, const EntitySet& remaining,
                            const AttributeValuePair& pair, RunCounters* counters) {
  return pair.is_no_value() ? 0 : rules_out(task, remaining, pair, counters).size();
}

Description without(const Description& d, std::size_t index) {
  Description out;
  for (std::size_t i = 0; i < d.pairs.size(); ++i)
    if (i != index) out.pairs.push_back(d.pairs[i]);
  return out;
}

// Advances `idx` (strictly increasing indices < n) to the next combination in
// lexicographic order; false once exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

}  // namespace

EntitySet rules_out(const GenerationTask& task, const EntitySet& remaining,
                    const AttributeValuePair& pair, RunCounters* counters) {
  EntitySet out;
  if (pair.is_no_value()) return out;
  if (counters) ++counters->pairs_considered;
  for (const auto& x : remaining)
    if (knows(task, x, pair, counters) == Knowledge::no) out.insert(x);
  return out;
}

bool is_distinguishing(const GenerationTask& task, const Description& description,
                       CheckMode mode, RunCounters* counters) {
  if (counters) ++counters->distinguishing_checks;
  for (const auto& pair : description.pairs)
    if (pair.is_no_value()) return false;

  if (mode == CheckMode::system) {
    for (const auto& pair : description.pairs)
      if (!applies(task.scene, task.referent, pair)) return false;
    for (const auto& c : task.contrast) {
      bool excluded = std::any_of(
          description.pairs.begin(), description.pairs.end(),
          [&](const AttributeValuePair& p) { return !applies(task.scene, c, p); });
      if (!excluded) return false;
    }
    return true;
  }

  for (const auto& pair : description.pairs)
    if (knows(task, task.referent, pair, counters) != Knowledge::yes) return false;
  EntitySet remaining = task.contrast;
  for (const auto& pair : description.pairs) {
    if (remaining.empty()) break;
    for (const auto& x : rules_out(task, remaining, pair, counters)) remaining.erase(x);
  }
  return remaining.empty();
}

std::vector<AttributeValuePair> candidate_pool(const GenerationTask& task,
                                               RunCounters* counters) {
  std::vector<AttributeValuePair> pool;
  const Entity& r = task.scene.entity(task.referent);
  for (const auto& attribute : task.scene.preferred_attributes()) {
    auto own = r.value_of(attribute);
    if (!own) continue;
    std::optional<AttributeValuePair> best;
    std::size_t best_count = 0;
    for (const auto& v : task.scene.taxonomy(attribute).path_from_root(*own)) {
      AttributeValuePair candidate{attribute, v};
      if (knows(task, task.referent, candidate, counters) != Knowledge::yes) continue;
      std::size_t n = count_ruled_out(task, task.contrast, candidate, counters);
      if (!best || n > best_count) {
        best = candidate;
        best_count = n;
      }
    }
    if (best) pool.push_back(*best);
  }
  return pool;
}

GenerationResult full_brevity(const GenerationTask& task) {
  GenerationResult result;
  RunCounters& c = result.counters;
  auto pool = candidate_pool(task, &c);
  if (task.contrast.empty()) {
    result.description = Description{};
    return result;
  }
  const std::size_t n = pool.size();
  for (std::size_t k = 1; k <= n; ++k) {
    auto idx = first_combination(k);
    do {
      ++c.candidates_enumerated;
      Description d;
      for (auto i : idx) d.pairs.push_back(pool[i]);
      if (is_distinguishing(task, d, CheckMode::hearer, &c)) {
        result.description = std::move(d);
        return result;
      }
    } while (next_combination(idx, n));
  }
  return result;
}

GenerationResult greedy_heuristic(const GenerationTask& task) {
  GenerationResult result;
  RunCounters& c = result.counters;
  auto properties = candidate_pool(task, &c);
  EntitySet remaining = task.contrast;
  Description chosen;

  for (;;) {
    // Check success
    ++c.distinguishing_checks;
    if (remaining.empty()) {
      result.description = std::move(chosen);
      return result;
    }
    if (properties.empty()) return result;

    // Choose property: the one leaving the smallest remaining set. Earlier
    // pool entries (preferred order) win ties.
    std::size_t best = 0;
    EntitySet best_left;
    for (std::size_t i = 0; i < properties.size(); ++i) {
      EntitySet left = remaining;
      for (const auto& x : rules_out(task, remaining, properties[i], &c)) left.erase(x);
      if (i == 0 || left.size() < best_left.size()) {
        best = i;
        best_left = std::move(left);
      }
    }

    // Extend description
    chosen.pairs.push_back(properties[best]);
    remaining = std::move(best_left);
    properties.erase(properties.begin() + static_cast<std::ptrdiff_t>(best));
  }
}

namespace {

class LocalImprover {
 public:
  LocalImprover(const GenerationTask& task, RunCounters& counters)
      : task_(task), c_(counters), pool_(candidate_pool(task, &counters)) {}

  Description run(Description current) {
    for (;;) {
      if (auto next = remove_one(current)) {
        current = std::move(*next);
      } else if (auto next = replace_many(current)) {
        current = std::move(*next);
      } else if (auto next = generalize(current)) {
        current = std::move(*next);
      } else {
        return current;
      }
    }
  }

 private:
  bool ok(const Description& d) { return is_distinguishing(task_, d, CheckMode::hearer, &c_); }

  // No unnecessary components.
  std::optional<Description> remove_one(const Description& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      Description candidate = without(d, i);
      if (ok(candidate)) return candidate;
    }
    return std::nullopt;
  }

  // Local brevity: two or more pairs replaced by one pool pair.
  std::optional<Description> replace_many(const Description& d) {
    const std::size_t n = d.size();
    for (std::size_t k = n; k >= 2; --k) {
      auto idx = first_combination(k);
      do {
        Description kept;
        for (std::size_t i = 0; i < n; ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) kept.pairs.push_back(d.pairs[i]);
        for (const auto& p : pool_) {
          if (kept.has_attribute(p.attribute)) continue;
          ++c_.candidates_enumerated;
          Description candidate = kept;
          candidate.pairs.push_back(p);
          if (ok(candidate)) return candidate;
        }
      } while (next_combination(idx, n));
    }
    return std::nullopt;
  }

  // Lexical preference: move a value up toward (never past) the referent's
  // basic-level value.
  std::optional<Description> generalize(const Description& d) {
    const Entity& r = task_.scene.entity(task_.referent);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto& pair = d.pairs[i];
      if (pair.is_no_value() || !r.value_of(pair.attribute)) continue;
      const Taxonomy& taxonomy = task_.scene.taxonomy(pair.attribute);
      ValueName basic = basic_level_value(task_.scene, task_.referent, pair.attribute);
      if (basic == *pair.value || !taxonomy.subsumes(basic, *pair.value)) continue;
      auto path = taxonomy.path_from_root(*pair.value);
      auto start = std::find(path.begin(), path.end(), basic);
      for (auto it = start; it + 1 != path.end(); ++it) {
        AttributeValuePair general{pair.attribute, *it};
        if (knows(task_, task_.referent, general, &c_) != Knowledge::yes) continue;
        Description candidate = d;
        candidate.pairs[i] = general;
        if (ok(candidate)) return candidate;
      }
    }
    return std::nullopt;
  }

  const GenerationTask& task_;
  RunCounters& c_;
  std::vector<AttributeValuePair> pool_;
};

}  // namespace

GenerationResult local_brevity(const GenerationTask& task,
                               const std::optional<Description>& initial) {
  GenerationResult result;
  Description start;
  if (initial) {
    if (!is_distinguishing(task, *initial, CheckMode::hearer, &result.counters))
      throw Error(ErrorCode::precondition,
                  "initial description " + to_string(*initial) + " is not distinguishing");
    start = *initial;
  } else {
    GenerationResult seed = greedy_heuristic(task);
    result.counters += seed.counters;
    if (!seed.ok()) return result;
    start = std::move(*seed.description);
  }
  result.description = LocalImprover(task, result.counters).run(std::move(start));
  return result;
}

namespace {

// Mirrors the recursive definition: take the initial value if the hearer knows
// it, then let the best value found further down the referent's path replace
// it only if it rules out strictly more. Only the outermost call may restart
// at the path root after an unknown value; nested calls keep descending, which
// guarantees termination.
std::optional<ValueName> best_value(const GenerationTask& task, const EntitySet& remaining,
                                    const AttributeName& attribute,
                                    const std::optional<ValueName>& initial, bool outermost,
                                    RunCounters* counters) {
  std::optional<ValueName> value;
  if (initial && knows(task, task.referent, {attribute, initial}, counters) == Knowledge::yes)
    value = initial;

  std::optional<ValueName> cursor = value ? value : (outermost ? std::nullopt : initial);
  const Taxonomy& taxonomy = task.scene.taxonomy(attribute);
  auto own = task.scene.entity(task.referent).value_of(attribute);
  if (!own) return value;
  if (cursor && !(taxonomy.contains(*cursor) && taxonomy.subsumes(*cursor, *own)))
    return value;

  auto next = more_specific_value(task.scene, task.referent, attribute, cursor);
  if (!next) return value;
  auto candidate = best_value(task, remaining, attribute, next, false, counters);
  if (candidate &&
      count_ruled_out(task, remaining, {attribute, candidate}, counters) >
          count_ruled_out(task, remaining, {attribute, value}, counters))
    value = candidate;
  return value;
}

}  // namespace

std::optional<ValueName> find_best_value(const GenerationTask& task,
                                         const EntitySet& remaining,
                                         const AttributeName& attribute,
                                         const std::optional<ValueName>& initial_value,
                                         RunCounters* counters) {
  return best_value(task, remaining, attribute, initial_value, true, counters);
}

GenerationResult incremental(const GenerationTask& task) {
  GenerationResult result;
  RunCounters* c = &result.counters;
  EntitySet remaining = task.contrast;
  Description chosen;
  const Entity& r = task.scene.entity(task.referent);

  for (const auto& attribute : task.scene.preferred_attributes()) {
    if (r.value_of(attribute)) {
      auto value = find_best_value(task, remaining, attribute,
                                   basic_level_value(task.scene, task.referent, attribute), c);
      AttributeValuePair pair{attribute, value};
      auto excluded = rules_out(task, remaining, pair, c);
      if (!excluded.empty()) {
        chosen.pairs.push_back(pair);
        for (const auto& x : excluded) remaining.erase(x);
      }
    }
    if (remaining.empty()) {
      result.head_noun_added = !chosen.has_attribute(kTypeAttribute);
      result.description = ensure_head_noun(task, std::move(chosen));
      return result;
    }
  }
  return result;
}

Description ensure_head_noun(const GenerationTask& task, Description description) {
  if (!description.has_attribute(kTypeAttribute))
    description.pairs.push_back(
        {kTypeAttribute, basic_level_value(task.scene, task.referent, kTypeAttribute)});
  return description;
}

GenerationResult generate(Algorithm algorithm, const GenerationTask& task) {
  switch (algorithm) {
    case Algorithm::full_brevity: return full_brevity(task);
    case Algorithm::greedy: return greedy_heuristic(task);
    case Algorithm::local_brevity: return local_brevity(task);
    case Algorithm::incremental: return incremental(task);
  }
  throw Error(ErrorCode::precondition, "unknown algorithm");
}

}  // namespace refgen
