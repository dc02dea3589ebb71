#pragma once
// Brute-force reference for the generators. Written against the raw scene data
// (parent links, entity values, hearer tables) and nothing else: it does not
// call user_knows, rules_out, is_distinguishing or candidate_pool.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refgen/kb.hpp"

namespace refgen::oracle {

enum class Truth { yes, no, unknown };

class Oracle {
 public:
  Oracle(const Scene& scene, const EntityId& referent, std::vector<EntityId> contrast);

  Truth knows(const EntityId& entity, const std::string& attribute,
              const std::string& value) const;

  // Hearer-mode distinguishing check done directly from the tables.
  bool distinguishes(const Description& description) const;

  // Smallest number of pairs in any hearer-distinguishing description, where
  // each preferred attribute may contribute any value on the referent's path.
  // nullopt when none exists.
  std::optional<std::size_t> minimum_size() const;

 private:
  std::vector<std::string> chain(const std::string& attribute, const std::string& value) const;
  std::uint64_t excluded_mask(const std::string& attribute, const std::string& value) const;

  const Scene& scene_;
  EntityId referent_;
  std::vector<EntityId> contrast_;
  std::map<std::string, std::map<std::string, std::string>> parent_;  // attr -> child -> parent
  std::map<std::string, std::map<std::string, std::string>> values_;  // entity -> attr -> value
};

}  // namespace refgen::oracle
