#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace refgen::oracle {

Oracle::Oracle(const Scene& scene, const EntityId& referent, std::vector<EntityId> contrast)
    : scene_(scene), referent_(referent), contrast_(std::move(contrast)) {
  if (contrast_.size() > 63) throw std::invalid_argument("oracle: contrast set too large");
  for (const auto& t : scene.taxonomies()) {
    auto& links = parent_[t.attribute().str()];
    for (const auto& v : t.values()) {
      auto p = t.parent(v);
      links[v.str()] = p ? p->str() : std::string{};
    }
  }
  for (const auto& e : scene.entities())
    for (const auto& [a, v] : e.properties) values_[e.id.str()][a.str()] = v.str();
}

// value, parent, grandparent, ... up to the root.
std::vector<std::string> Oracle::chain(const std::string& attribute,
                                       const std::string& value) const {
  std::vector<std::string> out;
  auto tax = parent_.find(attribute);
  std::string cur = value;
  while (!cur.empty() && out.size() < 256) {
    out.push_back(cur);
    if (tax == parent_.end()) break;
    auto it = tax->second.find(cur);
    cur = it == tax->second.end() ? std::string{} : it->second;
  }
  return out;
}

Truth Oracle::knows(const EntityId& entity, const std::string& attribute,
                    const std::string& value) const {
  const HearerModel& h = scene_.hearer();
  auto fact = h.known_facts.find({entity, AttributeName{attribute}, ValueName{value}});
  if (fact != h.known_facts.end()) return fact->second ? Truth::yes : Truth::no;
  if (h.mode == HearerMode::explicit_facts) return Truth::unknown;
  if (h.mode == HearerMode::depth_limited) {
    auto d = h.distinguishable.find(AttributeName{attribute});
    if (d != h.distinguishable.end() && !d->second.count(ValueName{value})) return Truth::unknown;
  }
  auto ent = values_.find(entity.str());
  if (ent == values_.end()) return Truth::no;
  auto own = ent->second.find(attribute);
  if (own == ent->second.end()) return Truth::no;
  auto up = chain(attribute, own->second);
  return std::find(up.begin(), up.end(), value) != up.end() ? Truth::yes : Truth::no;
}

std::uint64_t Oracle::excluded_mask(const std::string& attribute,
                                    const std::string& value) const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < contrast_.size(); ++i)
    if (knows(contrast_[i], attribute, value) == Truth::no) mask |= std::uint64_t{1} << i;
  return mask;
}

bool Oracle::distinguishes(const Description& description) const {
  std::uint64_t mask = 0;
  for (const auto& p : description.pairs) {
    if (!p.value) continue;
    if (knows(referent_, p.attribute.str(), p.value->str()) != Truth::yes) return false;
    mask |= excluded_mask(p.attribute.str(), p.value->str());
  }
  std::uint64_t all = contrast_.empty() ? 0 : (std::uint64_t{1} << contrast_.size()) - 1;
  return mask == all;
}

std::optional<std::size_t> Oracle::minimum_size() const {
  // For each usable attribute, every distinct exclusion mask its known values give.
  std::vector<std::vector<std::uint64_t>> options;
  auto ent = values_.find(referent_.str());
  for (const auto& a : scene_.preferred_attributes()) {
    if (ent == values_.end()) break;
    auto own = ent->second.find(a.str());
    if (own == ent->second.end()) continue;
    std::vector<std::uint64_t> masks;
    for (const auto& v : chain(a.str(), own->second)) {
      if (knows(referent_, a.str(), v) != Truth::yes) continue;
      auto m = excluded_mask(a.str(), v);
      if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    }
    if (!masks.empty()) options.push_back(std::move(masks));
  }

  const std::uint64_t all = contrast_.empty() ? 0 : (std::uint64_t{1} << contrast_.size()) - 1;
  std::optional<std::size_t> best;
  // Depth-first over attributes: skip it, or take one of its values.
  auto search = [&](auto&& self, std::size_t i, std::uint64_t mask, std::size_t used) -> void {
    if (best && used >= *best) return;
    if (mask == all) {
      best = used;
      return;
    }
    if (i == options.size()) return;
    self(self, i + 1, mask, used);
    for (auto m : options[i]) self(self, i + 1, mask | m, used + 1);
  };
  search(search, 0, 0, 0);
  return best;
}

}  // namespace refgen::oracle
