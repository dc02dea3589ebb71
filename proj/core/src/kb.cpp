#include "refgen/kb.hpp"

#include <algorithm>
#include <sstream>

#include "refgen/error.hpp"

namespace refgen {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_value: return "invalid-value";
    case ErrorCode::invalid_reference: return "invalid-reference";
    case ErrorCode::invalid_specialization: return "invalid-specialization";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::syntax: return "syntax";
  }
  return "unknown";
}

std::string to_string(const AttributeValuePair& pair) {
  return "<" + pair.attribute.str() + ", " +
         (pair.value ? pair.value->str() : std::string("no-value")) + ">";
}

bool Description::has_attribute(const AttributeName& attribute) const {
  return find(attribute) != nullptr;
}

const AttributeValuePair* Description::find(const AttributeName& attribute) const {
  for (const auto& p : pairs)
    if (p.attribute == attribute) return &p;
  return nullptr;
}

std::string to_string(const Description& description) {
  std::string out = "{";
  for (std::size_t i = 0; i < description.pairs.size(); ++i) {
    if (i) out += ", ";
    out += to_string(description.pairs[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------- Taxonomy

void Taxonomy::add(const ValueName& value, std::optional<ValueName> parent,
                   bool basic_level) {
  auto it = parent_.find(value);
  if (it == parent_.end()) {
    order_.push_back(value);
    parent_.emplace(value, std::move(parent));
  } else if (parent) {
    if (!it->second)
      it->second = std::move(parent);
    else if (*it->second != *parent &&
             std::find(conflicts_.begin(), conflicts_.end(), value) == conflicts_.end())
      conflicts_.push_back(value);
  }
  if (basic_level) basic_.insert(value);
}

void Taxonomy::mark_basic(const ValueName& value) {
  require(value);
  basic_.insert(value);
}

void Taxonomy::require(const ValueName& value) const {
  if (!contains(value))
    throw Error(ErrorCode::invalid_value,
                "value '" + value.str() + "' is not in the taxonomy of '" +
                    attribute_.str() + "'");
}

std::optional<ValueName> Taxonomy::parent(const ValueName& value) const {
  require(value);
  return parent_.at(value);
}

std::vector<ValueName> Taxonomy::children(const ValueName& value) const {
  std::vector<ValueName> out;
  for (const auto& v : order_) {
    const auto& p = parent_.at(v);
    if (p && *p == value) out.push_back(v);
  }
  return out;
}

std::vector<ValueName> Taxonomy::roots() const {
  std::vector<ValueName> out;
  for (const auto& v : order_)
    if (!parent_.at(v)) out.push_back(v);
  return out;
}

std::vector<ValueName> Taxonomy::path_from_root(const ValueName& value) const {
  require(value);
  std::vector<ValueName> path{value};
  std::optional<ValueName> cur = parent_.at(value);
  while (cur && path.size() <= order_.size()) {
    path.push_back(*cur);
    cur = parent_.count(*cur) ? parent_.at(*cur) : std::nullopt;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool Taxonomy::has_cycle() const {
  for (const auto& v : order_) {
    std::optional<ValueName> cur = parent_.at(v);
    for (std::size_t steps = 0; cur; ++steps) {
      if (*cur == v || steps > order_.size()) return true;
      auto it = parent_.find(*cur);
      cur = it == parent_.end() ? std::nullopt : it->second;
    }
  }
  return false;
}

bool Taxonomy::subsumes(const ValueName& ancestor, const ValueName& descendant) const {
  require(ancestor);
  require(descendant);
  std::optional<ValueName> cur = descendant;
  for (std::size_t steps = 0; cur && steps <= order_.size(); ++steps) {
    if (*cur == ancestor) return true;
    auto it = parent_.find(*cur);
    cur = it == parent_.end() ? std::nullopt : it->second;
  }
  return false;
}

bool Taxonomy::operator==(const Taxonomy& other) const {
  // Declaration order is presentation only.
  return attribute_ == other.attribute_ && parent_ == other.parent_ && basic_ == other.basic_;
}

bool subsumes(const Taxonomy& taxonomy, const ValueName& ancestor,
              const ValueName& descendant) {
  return taxonomy.subsumes(ancestor, descendant);
}

// ------------------------------------------------------------------ Entity

std::optional<ValueName> Entity::value_of(const AttributeName& attribute) const {
  for (const auto& [a, v] : properties)
    if (a == attribute) return v;
  return std::nullopt;
}

void Entity::set(const AttributeName& attribute, const ValueName& value) {
  for (auto& [a, v] : properties) {
    if (a == attribute) {
      v = value;
      return;
    }
  }
  properties.emplace_back(attribute, value);
}

// ------------------------------------------------------------------- Scene

void Scene::add_taxonomy(Taxonomy taxonomy) {
  for (auto& t : taxonomies_) {
    if (t.attribute() == taxonomy.attribute()) {
      t = std::move(taxonomy);
      return;
    }
  }
  taxonomies_.push_back(std::move(taxonomy));
}

Taxonomy& Scene::taxonomy_for(const AttributeName& attribute) {
  for (auto& t : taxonomies_)
    if (t.attribute() == attribute) return t;
  taxonomies_.emplace_back(attribute);
  return taxonomies_.back();
}

const Entity* Scene::find_entity(const EntityId& id) const {
  for (const auto& e : entities_)
    if (e.id == id) return &e;
  return nullptr;
}

const Entity& Scene::entity(const EntityId& id) const {
  if (const Entity* e = find_entity(id)) return *e;
  throw Error(ErrorCode::invalid_reference, "unknown entity '" + id.str() + "'");
}

std::vector<EntityId> Scene::entity_ids() const {
  std::vector<EntityId> ids;
  ids.reserve(entities_.size());
  for (const auto& e : entities_) ids.push_back(e.id);
  return ids;
}

const Taxonomy* Scene::find_taxonomy(const AttributeName& attribute) const {
  for (const auto& t : taxonomies_)
    if (t.attribute() == attribute) return &t;
  return nullptr;
}

const Taxonomy& Scene::taxonomy(const AttributeName& attribute) const {
  if (const Taxonomy* t = find_taxonomy(attribute)) return *t;
  throw Error(ErrorCode::invalid_reference, "unknown attribute '" + attribute.str() + "'");
}

bool applies(const Scene& scene, const EntityId& entity, const AttributeValuePair& pair) {
  if (pair.is_no_value()) return false;
  auto own = scene.entity(entity).value_of(pair.attribute);
  if (!own) return false;
  return scene.taxonomy(pair.attribute).subsumes(*pair.value, *own);
}

// -------------------------------------------------------------- check_scene

std::string Violation::to_string() const {
  std::string out = code + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  return out + ")";
}

namespace {

class Checker {
 public:
  explicit Checker(const Scene& scene) : scene_(scene) {}

  std::vector<Violation> run() {
    check_taxonomies();
    check_entities();
    check_preferred();
    check_hearer();
    return std::move(out_);
  }

 private:
  void error(std::string code, std::vector<std::string> args) {
    out_.push_back({std::move(code), std::move(args), Severity::error});
  }
  void warning(std::string code, std::vector<std::string> args) {
    out_.push_back({std::move(code), std::move(args), Severity::warning});
  }

  bool usable(const Taxonomy* t) const { return t && !t->has_cycle(); }

  void check_taxonomies() {
    std::set<AttributeName> seen;
    for (const auto& t : scene_.taxonomies()) {
      if (t.attribute().empty()) error("empty-attribute-name", {});
      if (!seen.insert(t.attribute()).second) error("duplicate-taxonomy", {t.attribute().str()});
      for (const auto& v : t.conflicts()) error("multiple-parents", {t.attribute().str(), v.str()});
      if (t.has_cycle()) {
        error("cyclic-taxonomy", {t.attribute().str()});
        continue;
      }
      for (const auto& v : t.values()) {
        auto p = t.parent(v);
        if (p && !t.contains(*p)) error("unknown-parent", {t.attribute().str(), v.str(), p->str()});
      }
      for (const auto& b : t.basic_level()) {
        if (!t.contains(b)) {
          error("unknown-value", {"basic", t.attribute().str(), b.str()});
          continue;
        }
        auto path = t.path_from_root(b);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          if (t.is_basic(path[i])) error("nested-basic-level", {t.attribute().str(), b.str()});
      }
    }
  }

  void check_entities() {
    if (scene_.entities().empty()) error("no-entities", {});
    std::set<EntityId> ids;
    for (const auto& e : scene_.entities()) {
      if (!ids.insert(e.id).second) error("duplicate-entity", {e.id.str()});
      if (!e.value_of(kTypeAttribute)) error("missing-type", {e.id.str()});
      std::set<AttributeName> attrs;
      for (const auto& [a, v] : e.properties) {
        if (!attrs.insert(a).second) error("duplicate-attribute", {e.id.str(), a.str()});
        const Taxonomy* t = scene_.find_taxonomy(a);
        if (!t) {
          error("missing-taxonomy", {a.str()});
          continue;
        }
        if (!t->contains(v)) error("unknown-value", {e.id.str(), a.str(), v.str()});
      }
    }
  }

  void check_preferred() {
    const auto& pref = scene_.preferred_attributes();
    if (pref.empty()) {
      error("empty-preferred", {});
      return;
    }
    std::set<AttributeName> seen;
    for (const auto& a : pref) {
      if (!seen.insert(a).second) error("duplicate-preferred", {a.str()});
      if (!scene_.find_taxonomy(a)) error("unknown-preferred", {a.str()});
    }
    if (!seen.count(kTypeAttribute)) error("preferred-missing-type", {});
  }

  void check_hearer() {
    const HearerModel& h = scene_.hearer();
    for (const auto& [attr, values] : h.distinguishable) {
      const Taxonomy* t = scene_.find_taxonomy(attr);
      if (!t) {
        error("hearer-unknown-attribute", {attr.str()});
        continue;
      }
      for (const auto& v : values)
        if (!t->contains(v)) error("hearer-unknown-value", {attr.str(), v.str()});
    }
    for (const auto& [key, known] : h.known_facts) {
      const auto& [id, attr, value] = key;
      const Entity* e = scene_.find_entity(id);
      const Taxonomy* t = scene_.find_taxonomy(attr);
      if (!e) {
        error("hearer-unknown-entity", {id.str()});
        continue;
      }
      if (!t) {
        error("hearer-unknown-attribute", {attr.str()});
        continue;
      }
      if (!t->contains(value)) {
        error("hearer-unknown-value", {attr.str(), value.str()});
        continue;
      }
      if (!usable(t)) continue;
      auto own = e->value_of(attr);
      bool accurate = own && t->contains(*own) && t->subsumes(value, *own);
      if (known != accurate)
        warning("override-contradicts-scene",
                {id.str(), attr.str(), value.str(), known ? "true" : "false"});
    }
    for (const auto& [key, value] : h.basic_overrides) {
      const auto& [id, attr] = key;
      const Taxonomy* t = scene_.find_taxonomy(attr);
      if (!t) {
        error("hearer-unknown-attribute", {attr.str()});
        continue;
      }
      if (!t->contains(value)) {
        error("hearer-unknown-value", {attr.str(), value.str()});
        continue;
      }
      if (id.empty()) continue;
      const Entity* e = scene_.find_entity(id);
      if (!e) {
        error("hearer-unknown-entity", {id.str()});
        continue;
      }
      auto own = e->value_of(attr);
      if (!own || !usable(t) || !t->contains(*own) || !t->subsumes(value, *own))
        error("invalid-basic-override", {id.str(), attr.str(), value.str()});
    }
  }

  const Scene& scene_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> check_scene(const Scene& scene) { return Checker(scene).run(); }

bool is_well_formed(const std::vector<Violation>& violations) {
  return std::none_of(violations.begin(), violations.end(),
                      [](const Violation& v) { return v.severity == Severity::error; });
}

}  // namespace refgen
