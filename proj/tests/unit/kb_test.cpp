#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "refgen/error.hpp"
#include "refgen/kb.hpp"

using namespace refgen;
using refgen::fixtures::chihuahua_scene;

namespace {

ValueName V(const char* s) { return ValueName{s}; }

bool has_code(const std::vector<Violation>& vs, const std::string& rendered) {
  for (const auto& v : vs)
    if (v.to_string() == rendered) return true;
  return false;
}

// Copy of `base` with entities passed through `edit`.
Scene with_entities(const Scene& base, const std::function<void(std::vector<Entity>&)>& edit) {
  Scene s;
  for (const auto& t : base.taxonomies()) s.add_taxonomy(t);
  auto entities = base.entities();
  edit(entities);
  for (auto& e : entities) s.add_entity(e);
  s.set_preferred(base.preferred_attributes());
  s.set_hearer(base.hearer());
  return s;
}

Scene with_taxonomy(const Scene& base, const AttributeName& attr,
                    const std::function<void(Taxonomy&)>& edit) {
  Scene s;
  for (auto t : base.taxonomies()) {
    if (t.attribute() == attr) edit(t);
    s.add_taxonomy(t);
  }
  for (const auto& e : base.entities()) s.add_entity(e);
  s.set_preferred(base.preferred_attributes());
  s.set_hearer(base.hearer());
  return s;
}

Taxonomy random_forest(std::mt19937_64& rng, std::size_t n) {
  Taxonomy t(AttributeName{"a"});
  for (std::size_t i = 0; i < n; ++i) {
    ValueName v{"v" + std::to_string(i)};
    if (i == 0 || rng() % 4 == 0)
      t.add(v);
    else
      t.add(v, ValueName{"v" + std::to_string(rng() % i)});
  }
  return t;
}

}  // namespace

TEST(Subsumes, Examples) {
  Scene s = chihuahua_scene();
  const Taxonomy& type = s.taxonomy(kTypeAttribute);
  EXPECT_TRUE(type.subsumes(V("animal"), V("chihuahua")));
  EXPECT_TRUE(type.subsumes(V("dog"), V("dog")));
  EXPECT_FALSE(type.subsumes(V("cat"), V("chihuahua")));
  EXPECT_FALSE(type.subsumes(V("chihuahua"), V("dog")));
}

TEST(Subsumes, UnknownValueIsInvalidValue) {
  Scene s = chihuahua_scene();
  try {
    (void)s.taxonomy(kTypeAttribute).subsumes(V("wolf"), V("dog"));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_value);
  }
}

TEST(Subsumes, FlatTaxonomyIsEquality) {
  Scene s = chihuahua_scene();
  const Taxonomy& size = s.taxonomy(AttributeName{"size"});
  EXPECT_TRUE(size.subsumes(V("small"), V("small")));
  EXPECT_FALSE(size.subsumes(V("small"), V("large")));
}

TEST(Subsumes, RandomForestProperties) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    Taxonomy t = random_forest(rng, 2 + rng() % 14);
    const auto& vs = t.values();
    for (const auto& a : vs) {
      EXPECT_TRUE(t.subsumes(a, a));
      for (const auto& b : vs) {
        if (a != b && t.subsumes(a, b)) {
          EXPECT_FALSE(t.subsumes(b, a));
        }
        for (const auto& c : vs) {
          if (t.subsumes(a, b) && t.subsumes(b, c)) {
            EXPECT_TRUE(t.subsumes(a, c));
          }
        }
      }
    }
    EXPECT_FALSE(t.has_cycle());
  }
}

TEST(Applies, Examples) {
  Scene s = chihuahua_scene();
  EXPECT_TRUE(applies(s, EntityId{"Object1"}, make_pair("type", "dog")));
  EXPECT_FALSE(applies(s, EntityId{"Object3"}, make_pair("type", "dog")));
  for (const auto& e : s.entities())
    for (const auto& [a, v] : e.properties)
      EXPECT_TRUE(applies(s, e.id, AttributeValuePair{a, v}));
  EXPECT_FALSE(applies(s, EntityId{"Object1"}, AttributeValuePair{kTypeAttribute, std::nullopt}));
}

TEST(Applies, AbsentAttributeIsFalse) {
  Scene s = chihuahua_scene();
  s.taxonomy_for(AttributeName{"shape"}).add(V("round"));
  EXPECT_FALSE(applies(s, EntityId{"Object1"}, make_pair("shape", "round")));
}

TEST(Applies, UpwardClosure) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    Scene s;
    Taxonomy t = random_forest(rng, 3 + rng() % 10);
    s.add_taxonomy(t);
    Entity e{EntityId{"e"}, {}};
    const auto& vs = t.values();
    e.set(AttributeName{"a"}, vs[rng() % vs.size()]);
    s.add_entity(e);
    for (const auto& v : vs) {
      if (!applies(s, e.id, AttributeValuePair{AttributeName{"a"}, v})) continue;
      for (const auto& up : vs) {
        if (t.subsumes(up, v)) {
          EXPECT_TRUE(applies(s, e.id, AttributeValuePair{AttributeName{"a"}, up}));
        }
      }
    }
  }
}

TEST(CheckScene, CorpusIsWellFormed) {
  for (const char* name : {"dogs.scn", "dogs-basic.scn", "cups.scn", "duplicate.scn",
                           "switches.scn"}) {
    Scene s = fixtures::load_corpus_scene(name);
    auto vs = check_scene(s);
    EXPECT_TRUE(is_well_formed(vs)) << name;
  }
  EXPECT_TRUE(check_scene(chihuahua_scene()).empty());
}

TEST(CheckScene, MissingType) {
  Scene s = with_entities(chihuahua_scene(), [](auto& es) {
    es[0].properties.erase(es[0].properties.begin());  // type is set first
  });
  auto vs = check_scene(s);
  EXPECT_TRUE(has_code(vs, "missing-type(Object1)"));
  EXPECT_FALSE(is_well_formed(vs));
}

TEST(CheckScene, CyclicTaxonomy) {
  Scene s = with_taxonomy(chihuahua_scene(), kTypeAttribute,
                          [](Taxonomy& t) { t.add(V("animal"), V("chihuahua")); });
  auto vs = check_scene(s);
  EXPECT_TRUE(has_code(vs, "cyclic-taxonomy(type)"));
}

TEST(CheckScene, SingleInvariantMutationsAreRejected) {
  const Scene base = chihuahua_scene();
  struct Case {
    const char* expect;
    Scene scene;
  };
  std::vector<Case> cases;

  cases.push_back({"unknown-value", with_entities(base, [](auto& es) {
                     es[1].set(AttributeName{"colour"}, V("purple"));
                   })});
  cases.push_back({"multiple-parents", with_taxonomy(base, kTypeAttribute, [](Taxonomy& t) {
                     t.add(V("chihuahua"), V("cat"));
                   })});
  cases.push_back({"nested-basic-level", with_taxonomy(base, kTypeAttribute, [](Taxonomy& t) {
                     t.mark_basic(V("chihuahua"));
                   })});
  {
    Scene s = base;
    s.set_preferred({kTypeAttribute, AttributeName{"colour"}, AttributeName{"colour"}});
    cases.push_back({"duplicate-preferred", s});
  }
  {
    Scene s = base;
    s.set_preferred({AttributeName{"colour"}, AttributeName{"size"}});
    cases.push_back({"preferred-missing-type", s});
  }
  {
    Scene s = base;
    s.set_preferred({});
    cases.push_back({"empty-preferred", s});
  }
  {
    Scene s = base;
    s.set_preferred({kTypeAttribute, AttributeName{"weight"}});
    cases.push_back({"unknown-preferred", s});
  }
  cases.push_back({"duplicate-entity", with_entities(base, [](auto& es) {
                     es.push_back(es[0]);
                   })});
  cases.push_back({"missing-taxonomy", with_entities(base, [](auto& es) {
                     es[0].set(AttributeName{"shape"}, V("round"));
                   })});
  {
    Scene s = base;
    HearerModel h = s.hearer();
    h.distinguishable[kTypeAttribute].insert(V("wolf"));
    s.set_hearer(h);
    cases.push_back({"hearer-unknown-value", s});
  }
  {
    Scene s = base;
    HearerModel h = s.hearer();
    h.known_facts[{EntityId{"Nobody"}, kTypeAttribute, V("dog")}] = true;
    s.set_hearer(h);
    cases.push_back({"hearer-unknown-entity", s});
  }
  cases.push_back({"no-entities", with_entities(base, [](auto& es) { es.clear(); })});

  for (const auto& c : cases) {
    auto vs = check_scene(c.scene);
    EXPECT_FALSE(is_well_formed(vs)) << c.expect;
    bool found = false;
    for (const auto& v : vs) found = found || v.code == c.expect;
    EXPECT_TRUE(found) << "missing " << c.expect;
  }
}

TEST(CheckScene, ContradictingOverrideIsOnlyAWarning) {
  Scene s = chihuahua_scene();
  HearerModel h = s.hearer();
  h.known_facts[{EntityId{"Object3"}, kTypeAttribute, V("dog")}] = true;
  s.set_hearer(h);
  auto vs = check_scene(s);
  ASSERT_FALSE(vs.empty());
  EXPECT_TRUE(is_well_formed(vs));
  EXPECT_EQ(vs.front().severity, Severity::warning);
}

TEST(Taxonomy, PathAndBasicLevel) {
  Scene s = chihuahua_scene();
  const Taxonomy& t = s.taxonomy(kTypeAttribute);
  std::vector<ValueName> path{V("animal"), V("dog"), V("chihuahua")};
  EXPECT_EQ(t.path_from_root(V("chihuahua")), path);
  EXPECT_TRUE(t.is_basic(V("dog")));
  EXPECT_FALSE(t.is_basic(V("animal")));
  EXPECT_EQ(t.roots(), std::vector<ValueName>{V("animal")});
}
