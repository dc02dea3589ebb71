#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "refgen/analysis.hpp"
#include "refgen/io.hpp"
#include "refgen/kb.hpp"

namespace refgen::fixtures {

inline std::string scene_path(const std::string& name) {
  return std::string(REFGEN_SCENES_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Scene load_corpus_scene(const std::string& name) {
  return parse_scene(read_text(scene_path(name)));
}

// The chihuahua / siamese-cat scene with `animal` as the type root.
inline Scene chihuahua_scene(HearerMode mode = HearerMode::depth_limited,
                             std::vector<std::string> preferred = {"type", "colour", "size"}) {
  Scene scene;
  Taxonomy type(kTypeAttribute);
  type.add(ValueName{"animal"});
  type.add(ValueName{"dog"}, ValueName{"animal"}, true);
  type.add(ValueName{"chihuahua"}, ValueName{"dog"});
  type.add(ValueName{"poodle"}, ValueName{"dog"});
  type.add(ValueName{"cat"}, ValueName{"animal"}, true);
  type.add(ValueName{"siamese-cat"}, ValueName{"cat"});
  scene.add_taxonomy(type);
  Taxonomy size(AttributeName{"size"});
  size.add(ValueName{"small"});
  size.add(ValueName{"large"});
  scene.add_taxonomy(size);
  Taxonomy colour(AttributeName{"colour"});
  colour.add(ValueName{"black"});
  colour.add(ValueName{"white"});
  scene.add_taxonomy(colour);

  auto entity = [](const char* id, const char* type, const char* size, const char* colour) {
    Entity e{EntityId{id}, {}};
    e.set(kTypeAttribute, ValueName{type});
    e.set(AttributeName{"size"}, ValueName{size});
    e.set(AttributeName{"colour"}, ValueName{colour});
    return e;
  };
  scene.add_entity(entity("Object1", "chihuahua", "small", "black"));
  scene.add_entity(entity("Object2", "chihuahua", "large", "white"));
  scene.add_entity(entity("Object3", "siamese-cat", "small", "black"));

  std::vector<AttributeName> pref;
  for (auto& p : preferred) pref.emplace_back(p);
  scene.set_preferred(pref);

  HearerModel hearer;
  hearer.mode = mode;
  if (mode == HearerMode::depth_limited)
    hearer.distinguishable[kTypeAttribute] = {ValueName{"dog"}, ValueName{"cat"}};
  scene.set_hearer(hearer);
  return scene;
}

inline EntitySet ids(std::initializer_list<const char*> names) {
  EntitySet out;
  for (auto n : names) out.insert(EntityId{n});
  return out;
}

// Random-scene family used by the soundness and minimality suites:
// <= 6 attributes, <= 8 entities, perceptual or depth-limited hearers.
inline RandomSceneParams random_family_params(std::uint64_t seed) {
  RandomSceneParams p;
  p.n_attributes = 1 + seed % 6;
  p.n_entities = 2 + (seed / 6) % 7;
  p.taxonomy_depth = 1 + (seed / 42) % 3;
  p.branching = 2 + (seed / 126) % 2;
  p.hearer = (seed / 252) % 2 ? HearerMode::depth_limited : HearerMode::perceptual;
  p.hearer_depth = 1 + (seed / 504) % p.taxonomy_depth;
  return p;
}

}  // namespace refgen::fixtures
