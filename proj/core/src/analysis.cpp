#include "refgen/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "refgen/error.hpp"

namespace refgen {

std::uint64_t full_brevity_search_space(std::uint64_t n_a, std::uint64_t n_l) {
  if (n_l > n_a)
    throw Error(ErrorCode::domain_error, "n_l (" + std::to_string(n_l) +
                                             ") exceeds n_a (" + std::to_string(n_a) + ")");
  __extension__ using u128 = unsigned __int128;
  constexpr u128 kMax = std::numeric_limits<std::uint64_t>::max();
  u128 binomial = 1;
  u128 total = 0;
  for (std::uint64_t i = 1; i <= n_l; ++i) {
    // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact at every step.
    binomial = binomial * (n_a - i + 1) / i;
    total += binomial;
    if (binomial > kMax || total > kMax)
      throw Error(ErrorCode::domain_error, "search space does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0;
  for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

AttributeName attribute_name(std::size_t i) {
  return i == 0 ? kTypeAttribute : AttributeName{"a" + std::to_string(i)};
}

}  // namespace

Scene generate_random_scene(const RandomSceneParams& params, std::uint64_t seed) {
  const std::size_t depth = std::max<std::size_t>(params.taxonomy_depth, 1);
  const std::size_t branching = std::max<std::size_t>(params.branching, 1);
  const std::size_t n_attributes = std::max<std::size_t>(params.n_attributes, 1);
  std::mt19937_64 rng(seed);
  Scene scene;
  HearerModel hearer;
  hearer.mode = params.hearer;

  std::vector<std::vector<ValueName>> values(n_attributes);
  std::vector<AttributeName> preferred;
  for (std::size_t a = 0; a < n_attributes; ++a) {
    const AttributeName attr = attribute_name(a);
    preferred.push_back(attr);
    Taxonomy taxonomy(attr);

    std::size_t basic_level = 0;  // 0 = none
    if (a == 0 || pick(rng, 2) == 0) basic_level = 1 + pick(rng, depth);

    std::set<ValueName> visible;
    const std::size_t visible_depth =
        a == 0 ? std::max(params.hearer_depth, basic_level) : params.hearer_depth;

    std::vector<ValueName> level;
    for (std::size_t b = 0; b < branching; ++b) level.emplace_back(attr.str() + "-" + std::to_string(b));
    for (const auto& v : level) taxonomy.add(v, std::nullopt, basic_level == 1);
    for (std::size_t d = 1;; ++d) {
      if (d <= visible_depth) visible.insert(level.begin(), level.end());
      values[a].insert(values[a].end(), level.begin(), level.end());
      if (d == depth) break;
      std::vector<ValueName> next;
      for (const auto& parent : level) {
        for (std::size_t b = 0; b < branching; ++b) {
          ValueName child{parent.str() + "-" + std::to_string(b)};
          taxonomy.add(child, parent, basic_level == d + 1);
          next.push_back(child);
        }
      }
      level = std::move(next);
    }
    if (params.hearer == HearerMode::depth_limited) hearer.distinguishable[attr] = visible;
    scene.add_taxonomy(std::move(taxonomy));
  }

  const std::size_t n_entities = std::max<std::size_t>(params.n_entities, 1);
  for (std::size_t e = 0; e < n_entities; ++e) {
    Entity entity{EntityId{"e" + std::to_string(e)}, {}};
    for (std::size_t a = 0; a < n_attributes; ++a)
      entity.set(attribute_name(a), values[a][pick(rng, values[a].size())]);
    scene.add_entity(std::move(entity));
  }
  scene.set_preferred(std::move(preferred));
  scene.set_hearer(std::move(hearer));
  return scene;
}

Scene generate_planted_scene(std::size_t n_attributes, std::size_t n_distractors,
                             std::size_t n_mentioned, std::uint64_t seed) {
  const std::size_t n_a = std::max<std::size_t>(n_attributes, 1);
  std::mt19937_64 rng(seed);

  // Keys avoid `type` unless there is no room elsewhere.
  std::vector<std::size_t> positions(n_a);
  std::iota(positions.begin(), positions.end(), 0);
  if (n_a - 1 >= n_mentioned && n_a > 1) positions.erase(positions.begin());
  std::size_t k = std::min({n_mentioned, positions.size(), n_distractors});
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(k);

  std::vector<std::size_t> order(n_distractors);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  // group_of[d] = key index whose attribute rules distractor d out.
  std::vector<std::size_t> group_of(n_distractors);
  for (std::size_t i = 0; i < n_distractors; ++i) group_of[order[i]] = i % std::max<std::size_t>(k, 1);

  std::vector<std::vector<bool>> differs(n_a, std::vector<bool>(n_distractors, false));
  for (std::size_t a = 0; a < n_a; ++a) {
    auto key = std::find(positions.begin(), positions.end(), a);
    if (key != positions.end()) {
      const std::size_t g = static_cast<std::size_t>(key - positions.begin());
      for (std::size_t d = 0; d < n_distractors; ++d) differs[a][d] = group_of[d] == g;
    } else if (n_distractors > 0 && pick(rng, 2) == 0) {
      differs[a][pick(rng, n_distractors)] = true;
    }
  }

  Scene scene;
  std::vector<AttributeName> preferred;
  for (std::size_t a = 0; a < n_a; ++a) {
    const AttributeName attr = attribute_name(a);
    preferred.push_back(attr);
    Taxonomy taxonomy(attr);
    taxonomy.add(ValueName{attr.str() + "-0"}, std::nullopt, a == 0);
    taxonomy.add(ValueName{attr.str() + "-1"}, std::nullopt, a == 0);
    scene.add_taxonomy(std::move(taxonomy));
  }
  Entity referent{kPlantedReferent, {}};
  for (std::size_t a = 0; a < n_a; ++a)
    referent.set(attribute_name(a), ValueName{attribute_name(a).str() + "-0"});
  scene.add_entity(std::move(referent));
  for (std::size_t d = 0; d < n_distractors; ++d) {
    Entity e{EntityId{"d" + std::to_string(d + 1)}, {}};
    for (std::size_t a = 0; a < n_a; ++a)
      e.set(attribute_name(a),
            ValueName{attribute_name(a).str() + (differs[a][d] ? "-1" : "-0")});
    scene.add_entity(std::move(e));
  }
  scene.set_preferred(std::move(preferred));
  return scene;
}

namespace {

struct Job {
  std::size_t n_a;
  std::size_t n_d;
  std::size_t trial;
};

std::vector<BenchRow> run_job(const BenchSweep& sweep, const Job& job, std::uint64_t seed) {
  const std::uint64_t scene_seed = mix({seed, job.n_a, job.n_d, job.trial});
  Scene scene;
  EntityId referent;
  if (sweep.family == SceneFamily::planted) {
    scene = generate_planted_scene(job.n_a, job.n_d, sweep.n_mentioned, scene_seed);
    referent = kPlantedReferent;
  } else {
    RandomSceneParams p;
    p.n_entities = job.n_d + 1;
    p.n_attributes = job.n_a;
    p.taxonomy_depth = 2;
    p.branching = 3;
    scene = generate_random_scene(p, scene_seed);
    referent = scene.entities()[job.trial % scene.entities().size()].id;
  }

  std::vector<BenchRow> rows;
  for (Algorithm algorithm : sweep.algorithms) {
    BenchRow row;
    row.algorithm = algorithm;
    row.params.n_a = job.n_a;
    row.params.n_d = job.n_d;
    try {
      auto task = GenerationTask::against_all(scene, referent);
      auto start = std::chrono::steady_clock::now();
      GenerationResult result = generate(algorithm, task);
      auto stop = std::chrono::steady_clock::now();
      if (sweep.timing)
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      row.counters = result.counters;
      row.success = result.ok();
      if (result.ok()) {
        // n_l counts attributes mentioned before the head noun is forced in.
        row.params.n_l = result.description->size() - (result.head_noun_added ? 1 : 0);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

BenchReport run_benchmark(const BenchSweep& sweep, std::uint64_t seed) {
  BenchReport report;
  report.seed = seed;
  std::vector<Job> jobs;
  for (auto n_a : sweep.n_attributes)
    for (auto n_d : sweep.n_distractors)
      for (std::size_t t = 0; t < sweep.trials; ++t) jobs.push_back({n_a, n_d, t});
  if (jobs.empty() || sweep.algorithms.empty()) return report;

  std::vector<std::vector<BenchRow>> results(jobs.size());
  const unsigned threads =
      std::max(1u, std::min<unsigned>(sweep.threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = run_job(sweep, jobs[i], seed);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
          results[i] = run_job(sweep, jobs[i], seed);
      });
    }
  }
  for (auto& rows : results)
    for (auto& row : rows) report.rows.push_back(std::move(row));
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::string out = kBenchCsvHeader;
  out += '\n';
  char wall[32];
  for (const auto& row : report.rows) {
    wall[0] = '\0';
    if (row.wall_ms) std::snprintf(wall, sizeof wall, "%.3f", *row.wall_ms);
    out += to_string(row.algorithm);
    for (auto v : {static_cast<std::uint64_t>(row.params.n_a),
                   static_cast<std::uint64_t>(row.params.n_d),
                   static_cast<std::uint64_t>(row.params.n_l), row.counters.user_knows_calls,
                   row.counters.distinguishing_checks, row.counters.candidates_enumerated}) {
      out += ',';
      out += std::to_string(v);
    }
    out += ',';
    out += wall;
    out += ',';
    out += !row.error.empty() ? "error" : row.success ? "success" : "failure";
    out += '\n';
  }
  return out;
}

double median_counter(const BenchReport& report, Algorithm algorithm, std::size_t n_a,
                      std::uint64_t RunCounters::*counter) {
  std::vector<std::uint64_t> values;
  for (const auto& row : report.rows)
    if (row.algorithm == algorithm && row.params.n_a == n_a) values.push_back(row.counters.*counter);
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2) return static_cast<double>(values[m]);
  return (static_cast<double>(values[m - 1]) + static_cast<double>(values[m])) / 2.0;
}

}  // namespace refgen
