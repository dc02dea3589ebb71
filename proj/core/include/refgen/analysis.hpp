#pragma once
// Cost model and benchmark harness for comparing the generators.
//
// Counters, not wall-clock time, are what the reports are meant to be compared
// on; wall time is only filled in when explicitly requested.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "refgen/algorithms.hpp"
#include "refgen/kb.hpp"

namespace refgen {

struct ComplexityParams {
  std::size_t n_a = 0;  // attributes available
  std::size_t n_d = 0;  // distractors
  std::size_t n_l = 0;  // attributes mentioned in the result (pre head noun)

  bool operator==(const ComplexityParams&) const = default;
};

// Number of candidate descriptions an exhaustive search checks before it can
// return one with n_l pairs: sum over i = 1..n_l of C(n_a, i). Exact for
// n_a <= 64; throws domain_error when n_l > n_a or the sum overflows.
std::uint64_t full_brevity_search_space(std::uint64_t n_a, std::uint64_t n_l);

struct RandomSceneParams {
  std::size_t n_entities = 2;
  std::size_t n_attributes = 1;  // including `type`
  std::size_t taxonomy_depth = 1;
  std::size_t branching = 2;
  HearerMode hearer = HearerMode::perceptual;
  // depth-limited only: values at depth <= this are distinguishable.
  std::size_t hearer_depth = 1;
};

// Reproducible scene: forests of `taxonomy_depth` levels with `branching`
// children per node, entity values drawn uniformly over each forest, some
// attributes given a basic level, preferred order = generation order.
Scene generate_random_scene(const RandomSceneParams& params, std::uint64_t seed);

// Scene whose smallest distinguishing description for entity "r" has exactly
// `n_mentioned` pairs: that many key attributes split the distractors between
// them, every other attribute rules out at most one distractor. Returns the
// scene; the referent is always "r". n_mentioned is clamped to what n_a and
// n_d allow.
Scene generate_planted_scene(std::size_t n_attributes, std::size_t n_distractors,
                             std::size_t n_mentioned, std::uint64_t seed);
inline const EntityId kPlantedReferent{"r"};

enum class SceneFamily { planted, random };

struct BenchSweep {
  std::vector<std::size_t> n_attributes;
  std::vector<std::size_t> n_distractors;
  std::vector<Algorithm> algorithms;
  std::size_t trials = 1;
  std::size_t n_mentioned = 3;  // planted family
  SceneFamily family = SceneFamily::planted;
  bool timing = false;
  unsigned threads = 1;
};

struct BenchRow {
  Algorithm algorithm{};
  ComplexityParams params;
  RunCounters counters;
  std::optional<double> wall_ms;
  bool success = false;
  std::string error;  // set if the run threw

  bool operator==(const BenchRow&) const = default;
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::vector<BenchRow> rows;
};

// Rows are ordered by n_a, n_d, trial, algorithm regardless of how many
// threads run them.
BenchReport run_benchmark(const BenchSweep& sweep, std::uint64_t seed);

inline constexpr const char* kBenchCsvHeader =
    "algorithm,n_a,n_d,n_l,user_knows_calls,distinguishing_checks,"
    "candidates_enumerated,wall_ms,outcome";

std::string to_csv(const BenchReport& report);

// Median of a counter over the rows matching algorithm and n_a.
double median_counter(const BenchReport& report, Algorithm algorithm, std::size_t n_a,
                      std::uint64_t RunCounters::*counter);

}  // namespace refgen
