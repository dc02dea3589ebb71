#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "refgen/algorithms.hpp"
#include "refgen/analysis.hpp"
#include "refgen/error.hpp"
#include "refgen/io.hpp"

namespace refgen::cli {
namespace {

struct GenerateOptions {
  std::string scene_path;
  std::string referent;
  std::string algorithm = "incremental";
  std::string format = "pairs";
  std::vector<std::string> contrast;
};

struct BenchOptions {
  std::vector<std::size_t> n_attributes;
  std::vector<std::size_t> n_distractors;
  std::vector<std::string> algorithms{"full-brevity", "greedy", "local-brevity", "incremental"};
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t n_mentioned = 3;
  std::string family = "planted";
  bool timing = false;
  unsigned threads = 1;
};

bool read_file(const std::string& path, std::string& text, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read scene file '" << path << "'\n";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

// Loads and validates; prints diagnostics on failure.
std::optional<SceneDocument> load(const std::string& path, std::ostream& err) {
  std::string text;
  if (!read_file(path, text, err)) return std::nullopt;
  SceneDocument doc = load_scene_document(std::move(text));
  for (const auto& w : doc.warnings) err << path << ": warning: " << w.to_string() << '\n';
  for (const auto& d : doc.diagnostics) err << path << ": " << d.to_string() << '\n';
  return doc;
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
  auto algorithm = parse_algorithm(opt.algorithm);
  if (!algorithm) {
    err << "error: unknown algorithm '" << opt.algorithm << "'\n";
    return kInputError;
  }
  if (opt.format != "pairs" && opt.format != "spl" && opt.format != "surface") {
    err << "error: unknown format '" << opt.format << "'\n";
    return kInputError;
  }
  auto doc = load(opt.scene_path, err);
  if (!doc || !doc->ok()) return kInputError;
  const Scene& scene = doc->scene;

  EntityId referent{opt.referent};
  if (!scene.find_entity(referent)) {
    err << "error: unknown referent '" << opt.referent << "'\n";
    return kInputError;
  }
  EntitySet contrast;
  if (opt.contrast.empty()) {
    for (const auto& e : scene.entities())
      if (e.id != referent) contrast.insert(e.id);
  } else {
    for (const auto& id : opt.contrast) {
      if (!scene.find_entity(EntityId{id})) {
        err << "error: unknown contrast entity '" << id << "'\n";
        return kInputError;
      }
      contrast.insert(EntityId{id});
    }
    if (contrast.count(referent)) {
      err << "error: referent '" << opt.referent << "' cannot be in the contrast set\n";
      return kInputError;
    }
  }

  auto task = GenerationTask::make(scene, referent, std::move(contrast));
  GenerationResult result = generate(*algorithm, task);
  if (!result.ok()) {
    out << "failure\n";
    err << "no distinguishing description for '" << opt.referent << "' with "
        << opt.algorithm << '\n';
    return kReferentialFailure;
  }
  Description description = ensure_head_noun(task, std::move(*result.description));
  if (opt.format == "pairs")
    out << serialize_pairs(description) << '\n';
  else if (opt.format == "spl")
    out << serialize_spl(description) << '\n';
  else
    out << realize_surface(description) << '\n';
  return kOk;
}

int cmd_validate(const std::string& path, std::ostream& err) {
  auto doc = load(path, err);
  return doc && doc->ok() ? kOk : kInputError;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  BenchSweep sweep;
  sweep.n_attributes = opt.n_attributes;
  sweep.n_distractors = opt.n_distractors;
  sweep.trials = opt.trials;
  sweep.n_mentioned = opt.n_mentioned;
  sweep.timing = opt.timing;
  sweep.threads = opt.threads;
  for (auto n : opt.n_attributes) {
    if (n == 0) {
      err << "error: --na values must be at least 1\n";
      return kInputError;
    }
  }
  for (const auto& name : opt.algorithms) {
    auto a = parse_algorithm(name);
    if (!a) {
      err << "error: unknown algorithm '" << name << "'\n";
      return kInputError;
    }
    sweep.algorithms.push_back(*a);
  }
  if (opt.family == "planted") {
    sweep.family = SceneFamily::planted;
  } else if (opt.family == "random") {
    sweep.family = SceneFamily::random;
  } else {
    err << "error: unknown scene family '" << opt.family << "'\n";
    return kInputError;
  }
  out << to_csv(run_benchmark(sweep, opt.seed));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Referring expression generation"};
  app.name("refgen");
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a referring expression");
  generate->add_option("--scene", gen.scene_path, "Scene file")->required();
  generate->add_option("--referent", gen.referent, "Intended referent id")->required();
  generate->add_option("--algorithm", gen.algorithm,
                       "full-brevity | greedy | local-brevity | incremental")
      ->capture_default_str();
  generate->add_option("--format", gen.format, "pairs | spl | surface")->capture_default_str();
  generate->add_option("--contrast", gen.contrast, "Contrast set (default: all other entities)")
      ->delimiter(',');

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scene file");
  validate->add_option("scene,--scene", validate_path, "Scene file")->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a cost sweep and print CSV");
  bench_cmd->add_option("--na", bench.n_attributes, "Attribute counts")->delimiter(',')->required();
  bench_cmd->add_option("--nd", bench.n_distractors, "Distractor counts")->delimiter(',')->required();
  bench_cmd->add_option("--algorithms", bench.algorithms, "Algorithms to run")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Seed")->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Scenes per point")->capture_default_str();
  bench_cmd->add_option("--nl", bench.n_mentioned, "Planted description size")
      ->capture_default_str();
  bench_cmd->add_option("--family", bench.family, "planted | random")->capture_default_str();
  bench_cmd->add_flag("--timing", bench.timing, "Fill wall_ms (makes output non-deterministic)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*generate) return cmd_generate(gen, out, err);
    if (*validate) return cmd_validate(validate_path, err);
    return cmd_bench(bench, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace refgen::cli
