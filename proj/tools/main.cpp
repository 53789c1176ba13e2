#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bordaforge/cli.hpp"
#include "bordaforge/errors.hpp"

using namespace bordaforge;

namespace {

Rational parse_w(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--w", "expected a rational like 7/2 or 2");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bordaforge: weighted Borda manipulation toolkit (two manipulators, two "
      "non-manipulators, one vote weighted by w)"};
  app.require_subcommand(1);

  RunConfig config;
  config.threads = RunConfig::threads_from_env();
  std::string w_text = "2";
  std::string format = "json";
  std::optional<long long> p_opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.output, "output file (default: stdout)");
    cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", config.seed, "seed for randomized commands");
    cmd->add_option("--limit", config.enumeration_limit,
                    "largest z the exact oracle will enumerate");
    cmd->add_option("--p-cap", config.p_cap, "upper bound for the group-count search");
  };

  // gen-nmts
  int gen_m = 4, gen_count = 1;
  std::string gen_variant = "standard";
  auto* gen = app.add_subcommand("gen-nmts", "generate target-sum matching instances");
  gen->add_option("--m", gen_m, "instance size")->required();
  gen->add_option("--variant", gen_variant, "standard|restricted")
      ->check(CLI::IsMember({"standard", "restricted"}));
  gen->add_option("--count", gen_count, "how many instances");
  add_common(gen);

  // solve-nmts
  std::string solve_file;
  auto* solve = app.add_subcommand("solve-nmts", "solve a target-sum matching instance");
  solve->add_option("file", solve_file, "instance JSON")->required();
  add_common(solve);

  // reduce
  std::string reduce_file;
  auto* reduce = app.add_subcommand("reduce", "build an election from a matching instance");
  reduce->add_option("file", reduce_file, "instance JSON")->required();
  reduce->add_option("--w", w_text, "weight on the first non-manipulator")->required();
  reduce->add_option("--p", p_opt, "group-count parameter (1 < w < 3 only)");
  add_common(reduce);

  // lift
  std::string lift_artifact, lift_solution;
  auto* lift = app.add_subcommand("lift", "turn a matching solution into manipulator ballots");
  lift->add_option("artifact", lift_artifact, "artifact JSON")->required();
  lift->add_option("--solution", lift_solution, "solution JSON")->required();
  add_common(lift);

  // evaluate
  std::string eval_file;
  auto* eval = app.add_subcommand("evaluate", "tally a complete profile and test the target");
  eval->add_option("file", eval_file, "profile JSON")->required();
  add_common(eval);

  // manipulate
  std::string man_file, algorithm = "reverse";
  auto* man = app.add_subcommand("manipulate", "search for manipulator ballots");
  man->add_option("file", man_file, "profile JSON (manipulator ballots ignored)")->required();
  man->add_option("--algorithm", algorithm, "reverse|oracle")
      ->check(CLI::IsMember({"reverse", "oracle"}));
  add_common(man);

  // pipeline
  std::string pipe_file;
  auto* pipe = app.add_subcommand("pipeline", "reduce, solve, lift, evaluate, validate");
  pipe->add_option("file", pipe_file, "instance JSON")->required();
  pipe->add_option("--w", w_text, "weight on the first non-manipulator")->required();
  pipe->add_option("--p", p_opt, "group-count parameter (1 < w < 3 only)");
  add_common(pipe);

  // validate
  std::string val_file;
  auto* val = app.add_subcommand("validate", "re-check a stored artifact");
  val->add_option("file", val_file, "artifact JSON")->required();
  add_common(val);

  // bench
  int bench_m = 4, bench_count = 10;
  auto* bench = app.add_subcommand("bench", "time pipelines over random instances");
  bench->add_option("--m", bench_m, "instance size")->required();
  bench->add_option("--w", w_text, "weight")->required();
  bench->add_option("--count", bench_count, "instances to run");
  add_common(bench);

  CLI11_PARSE(app, argc, argv);
  config.format = format == "text" ? RunConfig::Format::Text : RunConfig::Format::Json;

  if (gen->parsed())
    return cmd_gen_nmts(gen_m,
                        gen_variant == "restricted" ? NmtsVariant::Restricted
                                                    : NmtsVariant::Standard,
                        gen_count, config);
  if (solve->parsed()) return cmd_solve_nmts(solve_file, config);
  if (reduce->parsed()) return cmd_reduce(reduce_file, parse_w(w_text), p_opt, config);
  if (lift->parsed()) return cmd_lift(lift_artifact, lift_solution, config);
  if (eval->parsed()) return cmd_evaluate(eval_file, config);
  if (man->parsed()) return cmd_manipulate(man_file, algorithm, config);
  if (pipe->parsed()) return cmd_pipeline(pipe_file, parse_w(w_text), p_opt, config);
  if (val->parsed()) return cmd_validate(val_file, config);
  if (bench->parsed()) return cmd_bench(bench_m, parse_w(w_text), bench_count, config);
  return 0;
}
