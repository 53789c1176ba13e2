#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bordaforge/manipulation.hpp"
#include "bordaforge/reductions.hpp"

namespace bordaforge {

// Knobs shared by the subcommands. A fixed seed makes every output
// byte-identical across runs.
struct RunConfig {
  uint64_t seed = 0;
  int enumeration_limit = kDefaultEnumerationLimit;
  long long p_cap = 1000000;
  std::string output;  // empty = stdout
  enum class Format { Json, Text } format = Format::Json;
  int threads = 1;

  static int threads_from_env();
};

// Regime dispatch: Standard instances reduce at w = 2 or w >= 3, Restricted
// instances cover 1 < w < 3 (p defaults to the smallest feasible value).
ReductionArtifact reduce_dispatch(const TwoNmtsInstance& instance, const Rational& w,
                                  std::optional<long long> p, long long p_cap);

// reduce -> solve -> lift -> evaluate -> validate; the verdict equals the
// solver's answer. Pure given its inputs.
nlohmann::json run_pipeline(const TwoNmtsInstance& instance, const Rational& w,
                            std::optional<long long> p, const RunConfig& config);

int cmd_gen_nmts(int m, NmtsVariant variant, int count, const RunConfig& config);
int cmd_solve_nmts(const std::string& instance_file, const RunConfig& config);
int cmd_reduce(const std::string& instance_file, const Rational& w,
               std::optional<long long> p, const RunConfig& config);
int cmd_lift(const std::string& artifact_file, const std::string& solution_file,
             const RunConfig& config);
int cmd_evaluate(const std::string& profile_file, const RunConfig& config);
int cmd_manipulate(const std::string& profile_file, const std::string& algorithm,
                   const RunConfig& config);
int cmd_pipeline(const std::string& instance_file, const Rational& w,
                 std::optional<long long> p, const RunConfig& config);
int cmd_validate(const std::string& artifact_file, const RunConfig& config);
int cmd_bench(int m, const Rational& w, int count, const RunConfig& config);

}  // namespace bordaforge
