#include "bordaforge/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>

#include <nlohmann/json.hpp>

#include "bordaforge/detrand.hpp"
#include "bordaforge/errors.hpp"
#include "bordaforge/json_io.hpp"

namespace bordaforge {

using nlohmann::json;

namespace {

// Exit codes shared by the file-driven subcommands: 0 success/found/yes,
// 1 negative outcome, 2 refusal or construction failure, 3 unreadable input.
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitRefused = 2;
constexpr int kExitParse = 3;

void render_text(const json& j, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_structured())) {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      } else {
        os << pad << k << ": " << v.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) render_text(v, os, indent);
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit(const json& j, const RunConfig& config) {
  if (config.output.empty()) {
    if (config.format == RunConfig::Format::Json)
      std::cout << dump_canonical(j);
    else
      render_text(j, std::cout, 0);
    return;
  }
  if (config.format == RunConfig::Format::Json) {
    write_json_file(config.output, j);
  } else {
    std::ofstream out(config.output);
    if (!out) throw ParseError("cannot write " + config.output);
    render_text(j, out, 0);
  }
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const LimitError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

ReductionArtifact load_artifact(const std::string& path) {
  const json j = load_json_file(path);
  if (j.is_object() && j.contains("artifact")) return artifact_from_json(j["artifact"]);
  return artifact_from_json(j);
}

TwoNmtsInstance random_instance(int m, NmtsVariant variant, DetRand& rng) {
  if (m <= 10) {
    const auto all = enumerate_instances(m, variant);
    return all[rng.below(all.size())];
  }
  // Larger sizes: sum two random permutations; always a solvable instance.
  TwoNmtsInstance instance;
  instance.m = m;
  instance.variant = variant;
  const int lo = instance.value_lo();
  const auto p1 = rng.permutation(m), p2 = rng.permutation(m);
  for (int j = 0; j < m; ++j) instance.a.push_back(p1[j] + p2[j] + 2 * lo);
  std::sort(instance.a.begin(), instance.a.end());
  instance.validate();
  return instance;
}

}  // namespace

int RunConfig::threads_from_env() {
  const char* env = std::getenv("BORDA_FORGE_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

ReductionArtifact reduce_dispatch(const TwoNmtsInstance& instance, const Rational& w,
                                  std::optional<long long> p, long long p_cap) {
  if (w <= Rational(1))
    throw ValidationError(
        "reduce: no reduction exists for w <= 1; manipulation is polynomial there");
  if (w == Rational(2)) {
    if (instance.variant != NmtsVariant::Standard)
      throw ValidationError("reduce: w = 2 requires a Standard instance");
    return reduce_w_eq2(instance);
  }
  if (w >= Rational(3)) {
    if (instance.variant != NmtsVariant::Standard)
      throw ValidationError("reduce: w >= 3 requires a Standard instance");
    return reduce_w_ge3(instance, w);
  }
  if (instance.variant != NmtsVariant::Restricted)
    throw ValidationError("reduce: 1 < w < 3 requires a Restricted instance");
  const long long pp = p ? *p : choose_p(instance.m, w - Rational(1), p_cap);
  return reduce_w_open(instance, w, pp);
}

json run_pipeline(const TwoNmtsInstance& instance, const Rational& w,
                  std::optional<long long> p, const RunConfig& config) {
  const ReductionArtifact artifact = reduce_dispatch(instance, w, p, config.p_cap);
  const ValidationReport report = validate_reduction(artifact);
  const auto solution = solve_2nmts(instance);

  json j;
  j["instance"] = to_json(instance);
  j["w"] = to_json(w);
  j["artifact"] = to_json(artifact);
  j["validation"] = to_json(report);
  json solver;
  solver["solvable"] = solution.has_value();
  solver["solution"] = solution ? to_json(*solution) : json(nullptr);
  j["solver"] = solver;
  if (solution) {
    auto [m1, m2] = lift_solution(artifact, *solution);
    Profile complete = artifact.profile;
    complete.m1 = m1;
    complete.m2 = m2;
    const EvalResult eval = evaluate(complete);
    j["lift"] = {{"m1", to_json(m1)}, {"m2", to_json(m2)}, {"success", eval.success}};
    j["evaluation"] = to_json(eval);
    j["verdict"] = eval.success ? "yes" : "no";
  } else {
    j["lift"] = nullptr;
    j["evaluation"] = nullptr;
    j["verdict"] = "no";
  }
  return j;
}

int cmd_gen_nmts(int m, NmtsVariant variant, int count, const RunConfig& config) {
  return guarded([&] {
    DetRand rng(config.seed);
    json instances = json::array();
    for (int i = 0; i < count; ++i)
      instances.push_back(to_json(random_instance(m, variant, rng)));
    emit(json{{"instances", instances}}, config);
    return kExitYes;
  });
}

int cmd_solve_nmts(const std::string& instance_file, const RunConfig& config) {
  return guarded([&] {
    const auto instance = instance_from_json(load_json_file(instance_file));
    const auto solution = solve_2nmts(instance);
    json j;
    j["solvable"] = solution.has_value();
    j["solution"] = solution ? to_json(*solution) : json(nullptr);
    emit(j, config);
    return solution ? kExitYes : kExitNo;
  });
}

int cmd_reduce(const std::string& instance_file, const Rational& w,
               std::optional<long long> p, const RunConfig& config) {
  return guarded([&] {
    const auto instance = instance_from_json(load_json_file(instance_file));
    const auto artifact = reduce_dispatch(instance, w, p, config.p_cap);
    const auto report = validate_reduction(artifact);
    emit(json{{"artifact", to_json(artifact)}, {"validation", to_json(report)}}, config);
    return kExitYes;
  });
}

int cmd_lift(const std::string& artifact_file, const std::string& solution_file,
             const RunConfig& config) {
  return guarded([&] {
    const auto artifact = load_artifact(artifact_file);
    const auto solution = solution_from_json(load_json_file(solution_file));
    auto [m1, m2] = lift_solution(artifact, solution);
    Profile complete = artifact.profile;
    complete.m1 = m1;
    complete.m2 = m2;
    emit(to_json(complete), config);
    return kExitYes;
  });
}

int cmd_evaluate(const std::string& profile_file, const RunConfig& config) {
  return guarded([&] {
    const auto profile = profile_from_json(load_json_file(profile_file));
    const EvalResult result = evaluate(profile);
    emit(to_json(result), config);
    return result.success ? kExitYes : kExitNo;
  });
}

int cmd_manipulate(const std::string& profile_file, const std::string& algorithm,
                   const RunConfig& config) {
  return guarded([&] {
    Profile profile = profile_from_json(load_json_file(profile_file));
    profile.m1.reset();
    profile.m2.reset();
    ManipulationResult result;
    if (algorithm == "reverse") {
      auto [m1, m2] = respective_reverse(profile.n1, profile.n2, profile.target);
      profile.m1 = m1;
      profile.m2 = m2;
      const EvalResult eval = evaluate(profile);
      result.found = eval.success;
      result.m1 = m1;
      result.m2 = m2;
      result.witness_totals = eval.totals;
      // The reversal is only guaranteed for w <= 1; a miss at larger
      // weights is not a proof that no manipulation exists.
      emit(to_json(result), config);
      return result.found ? kExitYes : kExitNo;
    }
    if (algorithm != "oracle")
      throw ValidationError("manipulate: algorithm must be reverse|oracle");
    result = brute_force_manipulation(profile, config.enumeration_limit);
    emit(to_json(result), config);
    return result.found ? kExitYes : kExitNo;
  });
}

int cmd_pipeline(const std::string& instance_file, const Rational& w,
                 std::optional<long long> p, const RunConfig& config) {
  return guarded([&] {
    const auto instance = instance_from_json(load_json_file(instance_file));
    const json report = run_pipeline(instance, w, p, config);
    emit(report, config);
    return report["verdict"] == "yes" ? kExitYes : kExitNo;
  });
}

int cmd_validate(const std::string& artifact_file, const RunConfig& config) {
  return guarded([&] {
    const auto artifact = load_artifact(artifact_file);
    const auto report = validate_reduction(artifact);
    emit(to_json(report), config);
    return report.passed ? kExitYes : kExitNo;
  });
}

int cmd_bench(int m, const Rational& w, int count, const RunConfig& config) {
  return guarded([&] {
    const NmtsVariant variant = (w > Rational(1) && w < Rational(3) && w != Rational(2))
                                    ? NmtsVariant::Restricted
                                    : NmtsVariant::Standard;
    DetRand rng(config.seed);
    std::vector<TwoNmtsInstance> instances;
    instances.reserve(count);
    for (int i = 0; i < count; ++i) instances.push_back(random_instance(m, variant, rng));

    const auto started = std::chrono::steady_clock::now();
    std::vector<std::string> verdicts(count);
    auto worker = [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        try {
          verdicts[i] = run_pipeline(instances[i], w, std::nullopt, config)["verdict"];
        } catch (const Error&) {
          verdicts[i] = "error";
        }
      }
    };
    const int threads = std::max(1, config.threads);
    if (threads == 1) {
      worker(0, count);
    } else {
      std::vector<std::future<void>> jobs;
      const int chunk = (count + threads - 1) / threads;
      for (int t = 0; t < threads; ++t)
        jobs.push_back(std::async(std::launch::async, worker,
                                  std::min(count, t * chunk),
                                  std::min(count, (t + 1) * chunk)));
      for (auto& job : jobs) job.get();
    }
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();

    int yes = 0, no = 0, errors = 0;
    for (const auto& v : verdicts) {
      if (v == "yes") ++yes;
      else if (v == "no") ++no;
      else ++errors;
    }
    std::cerr << "bench: " << count << " pipelines in " << elapsed << "s ("
              << threads << " thread" << (threads == 1 ? "" : "s") << ")\n";
    emit(json{{"count", count},
              {"errors", errors},
              {"m", m},
              {"no", no},
              {"w", to_json(w)},
              {"yes", yes}},
         config);
    return kExitYes;
  });
}

}  // namespace bordaforge
