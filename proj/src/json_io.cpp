#include "bordaforge/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bordaforge/errors.hpp"

namespace bordaforge {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<int> int_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + ": expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<long long> ll_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected array");
  std::vector<long long> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + ": expected integers");
    out.push_back(v.get<long long>());
  }
  return out;
}

std::vector<Rational> rational_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected array");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

json segments_to_json(const std::vector<GroupSegment>& segs) {
  json arr = json::array();
  for (const auto& s : segs) arr.push_back({s.first, s.length, s.start, s.step});
  return arr;
}

std::vector<GroupSegment> segments_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("groups: expected array of segments");
  std::vector<GroupSegment> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) throw ParseError("groups: segment must be [first,length,start,step]");
    out.push_back({e[0].get<Cand>(), e[1].get<int>(), e[2].get<long long>(), e[3].get<int>()});
  }
  return out;
}

}  // namespace

json to_json(const Rational& value) { return value.str(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rational: expected \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("rational: ") + e.what());
  }
}

json to_json(const Ballot& ballot) { return json(ballot.ranking()); }

Ballot ballot_from_json(const json& j) {
  try {
    return Ballot(int_array(j, "ballot"));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

json to_json(const Profile& profile) {
  json j;
  j["z"] = profile.z;
  j["weight"] = to_json(profile.weight);
  j["target"] = profile.target;
  j["n1"] = to_json(profile.n1);
  j["n2"] = to_json(profile.n2);
  j["m1"] = profile.m1 ? to_json(*profile.m1) : json(nullptr);
  j["m2"] = profile.m2 ? to_json(*profile.m2) : json(nullptr);
  return j;
}

Profile profile_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("profile: expected object");
  Profile profile{field(j, "z").get<int>(),
                  rational_from_json(field(j, "weight")),
                  ballot_from_json(field(j, "n1")),
                  ballot_from_json(field(j, "n2")),
                  field(j, "target").get<Cand>(),
                  std::nullopt,
                  std::nullopt};
  if (!field(j, "m1").is_null()) profile.m1 = ballot_from_json(j["m1"]);
  if (!field(j, "m2").is_null()) profile.m2 = ballot_from_json(j["m2"]);
  try {
    profile.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return profile;
}

json to_json(const TwoNmtsInstance& instance) {
  json j;
  j["variant"] = instance.variant == NmtsVariant::Standard ? "standard" : "restricted";
  j["m"] = instance.m;
  j["a"] = instance.a;
  return j;
}

TwoNmtsInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected object");
  TwoNmtsInstance instance;
  const std::string variant = field(j, "variant").get<std::string>();
  if (variant == "standard")
    instance.variant = NmtsVariant::Standard;
  else if (variant == "restricted")
    instance.variant = NmtsVariant::Restricted;
  else
    throw ParseError("instance: variant must be standard|restricted");
  instance.m = field(j, "m").get<int>();
  instance.a = int_array(field(j, "a"), "instance.a");
  try {
    instance.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return instance;
}

json to_json(const NmtsSolution& solution) {
  json j;
  j["p1"] = solution.p1;
  j["p2"] = solution.p2;
  return j;
}

NmtsSolution solution_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("solution: expected object");
  return {int_array(field(j, "p1"), "solution.p1"),
          int_array(field(j, "p2"), "solution.p2")};
}

json to_json(const ReductionArtifact& artifact) {
  json j;
  j["profile"] = to_json(artifact.profile);
  j["source"] = to_json(artifact.source);
  j["w"] = to_json(artifact.w);
  j["fstar"] = to_json(artifact.fstar);
  json pv = json::array(), dv = json::array();
  for (const auto& v : artifact.pvec) pv.push_back(to_json(v));
  for (const auto& v : artifact.dvec) dv.push_back(to_json(v));
  j["pvec"] = pv;
  j["dvec"] = dv;
  json groups;
  for (const auto& [voter, segs] : artifact.groups) groups[voter] = segments_to_json(segs);
  j["groups"] = groups.is_null() ? json::object() : groups;
  json maps = json::object();
  for (const auto& [voter, vm] : artifact.virtual_maps) {
    json arr = json::array();
    for (const auto& pr : vm) arr.push_back({pr[0], pr[1]});
    maps[voter] = arr;
  }
  j["virtual_maps"] = maps;
  j["leftovers"] = {{"first", artifact.leftovers.first},
                    {"count", artifact.leftovers.count},
                    {"n1", artifact.leftovers.n1},
                    {"n2", artifact.leftovers.n2},
                    {"m1", artifact.leftovers.m1},
                    {"m2", artifact.leftovers.m2}};
  const char* kind = nullptr;
  switch (artifact.params.kind) {
    case ReductionKind::WGe3: kind = "w_ge3"; break;
    case ReductionKind::WEq2: kind = "w_eq2"; break;
    case ReductionKind::WOpen: kind = "w_open"; break;
  }
  j["params"] = {{"kind", kind},
                 {"m", artifact.params.m},
                 {"z", artifact.params.z},
                 {"w", to_json(artifact.params.w)},
                 {"eps", to_json(artifact.params.eps)},
                 {"D", artifact.params.D},
                 {"p", artifact.params.p},
                 {"R", artifact.params.R}};
  return j;
}

ReductionArtifact artifact_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("artifact: expected object");
  ReductionArtifact artifact{profile_from_json(field(j, "profile")),
                             instance_from_json(field(j, "source")),
                             rational_from_json(field(j, "w")),
                             rational_from_json(field(j, "fstar")),
                             rational_array(field(j, "pvec"), "artifact.pvec"),
                             rational_array(field(j, "dvec"), "artifact.dvec"),
                             {},
                             {},
                             {},
                             {}};
  for (const auto& [voter, segs] : field(j, "groups").items())
    artifact.groups[voter] = segments_from_json(segs);
  for (const auto& [voter, vm] : field(j, "virtual_maps").items()) {
    VirtualMap out;
    for (const auto& pr : vm) {
      if (!pr.is_array() || pr.size() != 2) throw ParseError("virtual_maps: expected pairs");
      out.push_back({pr[0].get<long long>(), pr[1].get<long long>()});
    }
    artifact.virtual_maps[voter] = out;
  }
  const json& lo = field(j, "leftovers");
  artifact.leftovers.first = field(lo, "first").get<Cand>();
  artifact.leftovers.count = field(lo, "count").get<int>();
  artifact.leftovers.n1 = ll_array(field(lo, "n1"), "leftovers.n1");
  artifact.leftovers.n2 = ll_array(field(lo, "n2"), "leftovers.n2");
  artifact.leftovers.m1 = ll_array(field(lo, "m1"), "leftovers.m1");
  artifact.leftovers.m2 = ll_array(field(lo, "m2"), "leftovers.m2");
  const json& pj = field(j, "params");
  const std::string kind = field(pj, "kind").get<std::string>();
  if (kind == "w_ge3")
    artifact.params.kind = ReductionKind::WGe3;
  else if (kind == "w_eq2")
    artifact.params.kind = ReductionKind::WEq2;
  else if (kind == "w_open")
    artifact.params.kind = ReductionKind::WOpen;
  else
    throw ParseError("params.kind must be w_ge3|w_eq2|w_open");
  artifact.params.m = field(pj, "m").get<int>();
  artifact.params.z = field(pj, "z").get<int>();
  artifact.params.w = rational_from_json(field(pj, "w"));
  artifact.params.eps = rational_from_json(field(pj, "eps"));
  artifact.params.D = field(pj, "D").get<long long>();
  artifact.params.p = field(pj, "p").get<long long>();
  artifact.params.R = field(pj, "R").get<long long>();
  return artifact;
}

json to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"location", c.location}});
  return {{"passed", report.passed}, {"checks", checks}};
}

ValidationReport report_from_json(const json& j) {
  ValidationReport report;
  report.passed = field(j, "passed").get<bool>();
  for (const auto& c : field(j, "checks")) {
    report.checks.push_back({field(c, "name").get<std::string>(),
                             field(c, "passed").get<bool>(),
                             field(c, "lhs").get<std::string>(),
                             field(c, "rhs").get<std::string>(),
                             field(c, "location").get<std::string>()});
  }
  return report;
}

json to_json(const ManipulationResult& result) {
  json j;
  j["found"] = result.found;
  j["m1"] = result.m1 ? to_json(*result.m1) : json(nullptr);
  j["m2"] = result.m2 ? to_json(*result.m2) : json(nullptr);
  if (result.witness_totals) {
    json totals = json::array();
    for (const auto& t : *result.witness_totals) totals.push_back(to_json(t));
    j["witness_totals"] = totals;
  } else {
    j["witness_totals"] = nullptr;
  }
  return j;
}

json to_json(const EvalResult& result) {
  json totals = json::array();
  for (const auto& t : result.totals) totals.push_back(to_json(t));
  return {{"success", result.success}, {"totals", totals}, {"winners", result.winners}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << dump_canonical(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bordaforge
