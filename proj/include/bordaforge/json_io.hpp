#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bordaforge/manipulation.hpp"
#include "bordaforge/nmts.hpp"
#include "bordaforge/reductions.hpp"

// JSON schemas for every file the toolkit reads or writes. Rationals are
// "p/q" strings ("p" when integral); ballots are rank-ordered candidate id
// arrays; keys serialize in lexicographic order, so equal values always
// produce identical bytes.

namespace bordaforge {

nlohmann::json to_json(const Rational& value);
nlohmann::json to_json(const Ballot& ballot);
nlohmann::json to_json(const Profile& profile);
nlohmann::json to_json(const TwoNmtsInstance& instance);
nlohmann::json to_json(const NmtsSolution& solution);
nlohmann::json to_json(const ReductionArtifact& artifact);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const ManipulationResult& result);
nlohmann::json to_json(const EvalResult& result);

Rational rational_from_json(const nlohmann::json& j);
Ballot ballot_from_json(const nlohmann::json& j);
Profile profile_from_json(const nlohmann::json& j);
TwoNmtsInstance instance_from_json(const nlohmann::json& j);
NmtsSolution solution_from_json(const nlohmann::json& j);
ReductionArtifact artifact_from_json(const nlohmann::json& j);
ValidationReport report_from_json(const nlohmann::json& j);

std::string dump_canonical(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
std::string read_text_file(const std::string& path);

}  // namespace bordaforge
