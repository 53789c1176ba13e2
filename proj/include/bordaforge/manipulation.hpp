#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>

#include "bordaforge/election.hpp"

namespace bordaforge {

struct ManipulationResult {
  bool found = false;
  std::optional<Ballot> m1;
  std::optional<Ballot> m2;
  std::optional<std::vector<Rational>> witness_totals;
};

// Maximum additional unweighted points each candidate may still receive; an
// entry of -1 (or lower) means the candidate is already over budget.
using CapVector = std::map<Cand, long long>;

inline constexpr int kDefaultEnumerationLimit = 11;

// Each manipulator reverses the matching non-manipulator's ranking and then
// promotes the target to first place. Guaranteed to make the target a
// co-winner whenever the weight is at most 1; for larger weights callers
// must check the outcome with evaluate().
std::pair<Ballot, Ballot> respective_reverse(const Ballot& n1, const Ballot& n2,
                                             Cand target);

// Can the scores {0,...,k-1} be assigned to distinct candidates with
// score <= cap? Feasible exactly when the i-th smallest cap is at least i-1;
// the greedy assignment (caps ascending, scores ascending) realizes it.
// `scores` must be exactly {0,...,k-1} with k = caps.size().
std::optional<std::map<Cand, int>> completion_feasible(const CapVector& caps,
                                                       const std::set<int>& scores);

// Exact decision for small instances. Pins the target at the top of both
// manipulator ballots (raising the target and lowering the displaced
// candidate never turns a successful pair into a failing one), enumerates
// the first manipulator's score arrangement by backtracking, and closes each
// branch with completion_feasible. Deterministic: returns the first pair
// found under a fixed branch order (scores placed high to low, candidates
// tried in id order). Throws LimitError when z exceeds `enumeration_limit`.
ManipulationResult brute_force_manipulation(const Profile& profile,
                                            int enumeration_limit = kDefaultEnumerationLimit);

}  // namespace bordaforge
