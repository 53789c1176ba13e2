#include "bordaforge/manipulation.hpp"

#include <algorithm>
#include <string>

#include "bordaforge/errors.hpp"

namespace bordaforge {

namespace {

// Interval form of Hall's condition: scores {0..k-1} fit under `caps`
// (sorted ascending) iff caps[i] >= i for every i.
bool hall_feasible(std::vector<long long> caps) {
  std::sort(caps.begin(), caps.end());
  for (size_t i = 0; i < caps.size(); ++i)
    if (caps[i] < static_cast<long long>(i)) return false;
  return true;
}

struct Search {
  std::vector<Cand> others;          // non-target candidates, ascending
  std::vector<long long> budget;     // floor(fstar - base) per others index
  std::vector<int> t1;               // assigned first-manipulator score or -1
  std::vector<std::pair<Cand, int>>* result;

  bool node_viable(int next_score) const {
    // Optimistic caps for the second manipulator: unassigned candidates may
    // still receive any of the remaining (smaller) first scores.
    std::vector<long long> caps2;
    caps2.reserve(others.size());
    std::vector<long long> caps1;
    for (size_t i = 0; i < others.size(); ++i) {
      if (t1[i] >= 0) {
        caps2.push_back(budget[i] - t1[i]);
      } else {
        caps2.push_back(budget[i]);
        caps1.push_back(budget[i]);
      }
    }
    if (!hall_feasible(std::move(caps2))) return false;
    // The remaining first-manipulator scores are exactly {0..next_score}.
    (void)next_score;
    return hall_feasible(std::move(caps1));
  }

  bool place(int score, std::vector<int>& m2_scores) {
    if (score < 0) {
      CapVector caps;
      std::set<int> scores;
      for (size_t i = 0; i < others.size(); ++i) {
        caps[others[i]] = budget[i] - t1[i];
        scores.insert(static_cast<int>(i));
      }
      auto assignment = completion_feasible(caps, scores);
      if (!assignment) return false;
      m2_scores.assign(others.size(), 0);
      for (size_t i = 0; i < others.size(); ++i)
        m2_scores[i] = assignment->at(others[i]);
      return true;
    }
    for (size_t i = 0; i < others.size(); ++i) {
      if (t1[i] >= 0) continue;
      if (budget[i] < score) continue;
      t1[i] = score;
      if (node_viable(score - 1) && place(score - 1, m2_scores)) return true;
      t1[i] = -1;
    }
    return false;
  }
};

}  // namespace

std::pair<Ballot, Ballot> respective_reverse(const Ballot& n1, const Ballot& n2,
                                             Cand target) {
  if (n1.z() != n2.z()) throw ValidationError("respective_reverse: size mismatch");
  auto build = [target](const Ballot& b) {
    std::vector<Cand> r(b.ranking().rbegin(), b.ranking().rend());
    auto it = std::find(r.begin(), r.end(), target);
    if (it == r.end()) throw ValidationError("respective_reverse: target not ranked");
    r.erase(it);
    r.insert(r.begin(), target);
    return Ballot(r);
  };
  return {build(n1), build(n2)};
}

std::optional<std::map<Cand, int>> completion_feasible(const CapVector& caps,
                                                       const std::set<int>& scores) {
  const int k = static_cast<int>(caps.size());
  if (static_cast<int>(scores.size()) != k)
    throw ValidationError("completion_feasible: |scores| != |caps|");
  int expect = 0;
  for (int s : scores) {
    if (s != expect++)
      throw ValidationError("completion_feasible: scores must be {0..k-1}");
  }
  std::vector<std::pair<long long, Cand>> order;
  order.reserve(k);
  for (const auto& [cand, cap] : caps) order.emplace_back(cap, cand);
  std::sort(order.begin(), order.end());
  std::map<Cand, int> assignment;
  for (int s = 0; s < k; ++s) {
    if (order[s].first < s) return std::nullopt;
    assignment[order[s].second] = s;
  }
  return assignment;
}

ManipulationResult brute_force_manipulation(const Profile& profile,
                                            int enumeration_limit) {
  Profile p = profile;
  p.m1.reset();
  p.m2.reset();
  p.validate();
  if (p.z > enumeration_limit)
    throw LimitError("brute_force_manipulation: z=" + std::to_string(p.z) +
                     " exceeds enumeration limit " + std::to_string(enumeration_limit));

  const auto base = borda_totals(p);
  const Rational fstar = base[p.target] + Rational(2LL * (p.z - 1));

  Search search;
  for (Cand c = 0; c < p.z; ++c)
    if (c != p.target) search.others.push_back(c);
  for (Cand c : search.others)
    search.budget.push_back((fstar - base[c]).floor());
  search.t1.assign(search.others.size(), -1);

  ManipulationResult result;
  std::vector<int> m2_scores;
  if (!search.node_viable(p.z - 2) || !search.place(p.z - 2, m2_scores)) {
    result.found = false;
    return result;
  }

  ScoreAssignment s1(p.z, Rational(0)), s2(p.z, Rational(0));
  s1[p.target] = s2[p.target] = Rational(p.z - 1);
  for (size_t i = 0; i < search.others.size(); ++i) {
    s1[search.others[i]] = Rational(search.t1[i]);
    s2[search.others[i]] = Rational(m2_scores[i]);
  }
  p.m1 = ballot_from_scores(s1, Rational(1));
  p.m2 = ballot_from_scores(s2, Rational(1));

  const auto eval = evaluate(p);
  result.found = true;
  result.m1 = p.m1;
  result.m2 = p.m2;
  result.witness_totals = eval.totals;
  return result;
}

}  // namespace bordaforge
