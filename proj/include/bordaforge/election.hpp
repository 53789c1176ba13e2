#pragma once

#include <optional>
#include <vector>

#include "bordaforge/rational.hpp"

namespace bordaforge {

using Cand = int;

// A strict total order over candidates 0..z-1. ranking()[k] is the candidate
// in position k+1; the candidate in position r receives z-r points, so the
// induced unweighted scores are exactly {0, 1, ..., z-1}.
class Ballot {
public:
  explicit Ballot(std::vector<Cand> ranking);

  int z() const { return static_cast<int>(ranking_.size()); }
  const std::vector<Cand>& ranking() const { return ranking_; }

  // 1-based position of c.
  int rank_of(Cand c) const;
  // Unweighted points: z - rank_of(c).
  long long points_for(Cand c) const;

  friend bool operator==(const Ballot& a, const Ballot& b) {
    return a.ranking_ == b.ranking_;
  }

private:
  std::vector<Cand> ranking_;
  std::vector<int> rank_;
};

// Scores indexed by candidate id; the carrier for constructed score vectors
// before they are turned back into rankings.
using ScoreAssignment = std::vector<Rational>;

// One two-manipulator election: z candidates, non-manipulators n1 (weighted)
// and n2, a designated target, and the manipulators' ballots once chosen.
// Ballots are stored unweighted; n1's weight is applied at tally time.
struct Profile {
  int z;
  Rational weight;
  Ballot n1;
  Ballot n2;
  Cand target;
  std::optional<Ballot> m1;
  std::optional<Ballot> m2;

  void validate() const;
};

// Weighted Borda totals, indexed by candidate. Absent manipulators
// contribute nothing.
std::vector<Rational> borda_totals(const Profile& profile);

// The argmax set, ascending by candidate id.
std::vector<Cand> winner_set(const std::vector<Rational>& totals);

struct EvalResult {
  bool success;
  std::vector<Rational> totals;
  std::vector<Cand> winners;
};

// Certificate check: both manipulator ballots must be present; success means
// the target is among the co-winners.
EvalResult evaluate(const Profile& profile);

// Inverse of score extraction: the ballot whose induced scores times
// `weight` equal `scores`. Throws NotABallotError when the quotient multiset
// is not exactly {0, ..., z-1}.
Ballot ballot_from_scores(const ScoreAssignment& scores, const Rational& weight);

}  // namespace bordaforge
