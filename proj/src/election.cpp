#include "bordaforge/election.hpp"

#include <algorithm>
#include <string>

#include "bordaforge/errors.hpp"

namespace bordaforge {

Ballot::Ballot(std::vector<Cand> ranking) : ranking_(std::move(ranking)) {
  const int z = static_cast<int>(ranking_.size());
  if (z == 0) throw ValidationError("ballot: empty ranking");
  rank_.assign(z, 0);
  for (int pos = 0; pos < z; ++pos) {
    const Cand c = ranking_[pos];
    if (c < 0 || c >= z)
      throw ValidationError("ballot: candidate id " + std::to_string(c) +
                            " out of range for z=" + std::to_string(z));
    if (rank_[c] != 0)
      throw ValidationError("ballot: duplicate candidate " + std::to_string(c));
    rank_[c] = pos + 1;
  }
}

int Ballot::rank_of(Cand c) const {
  if (c < 0 || c >= z())
    throw ValidationError("ballot: unknown candidate " + std::to_string(c));
  return rank_[c];
}

long long Ballot::points_for(Cand c) const { return z() - rank_of(c); }

void Profile::validate() const {
  if (z < 1) throw ValidationError("profile: z must be >= 1");
  if (!(weight > Rational(0))) throw ValidationError("profile: weight must be positive");
  if (target < 0 || target >= z) throw ValidationError("profile: target out of range");
  for (const Ballot* b : {&n1, &n2}) {
    if (b->z() != z) throw ValidationError("profile: ballot size mismatch");
  }
  for (const auto& mb : {m1, m2}) {
    if (mb && mb->z() != z) throw ValidationError("profile: manipulator ballot size mismatch");
  }
}

std::vector<Rational> borda_totals(const Profile& profile) {
  profile.validate();
  std::vector<Rational> totals(profile.z, Rational(0));
  for (Cand c = 0; c < profile.z; ++c) {
    totals[c] = profile.weight * Rational(profile.n1.points_for(c));
    totals[c] += Rational(profile.n2.points_for(c));
    if (profile.m1) totals[c] += Rational(profile.m1->points_for(c));
    if (profile.m2) totals[c] += Rational(profile.m2->points_for(c));
  }
  return totals;
}

std::vector<Cand> winner_set(const std::vector<Rational>& totals) {
  if (totals.empty()) throw ValidationError("winner_set: empty totals");
  Rational best = totals[0];
  for (const auto& t : totals)
    if (t > best) best = t;
  std::vector<Cand> winners;
  for (Cand c = 0; c < static_cast<Cand>(totals.size()); ++c)
    if (totals[c] == best) winners.push_back(c);
  return winners;
}

EvalResult evaluate(const Profile& profile) {
  if (!profile.m1 || !profile.m2)
    throw ValidationError("evaluate: both manipulator ballots are required");
  EvalResult result;
  result.totals = borda_totals(profile);
  result.winners = winner_set(result.totals);
  result.success = std::binary_search(result.winners.begin(), result.winners.end(),
                                      profile.target);
  return result;
}

Ballot ballot_from_scores(const ScoreAssignment& scores, const Rational& weight) {
  const int z = static_cast<int>(scores.size());
  if (z == 0) throw NotABallotError("ballot_from_scores: empty assignment");
  if (!(weight > Rational(0)))
    throw NotABallotError("ballot_from_scores: weight must be positive");
  std::vector<Cand> ranking(z, -1);
  for (Cand c = 0; c < z; ++c) {
    const Rational q = scores[c] / weight;
    if (!q.is_integer())
      throw NotABallotError("ballot_from_scores: score of candidate " +
                            std::to_string(c) + " is not a multiple of the weight");
    const long long pts = q.num();
    if (pts < 0 || pts >= z)
      throw NotABallotError("ballot_from_scores: score " + q.str() +
                            " out of range for candidate " + std::to_string(c));
    const int pos = z - 1 - static_cast<int>(pts);
    if (ranking[pos] != -1)
      throw NotABallotError("ballot_from_scores: duplicate score " + q.str());
    ranking[pos] = c;
  }
  return Ballot(ranking);
}

}  // namespace bordaforge
