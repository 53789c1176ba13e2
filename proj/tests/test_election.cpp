#include <doctest.h>

#include <numeric>

#include "bordaforge/detrand.hpp"
#include "bordaforge/election.hpp"
#include "bordaforge/errors.hpp"

using namespace bordaforge;

namespace {

Ballot ballot(std::vector<Cand> r) { return Ballot(std::move(r)); }

Profile profile(int z, Rational w, std::vector<Cand> n1, std::vector<Cand> n2,
                Cand target) {
  return Profile{z, w, ballot(std::move(n1)), ballot(std::move(n2)), target,
                 std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("ballot validation") {
  CHECK_THROWS_AS(ballot({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(ballot({0, 1, 3}), ValidationError);
  CHECK_THROWS_AS(ballot({}), ValidationError);
  const Ballot b = ballot({2, 0, 1});
  CHECK(b.rank_of(2) == 1);
  CHECK(b.points_for(2) == 2);
  CHECK(b.points_for(1) == 0);
}

// Candidate naming in these fixtures: ids (0, 1, 2) play (c1, c2, c*).
TEST_CASE("borda_totals on identical ballots") {
  Profile p = profile(3, Rational(1), {0, 1, 2}, {0, 1, 2}, 2);
  p.m1 = ballot({0, 1, 2});
  p.m2 = ballot({0, 1, 2});
  const auto totals = borda_totals(p);
  CHECK(totals[0] == Rational(8));
  CHECK(totals[1] == Rational(4));
  CHECK(totals[2] == Rational(0));
}

TEST_CASE("borda_totals with fractional weight and absent manipulators") {
  const Profile p = profile(3, Rational(1, 2), {0, 1, 2}, {0, 1, 2}, 2);
  const auto totals = borda_totals(p);
  CHECK(totals[0] == Rational(3));
  CHECK(totals[1] == Rational(3, 2));
  CHECK(totals[2] == Rational(0));
  CHECK(winner_set(totals) == std::vector<Cand>{0});
}

TEST_CASE("winner_set returns the full argmax set") {
  CHECK(winner_set({Rational(4), Rational(4), Rational(4)}) ==
        std::vector<Cand>{0, 1, 2});
  CHECK(winner_set({Rational(3), Rational(3, 2), Rational(0)}) ==
        std::vector<Cand>{0});
  CHECK_THROWS_AS(winner_set({}), ValidationError);
}

TEST_CASE("evaluate: tie counts as success") {
  Profile p = profile(2, Rational(1), {0, 1}, {0, 1}, 1);
  CHECK_THROWS_AS(evaluate(p), ValidationError);
  p.m1 = ballot({1, 0});
  p.m2 = ballot({1, 0});
  const auto result = evaluate(p);
  CHECK(result.totals[0] == Rational(2));
  CHECK(result.totals[1] == Rational(2));
  CHECK(result.success);
}

TEST_CASE("evaluate: heavy weight blocks the target") {
  Profile p = profile(3, Rational(5), {0, 1, 2}, {0, 1, 2}, 2);
  p.m1 = ballot({2, 1, 0});
  p.m2 = ballot({2, 1, 0});
  const auto result = evaluate(p);
  CHECK(result.totals[0] == Rational(12));
  CHECK(result.totals[2] == Rational(4));
  CHECK_FALSE(result.success);
  CHECK(result.winners == std::vector<Cand>{0});
}

TEST_CASE("ballot_from_scores") {
  // ids (0, 1, 2) play (c*, c2, c1): scores c*=2, c2=1, c1=0.
  const Ballot b = ballot_from_scores({Rational(2), Rational(1), Rational(0)}, Rational(1));
  CHECK(b.ranking() == std::vector<Cand>{0, 1, 2});

  CHECK_THROWS_AS(ballot_from_scores({Rational(1), Rational(1), Rational(0)}, Rational(1)),
                  NotABallotError);
  CHECK_THROWS_AS(ballot_from_scores({Rational(3), Rational(1), Rational(0)}, Rational(1)),
                  NotABallotError);
  CHECK_THROWS_AS(ballot_from_scores({Rational(1), Rational(1, 2), Rational(0)}, Rational(1)),
                  NotABallotError);
}

TEST_CASE("ballot_from_scores honors the weight") {
  // Weighted scores out of an 11-candidate construction, weight 3: c1=30,
  // c2=27, target 15, rest descending multiples of 3.
  ScoreAssignment scores(11);
  scores[0] = Rational(30);
  scores[1] = Rational(27);
  const long long rest[] = {24, 21, 18, 12, 9, 6, 3, 0};
  for (int i = 0; i < 8; ++i) scores[2 + i] = Rational(rest[i]);
  scores[10] = Rational(15);
  const Ballot b = ballot_from_scores(scores, Rational(3));
  CHECK(b.rank_of(0) == 1);
  CHECK(b.rank_of(1) == 2);
  CHECK(b.rank_of(10) == 6);
}

TEST_CASE("point conservation over random complete profiles") {
  DetRand rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int z = static_cast<int>(rng.range(1, 9));
    const Rational w(rng.range(1, 9), rng.range(1, 9));
    Profile p{z,
              w,
              Ballot(rng.permutation(z)),
              Ballot(rng.permutation(z)),
              static_cast<Cand>(rng.below(z)),
              Ballot(rng.permutation(z)),
              Ballot(rng.permutation(z))};
    const auto totals = borda_totals(p);
    Rational sum(0);
    for (const auto& t : totals) sum += t;
    CHECK(sum == (w + Rational(3)) * Rational(static_cast<long long>(z) * (z - 1), 2));
  }
}

TEST_CASE("winner_set is invariant under positive rescaling") {
  DetRand rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int z = static_cast<int>(rng.range(1, 8));
    std::vector<Rational> totals;
    for (int c = 0; c < z; ++c) totals.emplace_back(rng.range(0, 30), rng.range(1, 5));
    const Rational scale(rng.range(1, 20), rng.range(1, 20));
    auto scaled = totals;
    for (auto& t : scaled) t *= scale;
    CHECK(winner_set(totals) == winner_set(scaled));
  }
}

TEST_CASE("ballot_from_scores inverts score extraction") {
  DetRand rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int z = static_cast<int>(rng.range(1, 10));
    const Rational w(rng.range(1, 12), rng.range(1, 12));
    const Ballot original(rng.permutation(z));
    ScoreAssignment scores(z);
    for (Cand c = 0; c < z; ++c) scores[c] = w * Rational(original.points_for(c));
    CHECK(ballot_from_scores(scores, w) == original);
  }
}
