#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bordaforge/errors.hpp"
#include "bordaforge/reductions.hpp"

using namespace bordaforge;

namespace {

TwoNmtsInstance mk(std::vector<int> a, NmtsVariant v) {
  TwoNmtsInstance inst;
  inst.m = static_cast<int>(a.size());
  inst.a = std::move(a);
  inst.variant = v;
  return inst;
}

TwoNmtsInstance standard(std::vector<int> a) { return mk(std::move(a), NmtsVariant::Standard); }
TwoNmtsInstance restricted(std::vector<int> a) { return mk(std::move(a), NmtsVariant::Restricted); }

Rational weighted_score(const Profile& p, Cand c) {
  return p.weight * Rational(p.n1.points_for(c));
}

// New ballot with the scores of two candidates exchanged.
Ballot swap_scores(const Ballot& b, Cand x, Cand y) {
  std::vector<Cand> r = b.ranking();
  std::swap(r[b.rank_of(x) - 1], r[b.rank_of(y) - 1]);
  return Ballot(r);
}

EvalResult run_lift(const ReductionArtifact& art) {
  const auto sol = solve_2nmts(art.source);
  REQUIRE(sol);
  auto [m1, m2] = lift_solution(art, *sol);
  Profile p = art.profile;
  p.m1 = m1;
  p.m2 = m2;
  return evaluate(p);
}

}  // namespace

TEST_CASE("w >= 3 construction on the small symmetric instance") {
  const auto art = reduce_w_ge3(standard({3, 3}), Rational(3));
  const auto& p = art.profile;
  CHECK(p.z == 11);
  CHECK(p.target == 10);
  CHECK(weighted_score(p, 10) == Rational(15));
  CHECK(p.n2.points_for(10) == 3);
  CHECK(weighted_score(p, 0) == Rational(30));
  CHECK(p.n2.points_for(0) == 7);
  CHECK(weighted_score(p, 1) == Rational(27));
  CHECK(p.n2.points_for(1) == 10);
  CHECK(art.fstar == Rational(38));
  REQUIRE(art.dvec.size() == 2);
  CHECK(art.dvec[0] == Rational(37));
  CHECK(art.dvec[1] == Rational(37));

  const auto report = validate_reduction(art);
  CHECK(report.passed);
  const auto* window = report.find("budget_window");
  REQUIRE(window);
  CHECK(window->passed);
}

TEST_CASE("w >= 3 with a fractional weight keeps exact rational scores") {
  const auto art = reduce_w_ge3(standard({3, 3}), Rational(7, 2));
  const auto& p = art.profile;
  CHECK(p.z == 12);
  CHECK(weighted_score(p, p.target) == Rational(21));
  CHECK(p.n2.points_for(p.target) == 4);
  CHECK(weighted_score(p, 0) == Rational(77, 2));
  CHECK(p.n2.points_for(0) == 7);
  CHECK(art.fstar == Rational(47));
  CHECK(validate_reduction(art).passed);
}

TEST_CASE("w >= 3 budget identity: lifted pair sums cover m(m-1) points") {
  for (const auto& inst :
       {standard({3, 3}), standard({2, 4}), standard({2, 4, 6}), standard({4, 4, 4})}) {
    long long sum = 0;
    for (int i = 0; i < inst.m; ++i) sum += inst.a[i] - 2;
    CHECK(sum == static_cast<long long>(inst.m) * (inst.m - 1));
  }
}

TEST_CASE("w >= 3 rejects colliding or out-of-range constructions") {
  // Derived second-voter scores may duplicate the target's score...
  CHECK_THROWS_WITH_AS(reduce_w_ge3(standard({2, 4}), Rational(6)),
                       doctest::Contains("duplicate second-voter score"),
                       ConstructionError);
  CHECK_THROWS_AS(reduce_w_ge3(standard({4, 4, 4}), Rational(5)), ConstructionError);
  // ...or, when frac(w*m) lands in (0, 1/2], overflow the score range.
  CHECK_THROWS_WITH_AS(reduce_w_ge3(standard({2, 4, 6}), Rational(7, 2)),
                       doctest::Contains("outside"), ConstructionError);
  // Valid neighbours of those cases still build.
  CHECK(validate_reduction(reduce_w_ge3(standard({2, 4}), Rational(5))).passed);
  CHECK(validate_reduction(reduce_w_ge3(standard({2, 4, 6}), Rational(3))).passed);
  CHECK(validate_reduction(reduce_w_ge3(standard({2, 4, 6, 8}), Rational(7, 2))).passed);

  CHECK_THROWS_AS(reduce_w_ge3(standard({2, 4}), Rational(2)), ValidationError);
  CHECK_THROWS_AS(reduce_w_ge3(restricted({0, 2}), Rational(3)), ValidationError);
}

TEST_CASE("w = 2 construction on the small symmetric instance") {
  const auto art = reduce_w_eq2(standard({3, 3}));
  const auto& p = art.profile;
  CHECK(p.z == 15);
  CHECK(p.target == 14);
  CHECK(weighted_score(p, 14) == Rational(8));
  CHECK(p.n2.points_for(14) == 5);
  CHECK(weighted_score(p, 0) == Rational(28));
  CHECK(weighted_score(p, 1) == Rational(26));
  CHECK(p.n2.points_for(0) == 12);
  CHECK(p.n2.points_for(1) == 14);
  REQUIRE(art.pvec.size() == 2);
  CHECK(art.pvec[0] == Rational(40));
  CHECK(art.pvec[1] == Rational(40));
  CHECK(art.fstar == Rational(41));

  // Group 1's head: doubled 12 from the weighted voter, virtual 10 from the
  // second, 2 from each manipulator.
  CHECK(p.n1.points_for(2) == 12);
  CHECK(art.groups.at("n2")[0].score_at(2) == 10);
  CHECK(art.groups.at("m1")[0].score_at(2) == 2);
  CHECK(art.groups.at("m2")[0].score_at(2) == 2);

  // Pair-sum total from the counting argument.
  Rational psum(0);
  for (const auto& pi : art.pvec) psum += pi;
  CHECK(psum == Rational(80));
  CHECK(psum + Rational(2) == Rational(2) * art.fstar);

  CHECK(validate_reduction(art).passed);
}

TEST_CASE("w = 2 literal group maxima per size") {
  // Frozen from the layout itself: four groups peak at 19m, the last two at
  // 18m-2 and 17m-2.
  for (int m : {2, 3, 4}) {
    const auto art = reduce_w_eq2(standard(std::vector<int>(m, m + 1)));
    std::vector<long long> n1u(art.params.z), m1s(art.params.z, -1),
        m2s(art.params.z, -1), n2v(art.params.z, -1);
    for (Cand c = 0; c < art.params.z; ++c) n1u[c] = art.profile.n1.points_for(c);
    auto fill = [&](const char* voter, std::vector<long long>& dst) {
      for (const auto& s : art.groups.at(voter))
        for (int j = 0; j < s.length; ++j) dst[s.first + j] = s.score_at(s.first + j);
    };
    fill("m1", m1s);
    fill("m2", m2s);
    fill("n2", n2v);
    std::vector<long long> maxima;
    for (int g = 1; g <= 6; ++g) {
      long long best = -1;
      for (Cand c = g * m; c < (g + 1) * m; ++c)
        best = std::max(best, 2 * n1u[c] + n2v[c] + m1s[c] + m2s[c]);
      maxima.push_back(best);
    }
    const long long M = m;
    CHECK(maxima == std::vector<long long>{19 * M, 19 * M, 19 * M, 19 * M,
                                           18 * M - 2, 17 * M - 2});
  }
}

TEST_CASE("devirtualize") {
  SUBCASE("documented examples") {
    std::set<long long> available;
    for (long long v = 0; v <= 14; ++v) available.insert(v);
    for (long long v : {5, 12, 14}) available.erase(v);
    std::map<Cand, long long> virt;
    for (Cand c = 0; c < 12; ++c) virt[c] = 3 + c;  // virtual {3..14}
    const auto actual = devirtualize(virt, available);
    CHECK(actual.at(11) == 13);  // virtual 14
    CHECK(actual.at(0) == 0);    // virtual 3
  }
  SUBCASE("identity when sets coincide") {
    const std::map<Cand, long long> virt{{0, 4}, {1, 7}, {2, 9}};
    CHECK(devirtualize(virt, {4, 7, 9}) == virt);
  }
  SUBCASE("rank correspondence is a plain shift for shifted sets") {
    std::map<Cand, long long> virt;
    for (Cand c = 0; c < 12; ++c) virt[c] = 3 + c;
    std::set<long long> available;
    for (long long v = 0; v <= 11; ++v) available.insert(v);
    const auto actual = devirtualize(virt, available);
    for (Cand c = 0; c < 12; ++c) CHECK(actual.at(c) == virt.at(c) - 3);
  }
  SUBCASE("domination violations are errors") {
    CHECK_THROWS_AS(devirtualize({{0, 1}, {1, 2}}, {2, 3}), ValidationError);
    CHECK_THROWS_AS(devirtualize({{0, 5}, {1, 5}}, {4, 5}), ValidationError);
    CHECK_THROWS_AS(devirtualize({{0, 5}}, {4, 5}), ValidationError);
  }
}

TEST_CASE("lift examples") {
  SUBCASE("w = 2: the matched candidates and the target tie at fstar") {
    const auto art = reduce_w_eq2(standard({3, 3}));
    const auto result = run_lift(art);
    CHECK(result.success);
    CHECK(result.totals[0] == Rational(41));
    CHECK(result.totals[1] == Rational(41));
    CHECK(result.totals[14] == Rational(41));
    CHECK(result.winners == std::vector<Cand>{0, 1, 14});
  }
  SUBCASE("w = 3: everything peaks at 38") {
    const auto art = reduce_w_ge3(standard({3, 3}), Rational(3));
    const auto result = run_lift(art);
    CHECK(result.success);
    CHECK(result.totals[0] == Rational(38));
    CHECK(result.totals[1] == Rational(38));
    CHECK(result.totals[10] == Rational(38));
    for (Cand c = 0; c < 11; ++c) CHECK(result.totals[c] <= Rational(38));
  }
  SUBCASE("invalid solutions are rejected") {
    const auto art = reduce_w_eq2(standard({3, 3}));
    CHECK_THROWS_AS(lift_solution(art, {{1, 1}, {2, 2}}), ValidationError);
    CHECK_THROWS_AS(lift_solution(art, {{1}, {2}}), ValidationError);
  }
}

TEST_CASE("1 < w < 3: golden run at eps=3/2, m=4") {
  CHECK(choose_p(4, Rational(3, 2)) == 2);
  const auto art = reduce_w_open(restricted({0, 0, 6, 6}), Rational(5, 2), 2);
  const auto& p = art.profile;
  CHECK(art.params.D == 14 * 2 + 12);
  CHECK(art.params.R == 12);
  CHECK(p.z == 45);
  CHECK(weighted_score(p, p.target) == Rational(115, 2));
  CHECK(p.n2.points_for(p.target) == 1);
  CHECK(weighted_score(p, 0) == Rational(205, 2));
  CHECK(p.n2.points_for(0) == 44);
  CHECK(p.n2.points_for(1) == 41);
  CHECK(p.n2.points_for(2) == 33);
  CHECK(p.n2.points_for(3) == 30);
  CHECK(art.fstar == Rational(293, 2));

  const auto report = validate_reduction(art);
  CHECK(report.passed);
  // Group head totals, frozen: h1 = (2+eps)D + m - 1, h2 = (7+2eps)m + D - 1,
  // then h_j = h_{j-1} - (1+eps)m + floor((1+eps)m) - 1 from group 5 on.
  CHECK(report.find("group_head_g1")->lhs == "143");
  CHECK(report.find("group_head_g2")->lhs == "79");
  CHECK(report.find("group_head_g4")->lhs == "145");
  CHECK(report.find("lowest_group_score")->lhs == "5");

  // Leftover pair sums are pinned to D + 6m - 1 = 63.
  for (int i = 0; i < art.leftovers.count; ++i)
    CHECK(art.leftovers.n2[i] + art.leftovers.m1[i] == 63);
}

TEST_CASE("1 < w < 3: lifting succeeds for solvable instances") {
  SUBCASE("eps=3/2, m=4") {
    const auto art = reduce_w_open(restricted({0, 2, 4, 6}), Rational(5, 2), 2);
    const auto result = run_lift(art);
    CHECK(result.success);
    CHECK(result.totals[art.profile.target] == art.fstar);
  }
  SUBCASE("eps=1/2, m=7 with a_1 = 0") {
    const long long pmin = choose_p(7, Rational(1, 2));
    CHECK(pmin == 22);
    const auto art =
        reduce_w_open(restricted({0, 6, 6, 6, 6, 6, 12}), Rational(3, 2), pmin);
    CHECK(run_lift(art).success);
  }
}

TEST_CASE("1 < w < 3: parameter preconditions") {
  CHECK_THROWS_AS(reduce_w_open(restricted({0, 2, 4, 6}), Rational(5, 2), 0),
                  ValidationError);
  // m = 3 never qualifies.
  CHECK_THROWS_AS(choose_p(3, Rational(3, 2)), ValidationError);
  // eps = 1/2 needs m > 6.
  CHECK_THROWS_AS(reduce_w_open(restricted({0, 2, 4, 6, 8, 10}), Rational(3, 2), 5),
                  ValidationError);
  CHECK_THROWS_AS(reduce_w_open(restricted({0, 2, 4, 6}), Rational(7, 2), 2),
                  ValidationError);
  CHECK_THROWS_AS(reduce_w_open(standard({2, 4}), Rational(3, 2), 2), ValidationError);
  // Too-small p fails a named constraint instead of building a bad artifact.
  CHECK_THROWS_AS(reduce_w_open(restricted({0, 0, 6, 6}), Rational(5, 2), 1),
                  ConstructionError);
}

TEST_CASE("choose_p is monotone at the boundary") {
  const std::vector<std::pair<Rational, std::vector<int>>> cases = {
      {Rational(3, 2), {0, 0, 6, 6}},
      {Rational(3, 2), {0, 0, 4, 8, 8}},
      {Rational(1, 2), {0, 0, 0, 6, 12, 12, 12}}};
  for (const auto& [eps, a] : cases) {
    const TwoNmtsInstance worst = restricted(a);
    const long long pmin = choose_p(worst.m, eps);
    CHECK_THROWS_AS(reduce_w_open(worst, Rational(1) + eps, pmin - 1),
                    ConstructionError);
    CHECK_NOTHROW(reduce_w_open(worst, Rational(1) + eps, pmin));
    CHECK_NOTHROW(reduce_w_open(worst, Rational(1) + eps, pmin + 1));
    CHECK_NOTHROW(reduce_w_open(worst, Rational(1) + eps, pmin + 2));
  }
}

TEST_CASE("validator flags hand-corrupted artifacts") {
  SUBCASE("the matched-block window breaks when v21 gains a point") {
    auto art = reduce_w_ge3(standard({3, 3}), Rational(3));
    // Candidate 0 holds second-voter score 7 and candidate 8 holds 8;
    // swapping them raises v21 by one while the ballot stays well-formed.
    REQUIRE(art.profile.n2.points_for(0) == 7);
    REQUIRE(art.profile.n2.points_for(8) == 8);
    art.profile.n2 = swap_scores(art.profile.n2, 0, 8);
    const auto report = validate_reduction(art);
    CHECK_FALSE(report.passed);
    const auto* window = report.find("floor_window");
    REQUIRE(window);
    CHECK_FALSE(window->passed);
    CHECK(window->location == "i=0");
  }
  SUBCASE("metadata corruption") {
    auto art = reduce_w_eq2(standard({3, 3}));
    art.fstar += Rational(1);
    const auto report = validate_reduction(art);
    CHECK_FALSE(report.passed);
    CHECK_FALSE(report.find("fstar_consistency")->passed);
  }
  SUBCASE("pair vector corruption") {
    auto art = reduce_w_eq2(standard({3, 3}));
    art.pvec[1] += Rational(1);
    const auto report = validate_reduction(art);
    CHECK_FALSE(report.passed);
    CHECK_FALSE(report.find("pair_sum_consistency")->passed);
  }
}

TEST_CASE("structured no-instance search finds nothing for (2,2,8,8)") {
  const auto inst = standard({2, 2, 8, 8});
  REQUIRE_FALSE(solve_2nmts(inst));
  for (const Rational& w : {Rational(2), Rational(3)}) {
    const auto art = w == Rational(2) ? reduce_w_eq2(inst) : reduce_w_ge3(inst, w);
    const int m = inst.m;
    // All (m!)^2 structured completions: target first, {0..m-1} permuted
    // over the matched block, the rest per the recorded layout.
    std::vector<int> perm1(m);
    std::iota(perm1.begin(), perm1.end(), 0);
    bool any_success = false;
    do {
      std::vector<int> perm2(m);
      std::iota(perm2.begin(), perm2.end(), 0);
      do {
        std::vector<long long> t1(art.params.z, -1), t2(art.params.z, -1);
        t1[art.params.z - 1] = t2[art.params.z - 1] = art.params.z - 1;
        for (int i = 0; i < m; ++i) {
          t1[i] = perm1[i];
          t2[i] = perm2[i];
        }
        for (const auto& s : art.groups.at("m1"))
          for (int j = 0; j < s.length; ++j) t1[s.first + j] = s.score_at(s.first + j);
        for (const auto& s : art.groups.at("m2"))
          for (int j = 0; j < s.length; ++j) t2[s.first + j] = s.score_at(s.first + j);
        ScoreAssignment s1(art.params.z), s2(art.params.z);
        for (Cand c = 0; c < art.params.z; ++c) {
          s1[c] = Rational(t1[c]);
          s2[c] = Rational(t2[c]);
        }
        Profile p = art.profile;
        p.m1 = ballot_from_scores(s1, Rational(1));
        p.m2 = ballot_from_scores(s2, Rational(1));
        any_success = any_success || evaluate(p).success;
      } while (!any_success && std::next_permutation(perm2.begin(), perm2.end()));
    } while (!any_success && std::next_permutation(perm1.begin(), perm1.end()));
    CHECK_FALSE(any_success);
  }
}
