#include "bordaforge/reductions.hpp"

#include <algorithm>
#include <numeric>

#include "bordaforge/errors.hpp"

namespace bordaforge {

namespace {

std::string loc_of(int i) { return "i=" + std::to_string(i); }

struct Recorder {
  std::vector<ValidationCheck> checks;

  void add(const std::string& name, bool passed, const std::string& lhs,
           const std::string& rhs, const std::string& location = "") {
    checks.push_back({name, passed, lhs, rhs, location});
  }

  // One entry per named family; the recorded values come from the first
  // failing index, or from the last index when everything holds.
  template <typename F>
  void family(const std::string& name, int count, F&& probe) {
    std::string lhs, rhs, loc;
    for (int i = 0; i < count; ++i) {
      if (!probe(i, lhs, rhs)) {
        add(name, false, lhs, rhs, loc_of(i));
        return;
      }
    }
    add(name, true, lhs, rhs, count > 0 ? loc_of(count - 1) : "");
  }

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
  }
};

Rational rat(long long v) { return Rational(v); }

// ---------------------------------------------------------------------------
// Layout tables.
// ---------------------------------------------------------------------------

struct Eq2Layout {
  std::vector<GroupSegment> n1, n2, m1, m2;  // n2 in virtual scores
};

Eq2Layout make_eq2_layout(int m) {
  const long long M = m;
  auto segs = [&](std::vector<long long> starts, std::vector<int> steps) {
    std::vector<GroupSegment> out;
    for (int k = 1; k <= 6; ++k)
      out.push_back({static_cast<Cand>(k * M), m, starts[k - 1], steps[k - 1]});
    return out;
  };
  Eq2Layout layout;
  layout.n1 = segs({6 * M, 5 * M, 4 * M, 3 * M, 2 * M - 1, M - 1},
                   {-1, -1, -1, -1, -1, -1});
  layout.n2 = segs({5 * M, 4 * M, 3 * M, 2 * M, 5 * M + 1, 6 * M + 1},
                   {-1, -1, -1, -1, 1, 1});
  layout.m1 = segs({M, 2 * M, 4 * M, 5 * M, 7 * M - 1, 4 * M - 1},
                   {1, 1, 1, 1, -1, -1});
  layout.m2 = segs({M, 3 * M, 4 * M, 6 * M, 2 * M, 5 * M}, {1, 1, 1, 1, 1, 1});
  return layout;
}

struct OpenLayout {
  std::vector<GroupSegment> n1, n2, m1, m2;  // n1, n2 in virtual scores
  LeftoverLayout leftovers;
  long long fl = 0;   // floor((1+eps) m)
  long long head = 0; // top of the fourth manipulator-2 group
  long long tail = 0; // lowest group score of manipulator 2
};

std::vector<long long> complement_sorted(long long lo, long long hi,
                                         const std::vector<GroupSegment>& segs,
                                         bool ascending) {
  std::set<long long> pool;
  for (long long v = lo; v <= hi; ++v) pool.insert(v);
  for (const auto& s : segs)
    for (int j = 0; j < s.length; ++j) pool.erase(s.start + static_cast<long long>(s.step) * j);
  std::vector<long long> out(pool.begin(), pool.end());
  if (!ascending) std::reverse(out.begin(), out.end());
  return out;
}

OpenLayout make_open_layout(int m, const Rational& eps, long long D, long long p,
                            long long R, int a1) {
  OpenLayout L;
  const long long M = m;
  const Rational w = Rational(1) + eps;
  L.fl = (w * rat(M)).floor();
  const int groups = static_cast<int>(2 * p + 3);
  auto first_of = [&](int j) { return static_cast<Cand>(j * M); };

  // Weighted voter: top block, the two lowest blocks, then a consecutive
  // descending run directly below the top block.
  L.n1.push_back({first_of(1), m, D, -1});
  L.n1.push_back({first_of(2), m, 2 * M, -1});
  L.n1.push_back({first_of(3), m, M, -1});
  for (int j = 4; j <= groups; ++j)
    L.n1.push_back({first_of(j), m, D - (j - 3) * M, -1});

  // Second non-manipulator and first manipulator: four lowest blocks, then
  // alternating offsets of m and floor((1+eps)m), out of phase with each
  // other so that each joint stretch covers floor((2+eps)m) scores.
  for (int j = 1; j <= 4 && j <= groups; ++j) {
    L.n2.push_back({first_of(j), m, j * M, 1});
    L.m1.push_back({first_of(j), m, j * M, 1});
  }
  long long n2_start = 4 * M, m1_start = 4 * M;
  for (int j = 5; j <= groups; ++j) {
    n2_start += (j % 2 == 1) ? M : L.fl;
    m1_start += (j % 2 == 1) ? L.fl : M;
    L.n2.push_back({first_of(j), m, n2_start, 1});
    L.m1.push_back({first_of(j), m, m1_start, 1});
  }

  // Second manipulator: the three highest blocks (the top one on group 2,
  // whose head must reach this voter's largest remaining score), then a
  // descending chain stepped by m+1.
  L.head = D + a1 - 6 * M + (eps * rat(M + 1)).floor();
  L.m2.push_back({first_of(1), m, D - M - 1, -1});
  if (groups >= 2) L.m2.push_back({first_of(2), m, D + M - 1, -1});
  if (groups >= 3) L.m2.push_back({first_of(3), m, D - 1, -1});
  for (int j = 4; j <= groups; ++j)
    L.m2.push_back({first_of(j), m, L.head - (j - 4) * (M + 1), -1});
  L.tail = L.head - (2 * p - 1) * (M + 1) - (M - 1);

  L.leftovers.first = static_cast<Cand>((groups + 1) * M);
  L.leftovers.count = static_cast<int>(R);
  for (long long v = 2 * M + R; v >= 2 * M + 1; --v) L.leftovers.n1.push_back(v);
  L.leftovers.n2 = complement_sorted(M, D + M - 1, L.n2, false);
  L.leftovers.m1 = complement_sorted(M, D + M - 1, L.m1, true);
  L.leftovers.m2 = complement_sorted(M, D + M - 1, L.m2, true);
  return L;
}

// Per-candidate scores implied by segments plus an optional leftover list.
std::map<Cand, long long> layout_scores(const std::vector<GroupSegment>& segs,
                                        const std::vector<long long>* leftover,
                                        Cand leftover_first) {
  std::map<Cand, long long> out;
  for (const auto& s : segs)
    for (int j = 0; j < s.length; ++j)
      out[s.first + j] = s.score_at(s.first + j);
  if (leftover)
    for (size_t j = 0; j < leftover->size(); ++j)
      out[leftover_first + static_cast<Cand>(j)] = (*leftover)[j];
  return out;
}

VirtualMap rank_pairs(const std::map<Cand, long long>& virt,
                      const std::set<long long>& available) {
  std::vector<long long> vs;
  vs.reserve(virt.size());
  for (const auto& [c, v] : virt) vs.push_back(v);
  std::sort(vs.rbegin(), vs.rend());
  VirtualMap out;
  auto it = available.rbegin();
  for (long long v : vs) out.push_back({v, *it++});
  return out;
}

void require(bool ok, const std::string& constraint) {
  if (!ok) throw ConstructionError("reduction constraint violated: " + constraint);
}

}  // namespace

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::map<Cand, long long> devirtualize(const std::map<Cand, long long>& virtual_assignment,
                                       const std::set<long long>& available) {
  if (virtual_assignment.size() != available.size())
    throw ValidationError("devirtualize: |assignment| != |available|");
  std::vector<std::pair<long long, Cand>> order;
  order.reserve(virtual_assignment.size());
  for (const auto& [c, v] : virtual_assignment) order.emplace_back(v, c);
  std::sort(order.rbegin(), order.rend());
  for (size_t i = 1; i < order.size(); ++i)
    if (order[i].first == order[i - 1].first)
      throw ValidationError("devirtualize: duplicate virtual score " +
                            std::to_string(order[i].first));
  std::map<Cand, long long> out;
  auto it = available.rbegin();
  for (const auto& [v, c] : order) {
    if (v < *it)
      throw ValidationError("devirtualize: rank domination violated at virtual " +
                            std::to_string(v));
    out[c] = *it++;
  }
  return out;
}

// ---------------------------------------------------------------------------
// w >= 3
// ---------------------------------------------------------------------------

ReductionArtifact reduce_w_ge3(const TwoNmtsInstance& instance, const Rational& w) {
  instance.validate();
  if (instance.variant != NmtsVariant::Standard)
    throw ValidationError("reduce_w_ge3: Standard instance required");
  if (w < Rational(3)) throw ValidationError("reduce_w_ge3: weight must be >= 3");

  const int m = instance.m;
  const auto& a = instance.a;
  const int z = static_cast<int>(((w + rat(2)) * rat(m)).ceil() + 1);
  const Cand target = z - 1;

  const long long v1star_u = ((w - rat(1)) * rat(m)).ceil() + 1;
  const long long v2star = ((w - rat(2)) * rat(m)).ceil() + a[0] - 2;
  const Rational v1star = w * rat(v1star_u);
  require(v1star_u >= 0 && v1star_u <= z - 1, "weighted voter target score in range");
  require(v1star_u < z - m, "weighted voter target score below the top block");
  require(v2star >= 0 && v2star <= z - 1, "second voter target score in range");

  std::vector<long long> n1_u(z, -1);
  std::vector<long long> n2(z, -1);
  n1_u[target] = v1star_u;
  n2[target] = v2star;

  std::vector<Rational> dvec, pvec;
  for (int i = 1; i <= m; ++i) {
    n1_u[i - 1] = z - i;
    const Rational v1i = w * rat(z - i);
    const Rational di = v1star + rat(v2star) + rat(2LL * z) - rat(a[m - i]);
    const long long v2i = (di - v1i).floor();
    if (v2i < 0 || v2i > z - 1)
      throw ConstructionError("reduce_w_ge3: constructed second-voter score " +
                              std::to_string(v2i) + " for candidate index " +
                              std::to_string(i) + " is outside [0," +
                              std::to_string(z - 1) + "]");
    n2[i - 1] = v2i;
    dvec.push_back(di);
    pvec.push_back(v1i + rat(v2i));
  }

  // The proof never rules out collisions among the constructed second-voter
  // scores; reject such parameter combinations instead of repairing them.
  {
    std::map<long long, std::string> holder;
    holder[v2star] = "target";
    for (int i = 1; i <= m; ++i) {
      auto [it, fresh] = holder.emplace(n2[i - 1], "c" + std::to_string(i));
      if (!fresh)
        throw ConstructionError(
            "reduce_w_ge3: duplicate second-voter score " + std::to_string(n2[i - 1]) +
            " shared by " + it->second + " and c" + std::to_string(i));
    }
  }

  std::set<long long> n1_left, n2_left;
  for (long long s = 0; s < z; ++s) {
    n1_left.insert(s);
    n2_left.insert(s);
  }
  for (long long s : n1_u)
    if (s >= 0) n1_left.erase(s);
  for (long long s : n2)
    if (s >= 0) n2_left.erase(s);

  // Remaining weighted scores descending, remaining plain scores ascending.
  {
    auto it = n1_left.rbegin();
    for (Cand c = m; c < z - 1; ++c) n1_u[c] = *it++;
    auto jt = n2_left.begin();
    for (Cand c = m; c < z - 1; ++c) n2[c] = *jt++;
  }

  ScoreAssignment s1(z), s2(z);
  for (Cand c = 0; c < z; ++c) {
    s1[c] = w * rat(n1_u[c]);
    s2[c] = rat(n2[c]);
  }

  ReductionArtifact artifact{
      Profile{z, w, ballot_from_scores(s1, w), ballot_from_scores(s2, Rational(1)),
              target, std::nullopt, std::nullopt},
      instance,
      w,
      v1star + rat(v2star) + rat(2LL * (z - 1)),
      pvec,
      dvec,
      {},
      {},
      {},
      {}};
  artifact.groups["m1"] = {{static_cast<Cand>(m), z - 1 - m, m, 1}};
  artifact.groups["m2"] = {{static_cast<Cand>(m), z - 1 - m, m, 1}};
  artifact.params = {ReductionKind::WGe3, m, z, w, Rational(0), 0, 0, 0};
  return artifact;
}

// ---------------------------------------------------------------------------
// w = 2
// ---------------------------------------------------------------------------

ReductionArtifact reduce_w_eq2(const TwoNmtsInstance& instance) {
  instance.validate();
  if (instance.variant != NmtsVariant::Standard)
    throw ValidationError("reduce_w_eq2: Standard instance required");

  const int m = instance.m;
  const auto& a = instance.a;
  const long long M = m;
  const int z = 7 * m + 1;
  const Cand target = z - 1;
  const Rational w(2);

  std::vector<long long> n1_u(z, -1), n2(z, -1);
  n1_u[target] = 2 * M;
  n2[target] = M + a[0];

  std::vector<Rational> pvec;
  for (int i = 1; i <= m; ++i) {
    n1_u[i - 1] = z - i;
    n2[i - 1] = z + 2LL * i - a[m - i] - 2 * M + a[0] - 1;
    require(n2[i - 1] > 3 * M && n2[i - 1] <= 7 * M,
            "second voter scores for the matched block stay in (3m, 7m]");
    pvec.push_back(rat(2LL * (z - i)) + rat(n2[i - 1]));
  }

  const Eq2Layout layout = make_eq2_layout(m);
  for (const auto& s : layout.n1)
    for (int j = 0; j < s.length; ++j) n1_u[s.first + j] = s.score_at(s.first + j);

  std::map<Cand, long long> n2_virtual = layout_scores(layout.n2, nullptr, 0);
  std::set<long long> available;
  for (long long s = 0; s < z; ++s) available.insert(s);
  for (Cand c = 0; c < z; ++c)
    if (n2[c] >= 0) available.erase(n2[c]);
  require(available.size() == n2_virtual.size(), "virtual and available sizes agree");

  const auto actual = devirtualize(n2_virtual, available);
  for (const auto& [c, s] : actual) n2[c] = s;

  ScoreAssignment s1(z), s2(z);
  for (Cand c = 0; c < z; ++c) {
    s1[c] = w * rat(n1_u[c]);
    s2[c] = rat(n2[c]);
  }

  ReductionArtifact artifact{
      Profile{z, w, ballot_from_scores(s1, w), ballot_from_scores(s2, Rational(1)),
              target, std::nullopt, std::nullopt},
      instance,
      w,
      rat(19 * M + a[0]),
      pvec,
      {},
      {},
      {},
      {},
      {}};
  artifact.groups["n1"] = layout.n1;
  artifact.groups["n2"] = layout.n2;
  artifact.groups["m1"] = layout.m1;
  artifact.groups["m2"] = layout.m2;
  artifact.virtual_maps["n2"] = rank_pairs(n2_virtual, available);
  artifact.params = {ReductionKind::WEq2, m, z, w, Rational(0), 0, 0, 0};
  return artifact;
}

// ---------------------------------------------------------------------------
// 1 < w < 3
// ---------------------------------------------------------------------------

ReductionArtifact reduce_w_open(const TwoNmtsInstance& instance, const Rational& w,
                                long long p) {
  instance.validate();
  if (instance.variant != NmtsVariant::Restricted)
    throw ValidationError("reduce_w_open: Restricted instance required");
  const Rational eps = w - Rational(1);
  if (!(eps > Rational(0)) || !(eps < Rational(2)))
    throw ValidationError("reduce_w_open: weight must lie in (1, 3)");
  const int m = instance.m;
  if (!(m > 3) || !(eps * rat(m) > Rational(3)))
    throw ValidationError("reduce_w_open: m must exceed max(3, 3/eps)");
  if (p < 1) throw ValidationError("reduce_w_open: p must be positive");

  const auto& a = instance.a;
  const long long M = m;
  const long long D = ((Rational(2) + eps) * rat(M)).floor() * p + 3 * M;
  const long long R = D - (2 * p + 3) * M;
  const int z = static_cast<int>(D + M + 1);
  const Cand target = z - 1;

  const Rational x = w * rat(D + 1) + rat(a[0]) - rat(D + M);
  const long long v1star_u = (x / w).floor();
  require(v1star_u >= 0 && v1star_u <= D, "weighted voter target score in range");
  const Rational v1star = w * rat(v1star_u);
  const long long v2star = (x - v1star).ceil();
  require(v2star >= 0 && v2star <= z - 1, "second voter target score in range");
  const Rational fstar = v1star + rat(v2star) + rat(2 * (D + M));

  std::vector<long long> n1_u(z, -1), n2(z, -1);
  n1_u[target] = v1star_u;
  n2[target] = v2star;
  std::vector<Rational> pvec;
  for (int i = 1; i <= m; ++i) {
    n1_u[i - 1] = D + i;
    const Rational v1i = w * rat(D + i);
    const long long v2i = i == 1 ? D + M : (fstar - v1i - rat(a[i - 1])).floor();
    require(v2i >= 0 && v2i <= z - 1, "second voter scores for the matched block in range");
    n2[i - 1] = v2i;
    pvec.push_back(v1i + rat(v2i));
  }
  {
    std::set<long long> seen{v2star};
    for (int i = 1; i <= m; ++i)
      require(seen.insert(n2[i - 1]).second, "second voter scores pairwise distinct");
  }

  const OpenLayout layout = make_open_layout(m, eps, D, p, R, a[0]);
  require(layout.head <= D - 2 * M - 1,
          "gap between the fourth and first second-manipulator groups");
  require(layout.tail >= M, "lowest second-manipulator group score at least m");
  for (const auto& segs : {layout.n2, layout.m1, layout.m2})
    for (const auto& s : segs)
      require(s.min_score() >= M && s.max_score() <= D + M - 1,
              "group blocks inside the remaining score pool");

  // Weighted voter: virtual scores {1..D} onto {0..D} minus its target score.
  std::map<Cand, long long> n1_virtual =
      layout_scores(layout.n1, &layout.leftovers.n1, layout.leftovers.first);
  std::set<long long> n1_avail;
  for (long long s = 0; s <= D; ++s) n1_avail.insert(s);
  n1_avail.erase(v1star_u);
  require(n1_avail.size() == n1_virtual.size(), "weighted voter pool size");
  for (const auto& [c, s] : devirtualize(n1_virtual, n1_avail)) n1_u[c] = s;

  // Second voter: virtual scores {m..D+m-1} onto everything unused.
  std::map<Cand, long long> n2_virtual =
      layout_scores(layout.n2, &layout.leftovers.n2, layout.leftovers.first);
  std::set<long long> n2_avail;
  for (long long s = 0; s < z; ++s) n2_avail.insert(s);
  for (Cand c = 0; c < z; ++c)
    if (n2[c] >= 0) n2_avail.erase(n2[c]);
  require(n2_avail.size() == n2_virtual.size(), "second voter pool size");
  for (const auto& [c, s] : devirtualize(n2_virtual, n2_avail)) n2[c] = s;

  ScoreAssignment s1(z), s2(z);
  for (Cand c = 0; c < z; ++c) {
    s1[c] = w * rat(n1_u[c]);
    s2[c] = rat(n2[c]);
  }

  ReductionArtifact artifact{
      Profile{z, w, ballot_from_scores(s1, w), ballot_from_scores(s2, Rational(1)),
              target, std::nullopt, std::nullopt},
      instance,
      w,
      fstar,
      pvec,
      {},
      {},
      {},
      layout.leftovers,
      {}};
  artifact.groups["n1"] = layout.n1;
  artifact.groups["n2"] = layout.n2;
  artifact.groups["m1"] = layout.m1;
  artifact.groups["m2"] = layout.m2;
  artifact.virtual_maps["n1"] = rank_pairs(n1_virtual, n1_avail);
  artifact.virtual_maps["n2"] = rank_pairs(n2_virtual, n2_avail);
  artifact.params = {ReductionKind::WOpen, m, z, w, eps, D, p, R};

  const ValidationReport report = validate_reduction(artifact);
  if (!report.passed) {
    for (const auto& c : report.checks)
      if (!c.passed)
        throw ConstructionError("reduce_w_open: p=" + std::to_string(p) +
                                " fails check '" + c.name + "' (" + c.lhs + " vs " +
                                c.rhs + ")");
  }
  return artifact;
}

long long choose_p(int m, const Rational& eps, long long p_cap) {
  if (!(m > 3) || !(eps * rat(m) > Rational(3)))
    throw ValidationError("choose_p: m must exceed max(3, 3/eps)");
  // Worst case over instances of this size: every constraint's slack is
  // non-decreasing in a_1, so probe the lexicographically least instance
  // with a_1 = 0.
  TwoNmtsInstance worst;
  worst.m = m;
  worst.variant = NmtsVariant::Restricted;
  long long remaining = static_cast<long long>(m) * (m - 1);
  const long long hi = 2 * (m - 1);
  for (int slots_after = m - 1; slots_after >= 0; --slots_after) {
    const long long least = std::max<long long>(0, remaining - hi * slots_after);
    worst.a.push_back(static_cast<int>(least));
    remaining -= least;
  }
  worst.validate();

  for (long long p = 1; p <= p_cap; ++p) {
    try {
      reduce_w_open(worst, Rational(1) + eps, p);
      return p;
    } catch (const ConstructionError&) {
      continue;
    }
  }
  throw LimitError("choose_p: no feasible p up to cap " + std::to_string(p_cap));
}

// ---------------------------------------------------------------------------
// Lifting
// ---------------------------------------------------------------------------

std::pair<Ballot, Ballot> lift_solution(const ReductionArtifact& artifact,
                                        const NmtsSolution& solution) {
  if (!verify_solution(artifact.source, solution))
    throw ValidationError("lift_solution: solution does not solve the source instance");
  const int z = artifact.params.z;
  const int m = artifact.params.m;

  std::vector<long long> t1(z, -1), t2(z, -1);
  t1[z - 1] = t2[z - 1] = z - 1;
  if (artifact.source.variant == NmtsVariant::Standard) {
    // Candidate c_i's budget is a_{m+1-i} - 2, so position m+1-i of the
    // solution funds candidate i, shifted from {1..m} down to {0..m-1}.
    for (int i = 1; i <= m; ++i) {
      t1[i - 1] = solution.p1[m - i] - 1;
      t2[i - 1] = solution.p2[m - i] - 1;
    }
  } else {
    for (int i = 1; i <= m; ++i) {
      t1[i - 1] = solution.p1[i - 1];
      t2[i - 1] = solution.p2[i - 1];
    }
  }
  auto fill = [&](std::vector<long long>& t, const std::string& voter,
                  const std::vector<long long>& leftover) {
    auto it = artifact.groups.find(voter);
    if (it != artifact.groups.end())
      for (const auto& s : it->second)
        for (int j = 0; j < s.length; ++j) t[s.first + j] = s.score_at(s.first + j);
    for (size_t j = 0; j < leftover.size(); ++j)
      t[artifact.leftovers.first + static_cast<Cand>(j)] = leftover[j];
  };
  fill(t1, "m1", artifact.leftovers.m1);
  fill(t2, "m2", artifact.leftovers.m2);

  ScoreAssignment s1(z), s2(z);
  for (Cand c = 0; c < z; ++c) {
    if (t1[c] < 0 || t2[c] < 0)
      throw ConstructionError("lift_solution: layout leaves candidate " +
                              std::to_string(c) + " unscored");
    s1[c] = rat(t1[c]);
    s2[c] = rat(t2[c]);
  }
  return {ballot_from_scores(s1, Rational(1)), ballot_from_scores(s2, Rational(1))};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct Scores {
  int z = 0;
  Rational w;
  std::vector<Rational> v1;       // weighted
  std::vector<long long> v1u;     // unweighted
  std::vector<long long> v2;
};

Scores extract(const ReductionArtifact& art) {
  Scores s;
  s.z = art.profile.z;
  s.w = art.profile.weight;
  for (Cand c = 0; c < s.z; ++c) {
    s.v1u.push_back(art.profile.n1.points_for(c));
    s.v1.push_back(s.w * rat(s.v1u.back()));
    s.v2.push_back(art.profile.n2.points_for(c));
  }
  return s;
}

// Structural prerequisites; the remaining checks only make sense when these
// hold, so a failure here short-circuits the report.
bool shape_checks(Recorder& rec, const ReductionArtifact& art, const Scores& s) {
  bool shape_ok = true;
  std::string shape_msg = "ok";
  try {
    art.profile.validate();
    art.source.validate();
  } catch (const Error& e) {
    shape_ok = false;
    shape_msg = e.what();
  }
  rec.add("profile_shape", shape_ok, shape_msg, "well-formed");
  rec.add("target_position", art.profile.target == s.z - 1,
          std::to_string(art.profile.target), std::to_string(s.z - 1));
  rec.add("weight_consistency", art.w == s.w && art.params.w == s.w, art.w.str(),
          s.w.str());
  rec.add("z_consistency", art.params.z == s.z, std::to_string(art.params.z),
          std::to_string(s.z));
  rec.add("m_consistency",
          art.params.m == art.source.m && art.params.m >= 1 && art.params.m < s.z,
          std::to_string(art.params.m), std::to_string(art.source.m));
  const int m = art.params.m;
  rec.add("pair_sum_size", static_cast<int>(art.pvec.size()) == m,
          std::to_string(art.pvec.size()), std::to_string(m));
  const size_t dwant = art.params.kind == ReductionKind::WGe3 ? m : 0;
  rec.add("window_gap_size", art.dvec.size() == dwant, std::to_string(art.dvec.size()),
          std::to_string(dwant));
  return rec.all_passed();
}

void common_checks(Recorder& rec, const ReductionArtifact& art, const Scores& s) {
  const Rational fstar_expected =
      s.v1[s.z - 1] + rat(s.v2[s.z - 1]) + rat(2LL * (s.z - 1));
  rec.add("fstar_consistency", art.fstar == fstar_expected, art.fstar.str(),
          fstar_expected.str());
  rec.family("pair_sum_consistency", art.params.m,
             [&](int i, std::string& lhs, std::string& rhs) {
               lhs = art.pvec[i].str();
               rhs = (s.v1[i] + rat(s.v2[i])).str();
               return lhs == rhs;
             });
}

void check_virtual_map(Recorder& rec, const std::string& name, const VirtualMap& vm,
                       const std::map<Cand, long long>& virt,
                       const std::set<long long>& available) {
  const VirtualMap expected = rank_pairs(virt, available);
  rec.add(name + "_valid", vm == expected, "stored map", "rank map of available scores");
  rec.family(name + "_dominance", static_cast<int>(vm.size()),
             [&](int i, std::string& lhs, std::string& rhs) {
               lhs = std::to_string(vm[i][1]);
               rhs = std::to_string(vm[i][0]);
               return vm[i][1] <= vm[i][0];
             });
}

void w_ge3_checks(Recorder& rec, const ReductionArtifact& art, const Scores& s) {
  const int m = art.params.m;
  const int z = s.z;
  const auto& a = art.source.a;
  const Rational w = s.w;

  rec.add("z_value", z == ((w + rat(2)) * rat(m)).ceil() + 1, std::to_string(z),
          ((w + rat(2)) * rat(m) + rat(1)).str() + " ceiled");

  const Rational v1star = s.v1[z - 1];
  const long long v2star = s.v2[z - 1];
  rec.add("vstar_formulas",
          v1star == w * rat(((w - rat(1)) * rat(m)).ceil() + 1) &&
              v2star == ((w - rat(2)) * rat(m)).ceil() + a[0] - 2,
          v1star.str() + "," + std::to_string(v2star), "construction formulas");

  rec.family("row_formulas", m, [&](int i, std::string& lhs, std::string& rhs) {
    lhs = s.v1[i].str();
    rhs = (w * rat(z - (i + 1))).str();
    return s.v1[i] == w * rat(z - (i + 1));
  });

  rec.family("window_gap_consistency", m, [&](int i, std::string& lhs, std::string& rhs) {
    const Rational expected = v1star + rat(v2star) + rat(2LL * z) - rat(a[m - 1 - i]);
    lhs = art.dvec[i].str();
    rhs = expected.str();
    return art.dvec[i] == expected;
  });

  rec.family("floor_window", m, [&](int i, std::string& lhs, std::string& rhs) {
    const Rational pair = s.v1[i] + rat(s.v2[i]);
    lhs = pair.str();
    rhs = "(" + (art.dvec[i] - rat(1)).str() + "," + art.dvec[i].str() + "]";
    return art.dvec[i] - rat(1) < pair && pair <= art.dvec[i];
  });

  const Rational bound = v1star + rat(v2star) + rat(2LL * z) - rat(2);
  rec.family("budget_window", m, [&](int i, std::string& lhs, std::string& rhs) {
    const Rational pair = s.v1[i] + rat(s.v2[i]);
    lhs = (pair + rat(a[m - 1 - i])).str();
    rhs = bound.str() + "+2";
    return pair + rat(a[m - 1 - i]) - rat(2) <= bound &&
           pair + rat(a[m - 1 - i]) - rat(1) > bound;
  });

  const Rational cap = (w * w + rat(2) * w + rat(2)) * rat(m) + w + rat(a[0]) - rat(2);
  const Rational head = w * rat(((w + rat(1)) * rat(m)).ceil()) + rat(3LL * m);
  rec.add("head_total_bound",
          head <= (w * w + w + rat(3)) * rat(m) + w &&
              (w * w + w + rat(3)) * rat(m) + w <= cap,
          head.str(), cap.str());
  const Rational tail_exact = w + rat(3LL * ((w + rat(2)) * rat(m)).ceil() - 3);
  rec.add("tail_total_bound",
          tail_exact < (rat(3) * w + rat(6)) * rat(m) + w &&
              (rat(3) * w + rat(6)) * rat(m) + w <= cap,
          tail_exact.str(), cap.str());
  rec.add("fstar_lower_bound", art.fstar >= cap, art.fstar.str(), cap.str());

  rec.family("tail_totals", z - 1 - m, [&](int k, std::string& lhs, std::string& rhs) {
    const Cand c = m + k;
    const Rational total = s.v1[c] + rat(s.v2[c]) + rat(2LL * c);
    lhs = total.str();
    rhs = art.fstar.str();
    return total <= art.fstar;
  });

  rec.family("tail_order", z - 2 - m, [&](int k, std::string& lhs, std::string& rhs) {
    const Cand c = m + k;
    lhs = std::to_string(s.v1u[c]) + "," + std::to_string(s.v2[c]);
    rhs = "n1 strictly decreasing, n2 strictly increasing";
    return s.v1u[c] > s.v1u[c + 1] && s.v2[c] < s.v2[c + 1];
  });

  const std::vector<GroupSegment> expected{{static_cast<Cand>(m), z - 1 - m, m, 1}};
  auto has = [&](const char* k) {
    auto it = art.groups.find(k);
    return it != art.groups.end() && it->second == expected;
  };
  rec.add("manipulator_layout", has("m1") && has("m2"), "stored layout",
          "single ascending run from m");
}

void w_eq2_checks(Recorder& rec, const ReductionArtifact& art, const Scores& s) {
  const int m = art.params.m;
  const int z = s.z;
  const long long M = m;
  const auto& a = art.source.a;

  rec.add("z_value", z == 7 * m + 1, std::to_string(z), std::to_string(7 * m + 1));
  rec.add("fstar_value",
          art.fstar == rat(19 * M + a[0]) &&
              art.fstar == rat(3LL * z + a[0] - 3 - 2 * M),
          art.fstar.str(), std::to_string(19 * M + a[0]));
  rec.add("vstar_values",
          s.v1[z - 1] == rat(4 * M) && s.v2[z - 1] == M + a[0],
          s.v1[z - 1].str() + "," + std::to_string(s.v2[z - 1]),
          std::to_string(4 * M) + "," + std::to_string(M + a[0]));

  rec.family("row_formulas", m, [&](int i, std::string& lhs, std::string& rhs) {
    const long long want2 = z + 2LL * (i + 1) - a[m - 1 - i] - 2 * M + a[0] - 1;
    lhs = s.v1[i].str() + "," + std::to_string(s.v2[i]);
    rhs = rat(2LL * (z - (i + 1))).str() + "," + std::to_string(want2);
    return s.v1[i] == rat(2LL * (z - (i + 1))) && s.v2[i] == want2;
  });

  Rational psum(0);
  for (const auto& pi : art.pvec) psum += pi;
  const Rational psum_want = rat(M) * rat(3LL * z + a[0] - 2 - 3 * M);
  rec.add("pair_sum_total", psum == psum_want, psum.str(), psum_want.str());
  rec.add("counting_identity", psum + rat(M * (M - 1)) == rat(M) * art.fstar,
          (psum + rat(M * (M - 1))).str(), (rat(M) * art.fstar).str());

  rec.family("budget_exact", m, [&](int i, std::string& lhs, std::string& rhs) {
    lhs = (art.fstar - art.pvec[i]).str();
    rhs = std::to_string(a[m - 1 - i] - 2);
    return art.fstar - art.pvec[i] == rat(a[m - 1 - i] - 2);
  });

  const Eq2Layout layout = make_eq2_layout(m);
  auto seg_eq = [&](const char* key, const std::vector<GroupSegment>& want) {
    auto it = art.groups.find(key);
    return it != art.groups.end() && it->second == want;
  };
  rec.add("group_layout",
          seg_eq("n1", layout.n1) && seg_eq("n2", layout.n2) &&
              seg_eq("m1", layout.m1) && seg_eq("m2", layout.m2),
          "stored layout", "table layout");

  // n1's runs are actual scores; check them against the ballot.
  rec.family("n1_group_scores", 6 * m, [&](int k, std::string& lhs, std::string& rhs) {
    const Cand c = m + k;
    const auto& seg = layout.n1[k / m];
    lhs = std::to_string(s.v1u[c]);
    rhs = std::to_string(seg.score_at(c));
    return s.v1u[c] == seg.score_at(c);
  });

  std::map<Cand, long long> n2_virtual = layout_scores(layout.n2, nullptr, 0);
  std::set<long long> available;
  for (long long v = 0; v < z; ++v) available.insert(v);
  available.erase(s.v2[z - 1]);
  for (int i = 0; i < m; ++i) available.erase(s.v2[i]);
  auto vm_it = art.virtual_maps.find("n2");
  if (vm_it == art.virtual_maps.end() || available.size() != n2_virtual.size()) {
    rec.add("virtual_map_valid", false, "missing or mis-sized map", "");
    return;
  }
  check_virtual_map(rec, "virtual_map", vm_it->second, n2_virtual, available);

  std::map<long long, long long> vm_lookup;
  for (const auto& pr : vm_it->second) vm_lookup[pr[0]] = pr[1];
  rec.family("n2_group_scores", 6 * m, [&](int k, std::string& lhs, std::string& rhs) {
    const Cand c = m + k;
    const long long virt = n2_virtual.at(c);
    lhs = std::to_string(s.v2[c]);
    auto found = vm_lookup.find(virt);
    rhs = found == vm_lookup.end() ? "unmapped" : std::to_string(found->second);
    return found != vm_lookup.end() && s.v2[c] == found->second;
  });

  rec.family("devirtualization_dominance", 6 * m,
             [&](int k, std::string& lhs, std::string& rhs) {
               const Cand c = m + k;
               lhs = std::to_string(s.v2[c]);
               rhs = std::to_string(n2_virtual.at(c));
               return s.v2[c] <= n2_virtual.at(c);
             });

  std::map<Cand, long long> m1sc = layout_scores(layout.m1, nullptr, 0);
  std::map<Cand, long long> m2sc = layout_scores(layout.m2, nullptr, 0);
  rec.family("group_virtual_totals_bound", 6 * m,
             [&](int k, std::string& lhs, std::string& rhs) {
               const Cand c = m + k;
               const long long total = 2 * s.v1u[c] + n2_virtual.at(c) +
                                       m1sc.at(c) + m2sc.at(c);
               lhs = std::to_string(total);
               rhs = std::to_string(19 * M + 2);
               return total <= 19 * M + 2 && rat(total) <= art.fstar;
             });
}

void w_open_checks(Recorder& rec, const ReductionArtifact& art, const Scores& s) {
  const int m = art.params.m;
  const int z = s.z;
  const long long M = m;
  const auto& a = art.source.a;
  const Rational w = s.w;
  const Rational eps = w - Rational(1);
  const long long D = art.params.D;
  const long long p = art.params.p;
  const long long R = art.params.R;

  rec.add("params_consistency",
          art.params.eps == eps &&
              D == ((Rational(2) + eps) * rat(M)).floor() * p + 3 * M &&
              R == D - (2 * p + 3) * M && z == D + M + 1,
          "D=" + std::to_string(D) + ",R=" + std::to_string(R) + ",z=" + std::to_string(z),
          "derived from (m, eps, p)");
  rec.add("m_precondition", m > 3 && eps * rat(M) > Rational(3), std::to_string(m),
          "> max(3, 3/eps)");

  const Rational x = w * rat(D + 1) + rat(a[0]) - rat(D + M);
  const Rational v1star = s.v1[z - 1];
  const long long v2star = s.v2[z - 1];
  rec.add("vstar_floor_ceil",
          v1star == w * rat((x / w).floor()) && v2star == (x - v1star).ceil(),
          v1star.str() + "," + std::to_string(v2star), "floor/ceil split of " + x.str());

  rec.family("row_formulas", m, [&](int i, std::string& lhs, std::string& rhs) {
    const Rational v1_want = w * rat(D + i + 1);
    const long long v2_want =
        i == 0 ? D + M : (art.fstar - v1_want - rat(a[i])).floor();
    lhs = s.v1[i].str() + "," + std::to_string(s.v2[i]);
    rhs = v1_want.str() + "," + std::to_string(v2_want);
    return s.v1[i] == v1_want && s.v2[i] == v2_want;
  });

  rec.family("budget_window", m, [&](int i, std::string& lhs, std::string& rhs) {
    const Rational floor_total = s.v1[i] + rat(s.v2[i]) + rat(a[i]);
    lhs = floor_total.str();
    rhs = art.fstar.str();
    return floor_total <= art.fstar && art.fstar < floor_total + rat(1);
  });

  {
    bool distinct = v1star < s.v1[0];
    for (int i = 2; i < m; ++i) distinct = distinct && s.v2[i] < s.v2[i - 1];
    if (m >= 2) distinct = distinct && s.v2[1] < s.v2[0];
    for (int i = 0; i < m; ++i) distinct = distinct && v2star != s.v2[i];
    rec.add("score_distinctness", distinct, "weighted target below block, v2 strictly decreasing",
            "no duplicates");
  }

  const OpenLayout layout = make_open_layout(m, eps, D, p, R, a[0]);
  auto seg_eq = [&](const char* key, const std::vector<GroupSegment>& want) {
    auto it = art.groups.find(key);
    return it != art.groups.end() && it->second == want;
  };
  rec.add("group_layout",
          seg_eq("n1", layout.n1) && seg_eq("n2", layout.n2) &&
              seg_eq("m1", layout.m1) && seg_eq("m2", layout.m2) &&
              art.leftovers == layout.leftovers,
          "stored layout", "derived layout");

  const int groups = static_cast<int>(2 * p + 3);
  std::map<Cand, long long> n1v =
      layout_scores(layout.n1, &layout.leftovers.n1, layout.leftovers.first);
  std::map<Cand, long long> n2v =
      layout_scores(layout.n2, &layout.leftovers.n2, layout.leftovers.first);
  std::map<Cand, long long> m1sc =
      layout_scores(layout.m1, &layout.leftovers.m1, layout.leftovers.first);
  std::map<Cand, long long> m2sc =
      layout_scores(layout.m2, &layout.leftovers.m2, layout.leftovers.first);

  auto head_total = [&](int g) {
    const Cand c = layout.n1[static_cast<size_t>(g - 1)].first;
    return w * rat(n1v.at(c)) + rat(n2v.at(c)) + rat(m1sc.at(c)) + rat(m2sc.at(c));
  };

  const Rational h1_want = (Rational(2) + eps) * rat(D) + rat(M - 1);
  rec.add("group_head_g1", head_total(1) == h1_want, head_total(1).str(), h1_want.str());
  const Rational h2_want = (rat(7) + rat(2) * eps) * rat(M) + rat(D - 1);
  rec.add("group_head_g2", head_total(2) == h2_want, head_total(2).str(), h2_want.str());
  const Rational h4_want = (Rational(2) + eps) * rat(D) - w * rat(M) + rat(2 * M) +
                           rat(a[0]) + rat((eps * rat(M + 1)).floor());
  rec.add("group_head_g4", head_total(4) == h4_want, head_total(4).str(), h4_want.str());

  rec.family("group_head_recurrence", groups >= 5 ? groups - 4 : 0,
             [&](int k, std::string& lhs, std::string& rhs) {
               const int g = 5 + k;
               const Rational want =
                   head_total(g - 1) - w * rat(M) + rat(layout.fl) - rat(1);
               lhs = head_total(g).str();
               rhs = want.str();
               return head_total(g) == want;
             });

  rec.family("group_totals_bound", groups * m,
             [&](int k, std::string& lhs, std::string& rhs) {
               const Cand c = m + k;
               const Rational total =
                   w * rat(n1v.at(c)) + rat(n2v.at(c)) + rat(m1sc.at(c)) + rat(m2sc.at(c));
               lhs = total.str();
               rhs = art.fstar.str();
               return total <= art.fstar;
             });

  rec.add("lowest_group_score", layout.tail >= M, std::to_string(layout.tail),
          ">= " + std::to_string(M));
  long long m1_top = 0;
  for (const auto& seg : layout.m1) m1_top = std::max(m1_top, seg.max_score());
  rec.add("top_remaining_score", m1_top == D + M - 1, std::to_string(m1_top),
          std::to_string(D + M - 1));

  rec.family("leftover_pair_sum", static_cast<int>(R),
             [&](int i, std::string& lhs, std::string& rhs) {
               const long long sum = layout.leftovers.n2[i] + layout.leftovers.m1[i];
               lhs = std::to_string(sum);
               rhs = std::to_string(D + 6 * M - 1);
               return sum == D + 6 * M - 1;
             });

  const Rational leftover_head =
      w * rat(2 * M + R) + rat(D + 6 * M - 1) + rat(D - 2 * M - R);
  rec.add("leftover_head_bound", leftover_head <= art.fstar, leftover_head.str(),
          art.fstar.str());
  rec.family("leftover_total_bound", static_cast<int>(R),
             [&](int i, std::string& lhs, std::string& rhs) {
               const Cand c = layout.leftovers.first + i;
               const Rational total =
                   w * rat(n1v.at(c)) + rat(n2v.at(c)) + rat(m1sc.at(c)) + rat(m2sc.at(c));
               lhs = total.str();
               rhs = art.fstar.str();
               return total <= art.fstar;
             });

  // Manipulator pools must cover {m .. D+m-1} exactly.
  {
    bool cover = true;
    for (const auto& scores : {m1sc, m2sc}) {
      std::set<long long> seen;
      for (const auto& [c, v] : scores) seen.insert(v);
      cover = cover && static_cast<long long>(seen.size()) == D &&
              *seen.begin() == M && *seen.rbegin() == D + M - 1;
    }
    rec.add("manipulator_score_cover", cover, "group + leftover scores",
            "{m .. D+m-1}");
  }

  // Virtual maps and the ballots they produce.
  std::set<long long> n1_avail;
  for (long long v = 0; v <= D; ++v) n1_avail.insert(v);
  n1_avail.erase(s.v1u[z - 1]);
  std::set<long long> n2_avail;
  for (long long v = 0; v < z; ++v) n2_avail.insert(v);
  n2_avail.erase(v2star);
  for (int i = 0; i < m; ++i) n2_avail.erase(s.v2[i]);

  auto vm1 = art.virtual_maps.find("n1");
  auto vm2 = art.virtual_maps.find("n2");
  if (vm1 == art.virtual_maps.end() || vm2 == art.virtual_maps.end() ||
      n1_avail.size() != n1v.size() || n2_avail.size() != n2v.size()) {
    rec.add("virtual_map_n1_valid", false, "missing or mis-sized map", "");
    return;
  }
  check_virtual_map(rec, "virtual_map_n1", vm1->second, n1v, n1_avail);
  check_virtual_map(rec, "virtual_map_n2", vm2->second, n2v, n2_avail);

  std::map<long long, long long> lk1, lk2;
  for (const auto& pr : vm1->second) lk1[pr[0]] = pr[1];
  for (const auto& pr : vm2->second) lk2[pr[0]] = pr[1];
  rec.family("profile_matches_layout", static_cast<int>(D),
             [&](int k, std::string& lhs, std::string& rhs) {
               const Cand c = m + k;
               auto f1 = lk1.find(n1v.at(c));
               auto f2 = lk2.find(n2v.at(c));
               lhs = std::to_string(s.v1u[c]) + "," + std::to_string(s.v2[c]);
               if (f1 == lk1.end() || f2 == lk2.end()) {
                 rhs = "unmapped";
                 return false;
               }
               rhs = std::to_string(f1->second) + "," + std::to_string(f2->second);
               return s.v1u[c] == f1->second && s.v2[c] == f2->second;
             });
}

}  // namespace

ValidationReport validate_reduction(const ReductionArtifact& artifact) {
  Recorder rec;
  const Scores s = extract(artifact);
  if (shape_checks(rec, artifact, s)) {
    common_checks(rec, artifact, s);
    switch (artifact.params.kind) {
      case ReductionKind::WGe3:
        w_ge3_checks(rec, artifact, s);
        break;
      case ReductionKind::WEq2:
        w_eq2_checks(rec, artifact, s);
        break;
      case ReductionKind::WOpen:
        w_open_checks(rec, artifact, s);
        break;
    }
  }
  ValidationReport report;
  report.checks = std::move(rec.checks);
  report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const ValidationCheck& c) { return c.passed; });
  return report;
}

}  // namespace bordaforge
