#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bordaforge/election.hpp"
#include "bordaforge/nmts.hpp"

namespace bordaforge {

// Which hardness construction produced an artifact. Candidate convention in
// every construction: c_i maps to id i-1 and the target maps to id z-1.
enum class ReductionKind { WGe3, WEq2, WOpen };

// An arithmetic run of scores over consecutive candidates: candidate
// first+j receives start + step*j. Scores are in unweighted units for n1
// and in virtual units for voters that carry a virtual map.
struct GroupSegment {
  Cand first = 0;
  int length = 0;
  long long start = 0;
  int step = 1;

  long long score_at(Cand c) const { return start + static_cast<long long>(step) * (c - first); }
  long long min_score() const { return step > 0 ? start : start - (length - 1); }
  long long max_score() const { return step > 0 ? start + (length - 1) : start; }

  friend bool operator==(const GroupSegment& a, const GroupSegment& b) {
    return a.first == b.first && a.length == b.length && a.start == b.start &&
           a.step == b.step;
  }
};

// Score lists for the candidates left outside the per-group runs
// (WOpen only). Lists are positional: entry j belongs to candidate first+j.
struct LeftoverLayout {
  Cand first = 0;
  int count = 0;
  std::vector<long long> n1;  // virtual unweighted, descending
  std::vector<long long> n2;  // virtual, descending
  std::vector<long long> m1;  // actual, ascending
  std::vector<long long> m2;  // actual, ascending

  friend bool operator==(const LeftoverLayout& a, const LeftoverLayout& b) {
    return a.first == b.first && a.count == b.count && a.n1 == b.n1 &&
           a.n2 == b.n2 && a.m1 == b.m1 && a.m2 == b.m2;
  }
};

struct ReductionParams {
  ReductionKind kind = ReductionKind::WEq2;
  int m = 0;
  int z = 0;
  Rational w;
  Rational eps;      // w - 1, WOpen only
  long long D = 0;   // WOpen only
  long long p = 0;   // WOpen only
  long long R = 0;   // WOpen only
};

// Monotone map from virtual scores onto the actually available scores,
// stored as (virtual, actual) pairs with virtual strictly descending.
using VirtualMap = std::vector<std::array<long long, 2>>;

struct ReductionArtifact {
  Profile profile;  // manipulator ballots absent
  TwoNmtsInstance source;
  Rational w;
  Rational fstar;                 // target's ceiling: v1* + v2* + 2(z-1)
  std::vector<Rational> pvec;     // v1i + v2i for i <= m
  std::vector<Rational> dvec;     // per-candidate pair-sum windows, WGe3 only
  std::map<std::string, std::vector<GroupSegment>> groups;  // n1,n2,m1,m2
  std::map<std::string, VirtualMap> virtual_maps;           // n1,n2
  LeftoverLayout leftovers;  // WOpen only
  ReductionParams params;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string lhs;
  std::string rhs;
  std::string location;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed = false;

  const ValidationCheck* find(const std::string& name) const;
};

// Election with z = ceil((w+2)m)+1 candidates for a Standard instance and
// weight w >= 3. The first m candidates carry exact pair-sum windows; the
// rest pair the weighted voter's remaining scores (descending) with the
// other non-manipulator's remaining scores (ascending). Throws
// ConstructionError when the derived second-voter scores collide or leave
// the valid range; such parameter combinations exist and are rejected, not
// repaired.
ReductionArtifact reduce_w_ge3(const TwoNmtsInstance& instance, const Rational& w);

// Election with z = 7m+1 candidates for a Standard instance at weight 2.
// The 6m filler candidates are split into six groups of m with fixed score
// runs per voter; the second non-manipulator's runs are laid out in virtual
// scores {m+1..7m} and then mapped monotonically onto its actually
// available scores.
ReductionArtifact reduce_w_eq2(const TwoNmtsInstance& instance);

// Election with z = D+m+1 candidates for a Restricted instance and weight
// w = 1+eps, 0 < eps < 2, where D = floor((2+eps)m)*p + 3m. Preconditions:
// m > max(3, 3/eps) and p large enough that every layout constraint holds;
// otherwise throws (ValidationError for the m bound, ConstructionError
// naming the first violated constraint for p).
ReductionArtifact reduce_w_open(const TwoNmtsInstance& instance, const Rational& w,
                                long long p);

// Smallest p for which reduce_w_open passes validation at the worst case
// (the lexicographically least instance with a_1 = 0); every constraint's
// slack grows with p, so any instance of the same (m, eps) built at this p
// validates as well. Throws LimitError when the cap is reached.
long long choose_p(int m, const Rational& eps, long long p_cap = 1000000);

// Rank map: the candidate holding the k-th highest virtual score receives
// the k-th highest available score. Requires distinct virtual scores and
// rank-wise domination (k-th highest virtual >= k-th highest available), so
// results never exceed their virtual counterparts.
std::map<Cand, long long> devirtualize(const std::map<Cand, long long>& virtual_assignment,
                                       const std::set<long long>& available);

// Turns a verified matching solution into the two manipulator ballots: the
// target gets z-1 from both, candidate c_i gets the solution's pair split
// (index-reversed and shifted by one for Standard sources, direct for
// Restricted), and everything else follows the recorded layout.
std::pair<Ballot, Ballot> lift_solution(const ReductionArtifact& artifact,
                                        const NmtsSolution& solution);

// Property checks on a stored artifact: every inequality the constructions
// rely on, recomputed from the serialized scores, plus structural
// consistency between formulas, recorded layout, and ballots. Failures are
// report entries, never exceptions.
ValidationReport validate_reduction(const ReductionArtifact& artifact);

}  // namespace bordaforge
