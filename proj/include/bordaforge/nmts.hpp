#pragma once

#include <optional>
#include <vector>

namespace bordaforge {

enum class NmtsVariant { Standard, Restricted };

// Target-sum matching: do two permutations of {1..m} (Standard) or
// {0..m-1} (Restricted) exist with p1(j) + p2(j) = a_j for every position?
struct TwoNmtsInstance {
  int m = 0;
  std::vector<int> a;  // non-decreasing
  NmtsVariant variant = NmtsVariant::Standard;

  // Standard: 2 <= a_j <= 2m and sum = m(m+1).
  // Restricted: 0 <= a_j <= 2(m-1) and sum = m(m-1).
  void validate() const;

  int value_lo() const { return variant == NmtsVariant::Standard ? 1 : 0; }
  int value_hi() const { return variant == NmtsVariant::Standard ? m : m - 1; }

  friend bool operator==(const TwoNmtsInstance& x, const TwoNmtsInstance& y) {
    return x.m == y.m && x.a == y.a && x.variant == y.variant;
  }
};

struct NmtsSolution {
  std::vector<int> p1;
  std::vector<int> p2;

  friend bool operator==(const NmtsSolution& x, const NmtsSolution& y) {
    return x.p1 == y.p1 && x.p2 == y.p2;
  }
};

bool verify_solution(const TwoNmtsInstance& instance, const NmtsSolution& solution);

// Exact backtracking over positions in descending a_j order (ties broken by
// ascending index) with used-value bitmasks; p1 values are tried ascending,
// so the returned solution is canonical and runs are reproducible. Throws
// ValidationError on an invalid instance rather than answering "no".
std::optional<NmtsSolution> solve_2nmts(const TwoNmtsInstance& instance);

// a_j = e - u_j, sorted. Requires sum(u) + m(m+1) = m*e.
TwoNmtsInstance rn3dm_to_2nmts(const std::vector<long long>& u, long long e);

// Shifts targets by 2; solutions correspond by adding 1 to every entry.
TwoNmtsInstance restricted_to_standard(const TwoNmtsInstance& instance);

// All valid instances for a given m in lexicographic order, built by
// recursive composition with running sum bounds. Test and sweep fodder.
std::vector<TwoNmtsInstance> enumerate_instances(int m, NmtsVariant variant);

}  // namespace bordaforge
