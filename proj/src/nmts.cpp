#include "bordaforge/nmts.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "bordaforge/errors.hpp"

namespace bordaforge {

void TwoNmtsInstance::validate() const {
  if (m < 1) throw ValidationError("nmts: m must be positive");
  if (m > 62) throw ValidationError("nmts: m too large for bitmask solver");
  if (static_cast<int>(a.size()) != m)
    throw ValidationError("nmts: |a| != m");
  const int lo = 2 * value_lo();
  const int hi = 2 * value_hi();
  long long sum = 0;
  for (int i = 0; i < m; ++i) {
    if (a[i] < lo || a[i] > hi)
      throw ValidationError("nmts: a[" + std::to_string(i) + "]=" +
                            std::to_string(a[i]) + " outside [" + std::to_string(lo) +
                            "," + std::to_string(hi) + "]");
    if (i > 0 && a[i] < a[i - 1])
      throw ValidationError("nmts: a must be non-decreasing");
    sum += a[i];
  }
  const long long want = static_cast<long long>(m) * (value_lo() + value_hi());
  if (sum != want)
    throw ValidationError("nmts: sum(a)=" + std::to_string(sum) + " != " +
                          std::to_string(want));
}

bool verify_solution(const TwoNmtsInstance& instance, const NmtsSolution& solution) {
  const int m = instance.m;
  if (static_cast<int>(instance.a.size()) != m) return false;
  if (static_cast<int>(solution.p1.size()) != m ||
      static_cast<int>(solution.p2.size()) != m)
    return false;
  const int lo = instance.value_lo();
  auto is_permutation = [&](const std::vector<int>& p) {
    std::vector<bool> seen(m, false);
    for (int v : p) {
      const int idx = v - lo;
      if (idx < 0 || idx >= m || seen[idx]) return false;
      seen[idx] = true;
    }
    return true;
  };
  if (!is_permutation(solution.p1) || !is_permutation(solution.p2)) return false;
  for (int j = 0; j < m; ++j)
    if (solution.p1[j] + solution.p2[j] != instance.a[j]) return false;
  return true;
}

namespace {

int top_bit(uint64_t mask) { return 63 - __builtin_clzll(mask); }
int low_bit(uint64_t mask) { return __builtin_ctzll(mask); }

// Backtracking decision over the positions in `order` (kept in descending
// a_j order so the most constrained targets go first), with a pairability
// bound on the largest and smallest remaining targets.
bool completable(const TwoNmtsInstance& inst, const std::vector<int>& order,
                 size_t k, uint64_t avail1, uint64_t avail2) {
  if (k == order.size()) return true;
  const int m = inst.m;
  const int lo = inst.value_lo();
  const int amax = inst.a[order[k]];
  const int amin = inst.a[order.back()];
  if (top_bit(avail1) + top_bit(avail2) + 2 * lo < amax) return false;
  if (low_bit(avail1) + low_bit(avail2) + 2 * lo > amin) return false;
  const int j = order[k];
  for (uint64_t rest = avail1; rest != 0; rest &= rest - 1) {
    const int b1 = low_bit(rest);
    const int b2 = inst.a[j] - 2 * lo - b1;
    if (b2 < 0 || b2 >= m || !(avail2 >> b2 & 1)) continue;
    if (completable(inst, order, k + 1, avail1 & ~(1ULL << b1),
                    avail2 & ~(1ULL << b2)))
      return true;
  }
  return false;
}

std::vector<int> descending_order(const TwoNmtsInstance& inst, int from) {
  std::vector<int> order;
  for (int j = from; j < inst.m; ++j) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return inst.a[x] > inst.a[y]; });
  return order;
}

}  // namespace

std::optional<NmtsSolution> solve_2nmts(const TwoNmtsInstance& instance) {
  instance.validate();
  const int m = instance.m;
  const int lo = instance.value_lo();
  uint64_t avail1 = (1ULL << m) - 1, avail2 = avail1;

  if (!completable(instance, descending_order(instance, 0), 0, avail1, avail2))
    return std::nullopt;

  // Pin positions in index order, smallest feasible p1 value first; each
  // candidate value is kept only if the rest still completes, so the result
  // is the lexicographically least solvable p1 (p2 is determined by p1).
  std::vector<int> p1(m), p2(m);
  for (int j = 0; j < m; ++j) {
    const auto rest_order = descending_order(instance, j + 1);
    bool pinned = false;
    for (uint64_t rest = avail1; rest != 0 && !pinned; rest &= rest - 1) {
      const int b1 = low_bit(rest);
      const int b2 = instance.a[j] - 2 * lo - b1;
      if (b2 < 0 || b2 >= m || !(avail2 >> b2 & 1)) continue;
      if (completable(instance, rest_order, 0, avail1 & ~(1ULL << b1),
                      avail2 & ~(1ULL << b2))) {
        p1[j] = b1 + lo;
        p2[j] = b2 + lo;
        avail1 &= ~(1ULL << b1);
        avail2 &= ~(1ULL << b2);
        pinned = true;
      }
    }
    if (!pinned) return std::nullopt;  // unreachable: feasibility was checked
  }
  return NmtsSolution{p1, p2};
}

TwoNmtsInstance rn3dm_to_2nmts(const std::vector<long long>& u, long long e) {
  const int m = static_cast<int>(u.size());
  if (m < 1) throw ValidationError("rn3dm: empty multiset");
  const long long sum = std::accumulate(u.begin(), u.end(), 0LL);
  if (sum + static_cast<long long>(m) * (m + 1) != static_cast<long long>(m) * e)
    throw ValidationError("rn3dm: side condition sum(u) + m(m+1) = m*e violated");
  TwoNmtsInstance instance;
  instance.m = m;
  instance.variant = NmtsVariant::Standard;
  for (long long ui : u) {
    const long long aj = e - ui;
    if (aj < 2 || aj > 2LL * m)
      throw ValidationError("rn3dm: derived target " + std::to_string(aj) +
                            " outside [2," + std::to_string(2 * m) + "]");
    instance.a.push_back(static_cast<int>(aj));
  }
  std::sort(instance.a.begin(), instance.a.end());
  instance.validate();
  return instance;
}

TwoNmtsInstance restricted_to_standard(const TwoNmtsInstance& instance) {
  if (instance.variant != NmtsVariant::Restricted)
    throw ValidationError("restricted_to_standard: instance is not Restricted");
  instance.validate();
  TwoNmtsInstance out;
  out.m = instance.m;
  out.variant = NmtsVariant::Standard;
  out.a.reserve(instance.m);
  for (int aj : instance.a) out.a.push_back(aj + 2);
  out.validate();
  return out;
}

std::vector<TwoNmtsInstance> enumerate_instances(int m, NmtsVariant variant) {
  TwoNmtsInstance proto;
  proto.m = m;
  proto.variant = variant;
  const int lo = 2 * proto.value_lo();
  const int hi = 2 * proto.value_hi();
  const long long total = static_cast<long long>(m) * (proto.value_lo() + proto.value_hi());

  std::vector<TwoNmtsInstance> out;
  std::vector<int> a;
  auto rec = [&](auto&& self, int pos, int min_value, long long remaining) -> void {
    if (pos == m) {
      if (remaining == 0) {
        TwoNmtsInstance inst = proto;
        inst.a = a;
        out.push_back(std::move(inst));
      }
      return;
    }
    const int left = m - pos;
    for (int v = min_value; v <= hi; ++v) {
      // Entries are non-decreasing, so the remaining sum is boxed by
      // [left*v, left*hi].
      if (static_cast<long long>(left) * v > remaining) break;
      if (static_cast<long long>(left) * hi < remaining) continue;
      a.push_back(v);
      self(self, pos + 1, v, remaining - v);
      a.pop_back();
    }
  };
  rec(rec, 0, lo, total);
  return out;
}

}  // namespace bordaforge
