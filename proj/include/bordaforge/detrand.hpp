#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace bordaforge {

// Seeded random draws with a fixed cross-platform sequence. mt19937_64 is
// specified exactly by the standard; the bounded draw and shuffle below are
// pinned here because the standard library distributions are not.
class DetRand {
public:
  explicit DetRand(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace bordaforge
