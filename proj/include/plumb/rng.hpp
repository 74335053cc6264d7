#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace plumb {

// mt19937_64 output is pinned by the standard; the standard distributions are
// not, so uniform draws are produced here by rejection to keep seeded runs
// byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = gen_();
      if (rem == 0 || x < 0 - rem) return x % n;
    }
  }

  // uniform in [lo, hi], inclusive
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // true with probability num/den
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(below(xs.size()))];
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace plumb
