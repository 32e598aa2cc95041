#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace invgen {

// Group orders can exceed 64 bits (Alt(29) has order 29!/2 ~ 4.4e30), so
// orders are carried as unsigned 128-bit integers.  Anything beyond 2^128
// is rejected loudly; this tool targets desk-scale groups.
using u128 = unsigned __int128;

inline std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

inline u128 u128_from_string(const std::string& s) {
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in integer literal: " + s);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

// Thrown when an exact computation would exceed a configured budget.
// Budgets fail loudly rather than truncating silently.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed input: bad cycle syntax, degree mismatch, invalid
// constructor parameters, broken preconditions.
struct InputError : std::invalid_argument {
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Runtime budgets.  All limits are explicit; the`_budget` values mirror the
// config file keys understood by the CLI.
struct Config {
  long lattice_budget = 2000;    // max |G| for full subgroup enumeration
  long element_budget = 200000;  // max |G| for element enumeration
  long class_budget = 200000;    // max |G| for conjugacy class tables
  long tuple_budget = 2000000;   // max conjugate tuples per closure evaluation
  std::string cache_dir;         // lattice cache directory; empty = disabled
  std::uint64_t seed = 1;        // seed for randomized property suites
  long quotient_degree_budget = 50000;  // max index for coset actions
  // work cap for stabilizer-chain construction (Schreier pairs x degree);
  // keeps pathological inputs from hanging instead of refusing
  long long bsgs_work_budget = 300000000LL;
};

inline Config& default_config() {
  static Config cfg;
  return cfg;
}

// Deterministic splitmix64; used instead of <random> distributions so seeded
// suites reproduce bit-for-bit across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % n;
  }
};

// Fixed-universe bitset used for element sets and class-id sets.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool any() const {
    for (auto w : words_) if (w) return true;
    return false;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  bool operator==(const Bitset& o) const { return size_ == o.size_ && words_ == o.words_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }
  // lexicographic by member list; used to pick canonical representatives
  bool operator<(const Bitset& o) const { return members() < o.members(); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> prime_factors(u128 n) {
  std::vector<long> out;
  for (long p = 2; (u128)p * (u128)p <= n; ++p) {
    if (n % (u128)p == 0) {
      out.push_back(p);
      while (n % (u128)p == 0) n /= (u128)p;
    }
  }
  if (n > 1) {
    if (n > (u128)~std::uint64_t(0)) throw InputError("prime factor too large");
    out.push_back(static_cast<long>((std::uint64_t)n));
  }
  return out;
}

}  // namespace invgen
