#pragma once

// Sieved per-integer tables of the classical arithmetic functions.
//
// Λ is never stored as a floating logarithm: mangoldt_base(n) holds the prime
// p when n = p^k and 0 otherwise, so convolutions against Λ can stay exact
// in the {log p} basis (see log_vector.hpp).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expsum {

/// Default refusal threshold for build_tables (about 1.3 GB of tables).
inline constexpr std::uint64_t kDefaultTableCap = 100'000'000;

/// Approximate bytes per sieved entry, used for the allocation budget.
inline constexpr std::uint64_t kTableBytesPerEntry =
    sizeof(std::uint32_t) * 3 + sizeof(std::int8_t);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Factorization by trial division; used for arguments outside a sieve.
inline Factorization factorize_trial(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize_trial: n must be positive");
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline int mobius_of(const Factorization& f) {
  for (const auto& pp : f)
    if (pp.exponent > 1) return 0;
  return (f.size() % 2 == 0) ? 1 : -1;
}

inline std::uint64_t totient_of(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& pp : f) {
    phi *= pp.prime - 1;
    for (unsigned i = 1; i < pp.exponent; ++i) phi *= pp.prime;
  }
  return phi;
}

inline std::uint64_t tau_of(const Factorization& f) {
  std::uint64_t t = 1;
  for (const auto& pp : f) t *= pp.exponent + 1;
  return t;
}

/// Immutable after construction; safe for concurrent readers.
class ArithTables {
 public:
  ArithTables() = default;

  std::uint64_t n_max() const { return n_max_; }

  std::uint32_t spf(std::uint64_t n) const { return spf_.at(checked(n)); }
  int mobius(std::uint64_t n) const { return mobius_.at(checked(n)); }
  std::uint32_t totient(std::uint64_t n) const { return totient_.at(checked(n)); }
  /// p if n = p^k (k >= 1), else 0.
  std::uint32_t mangoldt_base(std::uint64_t n) const {
    return mangoldt_base_.at(checked(n));
  }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }
  bool is_squarefree(std::uint64_t n) const { return mobius(n) != 0; }

  /// Λ(n) in floating point.
  double mangoldt(std::uint64_t n) const;

  Factorization factorize(std::uint64_t n) const {
    Factorization out;
    checked(n);
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    return out;
  }

  std::uint64_t tau(std::uint64_t n) const { return tau_of(factorize(n)); }

  /// Sorted list of all divisors of n.
  std::vector<std::uint64_t> divisors(std::uint64_t n) const;

  const std::vector<std::uint32_t>& primes() const { return primes_; }

  void save(const std::filesystem::path& file) const;
  static ArithTables load(const std::filesystem::path& file);

 private:
  friend ArithTables build_tables(std::uint64_t, std::uint64_t);

  std::uint64_t checked(std::uint64_t n) const {
    if (n == 0 || n > n_max_)
      throw std::out_of_range("ArithTables: index " + std::to_string(n) +
                              " outside [1, " + std::to_string(n_max_) + "]");
    return n;
  }

  std::uint64_t n_max_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> mobius_;
  std::vector<std::uint32_t> totient_;
  std::vector<std::uint32_t> mangoldt_base_;
  std::vector<std::uint32_t> primes_;
};

/// Linear (Euler) sieve of spf, μ, φ and the Λ prime base on [1, n_max].
/// Refuses with std::length_error when n_max exceeds `cap`.
inline ArithTables build_tables(std::uint64_t n_max, std::uint64_t cap = kDefaultTableCap) {
  if (n_max < 1) throw std::invalid_argument("build_tables: n_max must be >= 1");
  if (n_max > cap)
    throw std::length_error("build_tables: n_max " + std::to_string(n_max) +
                            " exceeds table cap " + std::to_string(cap) + " (~" +
                            std::to_string(n_max * kTableBytesPerEntry >> 20) + " MiB)");
  ArithTables t;
  t.n_max_ = n_max;
  const std::size_t size = n_max + 1;
  t.spf_.assign(size, 0);
  t.mobius_.assign(size, 0);
  t.totient_.assign(size, 0);
  t.mangoldt_base_.assign(size, 0);
  t.mobius_[1] = 1;
  t.totient_[1] = 1;
  for (std::uint64_t i = 2; i <= n_max; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.mobius_[i] = -1;
      t.totient_[i] = static_cast<std::uint32_t>(i - 1);
      t.mangoldt_base_[i] = static_cast<std::uint32_t>(i);
      t.primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (const std::uint32_t p : t.primes_) {
      const std::uint64_t ip = i * p;
      if (p > t.spf_[i] || ip > n_max) break;
      t.spf_[ip] = p;
      if (i % p == 0) {
        t.mobius_[ip] = 0;
        t.totient_[ip] = t.totient_[i] * p;
        // i*p is a prime power exactly when i is a power of p.
        t.mangoldt_base_[ip] = (t.mangoldt_base_[i] == p) ? p : 0;
      } else {
        t.mobius_[ip] = static_cast<std::int8_t>(-t.mobius_[i]);
        t.totient_[ip] = t.totient_[i] * (p - 1);
        t.mangoldt_base_[ip] = 0;
      }
    }
  }
  return t;
}

inline double ArithTables::mangoldt(std::uint64_t n) const {
  const auto b = mangoldt_base(n);
  return b == 0 ? 0.0 : std::log(static_cast<double>(b));
}

inline std::vector<std::uint64_t> ArithTables::divisors(std::uint64_t n) const {
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

namespace detail {
inline constexpr std::uint64_t kTableFileMagic = 0x3142415453505845ULL;  // "EXPSTAB1"

template <class T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  const std::uint64_t n = v.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

template <class T>
void read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}
}  // namespace detail

inline void ArithTables::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write table cache " + file.string());
  out.write(reinterpret_cast<const char*>(&detail::kTableFileMagic), sizeof detail::kTableFileMagic);
  out.write(reinterpret_cast<const char*>(&n_max_), sizeof n_max_);
  detail::write_vec(out, spf_);
  detail::write_vec(out, mobius_);
  detail::write_vec(out, totient_);
  detail::write_vec(out, mangoldt_base_);
  detail::write_vec(out, primes_);
}

inline ArithTables ArithTables::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read table cache " + file.string());
  std::uint64_t magic = 0;
  ArithTables t;
  in.read(reinterpret_cast<char*>(&magic), sizeof magic);
  in.read(reinterpret_cast<char*>(&t.n_max_), sizeof t.n_max_);
  if (magic != detail::kTableFileMagic) throw std::runtime_error("bad table cache " + file.string());
  detail::read_vec(in, t.spf_);
  detail::read_vec(in, t.mobius_);
  detail::read_vec(in, t.totient_);
  detail::read_vec(in, t.mangoldt_base_);
  detail::read_vec(in, t.primes_);
  if (!in || t.spf_.size() != t.n_max_ + 1)
    throw std::runtime_error("truncated table cache " + file.string());
  return t;
}

/// Tables of at least n_max entries, reusing `cache_dir/tables_<n_max>.bin` when present.
inline ArithTables cached_tables(std::uint64_t n_max, const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return build_tables(n_max);
  const auto file = cache_dir / ("tables_" + std::to_string(n_max) + ".bin");
  if (std::filesystem::exists(file)) {
    try {
      return ArithTables::load(file);
    } catch (const std::runtime_error&) {
      // stale or foreign file; rebuild below
    }
  }
  auto t = build_tables(n_max);
  std::filesystem::create_directories(cache_dir);
  t.save(file);
  return t;
}

/// Ramanujan sum c_r(n) = μ(r/g)·φ(r)/φ(r/g) with g = gcd(r, n).
inline std::int64_t ramanujan_sum(std::uint64_t r, std::uint64_t n) {
  if (r == 0 || n == 0) throw std::invalid_argument("ramanujan_sum: r and n must be positive");
  const std::uint64_t g = std::gcd(r, n);
  const auto fr = factorize_trial(r);
  const auto frg = factorize_trial(r / g);
  const int mu = mobius_of(frg);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(totient_of(fr) / totient_of(frg));
}

inline std::int64_t ramanujan_sum(std::uint64_t r, std::uint64_t n, const ArithTables& t) {
  if (r == 0 || n == 0) throw std::invalid_argument("ramanujan_sum: r and n must be positive");
  const std::uint64_t g = std::gcd(r, n);
  const int mu = t.mobius(r / g);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(t.totient(r) / t.totient(r / g));
}

// ---------------------------------------------------------------------------
// The two summands studied throughout

enum class ArithFn { mangoldt, mobius };

inline std::string to_string(ArithFn f) { return f == ArithFn::mangoldt ? "mangoldt" : "mobius"; }

inline ArithFn parse_arith_fn(const std::string& s) {
  if (s == "mangoldt" || s == "lambda" || s == "Lambda") return ArithFn::mangoldt;
  if (s == "mobius" || s == "mu") return ArithFn::mobius;
  throw std::invalid_argument("unknown arithmetic function '" + s + "' (expected mangoldt or mobius)");
}

/// Λ(n) or μ(n) as a double.
inline double arith_value(ArithFn f, std::uint64_t n, const ArithTables& t) {
  if (f == ArithFn::mobius) return t.mobius(n);
  const auto p = t.mangoldt_base(n);
  return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

}  // namespace expsum
