#pragma once

#include "expsum/log_vector.hpp"

#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace expsum {

// Arithmetic functions on [1, n] are vectors of size n + 1; slot 0 is unused.
template <class T>
using ArithFunction = std::vector<T>;

namespace detail {

template <class T>
bool is_zero_value(const T& v) {
  return v == 0;
}
template <class T>
bool is_zero_value(const LogVector<T>& v) {
  return v.is_zero();
}

template <class A, class B>
struct product_type {
  static_assert(std::is_same_v<A, B>, "scalar operands must share one type");
  using type = A;
};
template <class T>
struct product_type<T, LogVector<T>> {
  using type = LogVector<T>;
};
template <class T>
struct product_type<LogVector<T>, T> {
  using type = LogVector<T>;
};

}  // namespace detail

/// (f * g)(n) = Σ_{d | n} f(d) g(n/d) on [1, n_max], exact in the operand
/// arithmetic. A rational table convolved with a log-vector table yields a
/// log-vector table.
template <class A, class B>
auto dirichlet_convolve(const ArithFunction<A>& f, const ArithFunction<B>& g,
                        std::uint64_t n_max) {
  using Result = typename detail::product_type<A, B>::type;
  if (f.size() < n_max + 1 || g.size() < n_max + 1)
    throw std::out_of_range("dirichlet_convolve: operand shorter than n_max");
  ArithFunction<Result> out(n_max + 1);
  for (std::uint64_t d = 1; d <= n_max; ++d) {
    if (detail::is_zero_value(f[d])) continue;
    for (std::uint64_t k = 1, n = d; n <= n_max; ++k, n += d) {
      if (detail::is_zero_value(g[k])) continue;
      out[n] += Result(f[d] * g[k]);
    }
  }
  return out;
}

/// Tabulates fn(n) for n in [1, n_max].
template <class F>
auto tabulate(std::uint64_t n_max, F&& fn) {
  using Result = std::decay_t<decltype(fn(std::uint64_t{1}))>;
  ArithFunction<Result> out(n_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) out[n] = fn(n);
  return out;
}

}  // namespace expsum
