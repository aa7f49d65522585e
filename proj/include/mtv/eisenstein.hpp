#pragma once

#include "mtv/hecke.hpp"
#include "mtv/qseries.hpp"

namespace mtv {

namespace detail {
inline void check_eisenstein_weight(long lambda) {
  if (lambda < 4 || lambda % 2 != 0) throw InputError("Eisenstein weight must be even and >= 4");
}
inline void check_prime_level(long n) {
  if (!is_prime(n)) throw UnsupportedError("level " + std::to_string(n) + " is not prime");
}
}  // namespace detail

/// E_lambda = 1 - (2 lambda / B_lambda) sum sigma_{lambda-1}(n) q^n.
inline RSeries eisenstein_level1(long lambda, long trunc) {
  detail::check_eisenstein_weight(lambda);
  const Rational factor = -Rational(2 * lambda) / bernoulli(static_cast<unsigned>(lambda));
  auto sigma = divisor_power_sums(std::max(trunc, 1L), static_cast<unsigned>(lambda - 1));
  std::vector<Rational> c(static_cast<std::size_t>(trunc + 1), Rational(0));
  c[0] = 1;
  for (long n = 1; n <= trunc; ++n) c[static_cast<std::size_t>(n)] = factor * sigma[static_cast<std::size_t>(n)];
  return RSeries(std::move(c), trunc, 1, FormMeta{static_cast<int>(lambda), 1, Character::trivial()});
}

inline RSeries eisenstein_E4(long trunc) { return eisenstein_level1(4, trunc); }
inline RSeries eisenstein_E6(long trunc) { return eisenstein_level1(6, trunc); }

/// E_{lambda,N} = (N^lambda E_lambda(Nz) - E_lambda(z)) / (N^lambda - 1), the
/// Eisenstein series of Gamma_0(N) attached to the cusp at infinity.
inline RSeries eisenstein_gamma0_infty(long lambda, long level, long trunc) {
  detail::check_eisenstein_weight(lambda);
  if (level == 1) return eisenstein_level1(lambda, trunc);
  detail::check_prime_level(level);
  RSeries e = eisenstein_level1(lambda, trunc);
  RSeries ev = op_V(e, level).truncated(trunc);
  const Rational nl(ipow(level, static_cast<unsigned long>(lambda)));
  RSeries r = (ev * nl - e) * (1 / (nl - 1));
  return r.with_level(level);
}

/// E_{lambda,N} |_lambda omega_N = N^{lambda/2} (E_lambda(z) - E_lambda(Nz)) / (N^lambda - 1).
inline RSeries fricke_eisenstein(long lambda, long level, long trunc) {
  detail::check_eisenstein_weight(lambda);
  if (level == 1) return eisenstein_level1(lambda, trunc);
  detail::check_prime_level(level);
  RSeries e = eisenstein_level1(lambda, trunc);
  RSeries ev = op_V(e, level).truncated(trunc);
  const Rational nl(ipow(level, static_cast<unsigned long>(lambda)));
  const Rational nh(ipow(level, static_cast<unsigned long>(lambda / 2)));
  RSeries r = (e - ev) * (nh / (nl - 1));
  return r.with_level(level);
}

}  // namespace mtv
