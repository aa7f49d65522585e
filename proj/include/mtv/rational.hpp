#pragma once

// Exact integers and rationals on top of GMP, plus the small pieces of
// elementary number theory the rest of the library leans on.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "mtv/errors.hpp"

namespace mtv {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p/q", or "n" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "n", "p/q" (optionally signed, surrounding whitespace allowed).
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty rational string");
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' )
    throw InputError("malformed rational: '" + std::string(text) + "'");
  Integer n(strip_plus(num)), d(strip_plus(den));
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

/// base^e for any integer e; zero to a negative power throws.
inline Rational pow(const Rational& base, long e) {
  if (e >= 0) {
    Rational r(ipow(Integer(base.get_num()), static_cast<unsigned long>(e)),
               ipow(Integer(base.get_den()), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
  }
  if (is_zero(base)) throw DomainMismatch("zero raised to a negative power");
  return 1 / pow(base, -e);
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline long gcd(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm(long a, long b) { return (a == 0 || b == 0) ? 0 : (a / gcd(a, b)) * b; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline int moebius(long n) {
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Kronecker symbol (D/n) for n >= 1.
inline int kronecker(long D, long n) {
  if (n <= 0) throw InputError("kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    long r = ((D % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (D/n) for odd n.
  long a = ((D % n) + n) % n;
  long m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

/// Bernoulli number B_m (B_1 = -1/2) from sum_{j<=m} C(m+1, j) B_j = 0.
inline Rational bernoulli(unsigned m) {
  std::vector<Rational> b(m + 1);
  b[0] = 1;
  for (unsigned n = 1; n <= m; ++n) {
    Rational acc = 0;
    for (unsigned j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * b[j];
    b[n] = -acc / Rational(n + 1);
  }
  return b[m];
}

/// sigma_k(n) for all 0 <= n <= limit (index 0 is unused and set to 0).
inline std::vector<Integer> divisor_power_sums(long limit, unsigned k) {
  std::vector<Integer> s(static_cast<std::size_t>(limit + 1), Integer(0));
  for (long d = 1; d <= limit; ++d) {
    Integer dk = ipow(d, k);
    for (long m = d; m <= limit; m += d) s[static_cast<std::size_t>(m)] += dk;
  }
  return s;
}

}  // namespace mtv
