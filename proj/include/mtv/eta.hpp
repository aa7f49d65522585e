#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtv/qseries.hpp"

namespace mtv {

/// prod_d eta(d z)^{r_d} at level N.
class EtaQuotientSpec {
 public:
  EtaQuotientSpec() = default;
  EtaQuotientSpec(std::vector<std::pair<long, long>> factors, long level) : level_(level) {
    std::map<long, long> merged;
    for (auto [d, r] : factors) {
      if (d < 1) throw InputError("eta quotient divisor must be positive");
      merged[d] += r;
    }
    for (auto [d, r] : merged)
      if (r != 0) f_.emplace_back(d, r);
    if (level_ < 1) throw InputError("level must be positive");
    for (auto [d, r] : f_)
      if (level_ % d != 0)
        throw InputError("eta quotient divisor " + std::to_string(d) + " does not divide level " + std::to_string(level_));
    long s = 0, w = 0;
    for (auto [d, r] : f_) {
      s += d * r;
      w += r;
    }
    if (s % 24 != 0) throw InputError("eta quotient has non-integral leading exponent");
    if (w % 2 != 0 || w < 0) throw InputError("eta quotient weight must be a non-negative integer");
    order_ = s / 24;
    weight_ = static_cast<int>(w / 2);
  }

  /// Parses "d1:r1,d2:r2".  An empty string is the empty quotient.
  static EtaQuotientSpec parse(const std::string& text, long level) {
    std::vector<std::pair<long, long>> f;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t colon = item.find(':');
      if (colon == std::string::npos) throw InputError("eta item '" + item + "' is not of the form d:r");
      try {
        std::size_t used = 0;
        long d = std::stol(item.substr(0, colon), &used);
        if (used != colon) throw InputError("bad divisor in '" + item + "'");
        std::string rs = item.substr(colon + 1);
        long r = std::stol(rs, &used);
        if (used != rs.size()) throw InputError("bad exponent in '" + item + "'");
        f.emplace_back(d, r);
      } catch (const std::logic_error&) {
        throw InputError("eta item '" + item + "' is not of the form d:r");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return EtaQuotientSpec(std::move(f), level);
  }

  const std::vector<std::pair<long, long>>& factors() const { return f_; }
  long level() const { return level_; }
  int weight() const { return weight_; }
  /// Order of vanishing at infinity.
  long order_at_infinity() const { return order_; }
  bool empty() const { return f_.empty(); }

  std::string to_string() const {
    std::string s;
    for (auto [d, r] : f_) {
      if (!s.empty()) s += ',';
      s += std::to_string(d) + ":" + std::to_string(r);
    }
    return s;
  }

  /// The quotient g' with g|_w omega_N = scalar * g', namely d -> N/d.
  EtaQuotientSpec fricke_image() const {
    std::vector<std::pair<long, long>> f;
    for (auto [d, r] : f_) f.emplace_back(level_ / d, r);
    return EtaQuotientSpec(std::move(f), level_);
  }

  /// The scalar in g|_w omega_N = scalar * prod eta((N/d) z)^{r_d}, which is
  /// (-i)^w N^{-w/2} prod (N/d)^{r_d/2}.  Throws UnsupportedError when it is
  /// not rational.
  Rational fricke_scalar() const {
    if (weight_ % 2 != 0) throw UnsupportedError("odd-weight eta quotient has a non-rational Fricke scalar");
    // Exponent of each prime, doubled.
    std::map<long, long> twice;
    for (long p : prime_divisors(level_)) {
      long vN = 0;
      for (long n = level_; n % p == 0; n /= p) ++vN;
      long e = -static_cast<long>(weight_) * vN;
      for (auto [d, r] : f_) {
        long v = 0;
        for (long n = level_ / d; n % p == 0; n /= p) ++v;
        e += r * v;
      }
      twice[p] = e;
    }
    Rational s = (weight_ / 2) % 2 == 0 ? Rational(1) : Rational(-1);
    for (auto [p, e] : twice) {
      if (e % 2 != 0) throw UnsupportedError("eta quotient Fricke scalar is irrational");
      s *= pow(Rational(p), e / 2);
    }
    return s;
  }

  friend bool operator==(const EtaQuotientSpec& a, const EtaQuotientSpec& b) {
    return a.level_ == b.level_ && a.f_ == b.f_;
  }

 private:
  std::vector<std::pair<long, long>> f_;
  long level_ = 1;
  long order_ = 0;
  int weight_ = 0;
};

/// q-expansion of the eta quotient to order T (rational coefficients).
inline RSeries eta_quotient(const EtaQuotientSpec& spec, long trunc) {
  FormMeta meta{spec.weight(), spec.level(), Character::trivial()};
  std::vector<Rational> c(static_cast<std::size_t>(trunc + 1), Rational(0));
  const long v = spec.order_at_infinity();
  if (v < 0) throw UnsupportedError("eta quotient with a pole at infinity");
  const long len = trunc - v;  // coefficients of prod (1 - q^{dn})^{r_d} needed
  if (len >= 0) {
    // Logarithmic derivative: q P'/P = -sum_j b_j q^j with b_j = sum_{d | j} r_d d sigma(j/d).
    auto sigma = divisor_power_sums(std::max(len, 1L), 1);
    std::vector<Integer> b(static_cast<std::size_t>(len + 1), Integer(0));
    for (auto [d, r] : spec.factors())
      for (long m = 1; d * m <= len; ++m) b[static_cast<std::size_t>(d * m)] += Integer(r * d) * sigma[static_cast<std::size_t>(m)];
    std::vector<Integer> a(static_cast<std::size_t>(len + 1), Integer(0));
    a[0] = 1;
    for (long n = 1; n <= len; ++n) {
      Integer acc = 0;
      for (long k = 1; k <= n; ++k) {
        if (b[static_cast<std::size_t>(k)] == 0) continue;
        acc += b[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(n - k)];
      }
      // Exact: the coefficients are integers.
      a[static_cast<std::size_t>(n)] = -acc / n;
    }
    for (long n = 0; n <= len; ++n) c[static_cast<std::size_t>(n + v)] = Rational(a[static_cast<std::size_t>(n)]);
  }
  return RSeries(std::move(c), trunc, 1, meta);
}

/// The normalized discriminant (2 pi)^{-12} Delta = q prod (1 - q^n)^24.
inline RSeries delta_tilde(long trunc) { return eta_quotient(EtaQuotientSpec({{1, 24}}, 1), trunc); }

}  // namespace mtv
