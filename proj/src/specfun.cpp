#include "janssen/specfun.hpp"

#include <algorithm>

#include "janssen/errors.hpp"
#include "janssen/lattice.hpp"
#include "janssen/rational.hpp"

namespace janssen {

LogSigned LogSigned::from_double(double v) {
  if (v == 0.0) return {};
  return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
}

std::vector<Enclosure> laguerre_taylor(unsigned n, const Enclosure& x) {
  Bits bits = x.precision();
  // rows k-1 and k of T_{k,j} = L_k^{(j)}(x)/j!
  std::vector<Enclosure> prev(n + 1, Enclosure(0, bits));
  std::vector<Enclosure> cur(n + 1, Enclosure(0, bits));
  prev[0] = Enclosure(1, bits);
  if (n == 0) return prev;
  cur[0] = 1L - x;
  cur[1] = Enclosure(-1, bits);
  for (unsigned k = 1; k < n; ++k) {
    std::vector<Enclosure> next(n + 1, Enclosure(0, bits));
    Enclosure coef = static_cast<long>(2 * k + 1) - x;
    for (unsigned j = 0; j <= k + 1; ++j) {
      Enclosure t = coef * cur[j] - prev[j] * static_cast<long>(k);
      if (j > 0) t -= cur[j - 1];
      next[j] = t / static_cast<long>(k + 1);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Enclosure laguerre_range(unsigned n, const Enclosure& X) {
  Bits bits = X.precision();
  Enclosure mid(bits + 1);
  mpfr_add(mid.lo_mut(), X.lo(), X.hi(), MPFR_RNDD);
  mpfr_div_2ui(mid.lo_mut(), mid.lo(), 1, MPFR_RNDD);
  mpfr_set(mid.hi_mut(), mid.lo(), MPFR_RNDU);
  std::vector<Enclosure> t = laguerre_taylor(n, mid);
  Enclosure h = X - mid;
  Enclosure acc = t[n];
  for (unsigned j = n; j-- > 0;) acc = acc * h + t[j];
  return acc;
}

LogSigned laguerre_log(unsigned n, double x) {
  constexpr double kBig = 1e150;
  const double kLogBig = std::log(kBig);
  double prev = 1.0;
  if (n == 0) return LogSigned::from_double(1.0);
  double cur = 1.0 - x;
  double scale = 0.0;
  for (unsigned k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      scale += kLogBig;
    }
  }
  LogSigned r = LogSigned::from_double(cur);
  if (r.sign != 0) r.log_mag += scale;
  return r;
}

Enclosure laguerre_eval(unsigned n, double x, const PrecisionConfig& prec) {
  if (!std::isfinite(x)) throw Error(Errc::domain_error, "argument must be finite");
  if (!prec.is_certified()) return Enclosure::point_estimate(laguerre_log(n, x).value());
  prec.validate();
  return refine(prec, [&](Bits bits) {
    return laguerre_recurrence(n, Enclosure::from_double(x, bits));
  });
}

Enclosure laguerre_eval(unsigned n, const mpq_class& x, const PrecisionConfig& prec) {
  if (!prec.is_certified()) return Enclosure::point_estimate(laguerre_log(n, x.get_d()).value());
  prec.validate();
  return refine(prec, [&](Bits bits) {
    return laguerre_recurrence(n, Enclosure::from_rational(x, bits));
  });
}

mpq_class laguerre_explicit(unsigned n, const mpq_class& x) {
  if (n > 64) throw Error(Errc::order_too_large, "exact expansion limited to n <= 64");
  mpq_class sum = 0;
  mpq_class power = 1;  // (-x)^k / k!
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) power *= -x / k;
    sum += mpq_class(binomial(n, k)) * power;
  }
  sum.canonicalize();
  return sum;
}

double szego_bound(double x) {
  if (x < 0) throw Error(Errc::negative_argument, "bound needs x >= 0");
  Enclosure h = Enclosure::from_double(x, 64) / 2;
  return exp(h).upper();
}

mpz_class crude_constant(unsigned n) { return (n + 1) * binomial(n, n / 2); }

Enclosure crude_bound(unsigned n, const Enclosure& x) {
  if (mpfr_cmp_ui(x.lo(), 1) < 0)
    throw Error(Errc::domain_error, "crude bound needs x >= 1");
  return Enclosure::from_rational(mpq_class(crude_constant(n)), x.precision()) * pow(x, n);
}

Enclosure crude_bound(unsigned n, double x, Bits bits) {
  if (!(x >= 1)) throw Error(Errc::domain_error, "crude bound needs x >= 1");
  return crude_bound(n, Enclosure::from_double(x, bits));
}

double largest_root_upper(unsigned n) {
  Enclosure c(static_cast<long>(2 * n + 1), 128);
  Enclosure r = c + sqrt(square(c) + Enclosure::from_rational(mpq_class(1, 4), 128));
  return r.upper();
}

KrasikovBounds krasikov_layer_bounds(unsigned n, Bits bits) {
  if (n < 11) throw Error(Errc::order_too_small, "layer bounds need n >= 11");
  Enclosure pi = pi_enclosure(bits);
  long n1 = static_cast<long>(n) + 1;
  Enclosure two(2, bits);
  Enclosure b1 = exp((pi + 1) * n1);
  Enclosure b2 = exp(pi * n1 / 2) * sqrt(two / static_cast<long>(n));
  Enclosure tail_exp = -(Enclosure::from_rational(mpq_class(1, 10), bits) * static_cast<long>(n) +
                         Enclosure::from_rational(mpq_class(43, 50), bits));
  Enclosure b3 = exp(pi * n1) * sqrt(two / pi) * exp(tail_exp);
  return {b1, b2, b3};
}

Enclosure kras1_bound(unsigned n, const Enclosure& x, double endpoint_margin) {
  if (n < 2) throw Error(Errc::domain_error, "estimate needs n >= 2");
  Bits bits = x.precision();
  Enclosure root = sqrt(Enclosure(static_cast<long>(n), bits) * static_cast<long>(n + 1));
  Enclosure c(static_cast<long>(2 * n + 1), bits);
  Enclosure q2 = c - root * 2;
  Enclosure s2 = c + root * 2;
  Enclosure left = x - q2;
  Enclosure right = s2 - x;
  if (!left.certainly_above(endpoint_margin) || !right.certainly_above(endpoint_margin))
    throw Error(Errc::domain_error, "argument outside the open interval (q^2, s^2)");
  return exp(x / 2) * sqrt((s2 - q2) / (left * right));
}

double kras1_bound(unsigned n, double x, const PrecisionConfig& prec) {
  Bits bits = std::max<Bits>(prec.start_bits(), 128);
  // a double cannot sit closer to an irrational endpoint than its own rounding
  double margin = std::max(prec.target_width, 1e-12 * std::fabs(x));
  return kras1_bound(n, Enclosure::from_double(x, bits), margin).upper();
}

double incomplete_gamma_upper(double s, double x, double B) {
  if (!(B > 1) || !(s > 0) || !std::isfinite(x))
    throw Error(Errc::hypothesis_violated, "needs B > 1 and s > 0");
  mpq_class qs(s), qx(x), qB(B);
  if (!(qx > 0) || !(qx * (qB - 1) > qB * (qs - 1)))
    throw Error(Errc::hypothesis_violated, "needs x > B(s-1)/(B-1)");
  Bits bits = 128;
  Enclosure X = Enclosure::from_double(x, bits);
  Enclosure sm1 = Enclosure::from_double(s, bits) - Enclosure(1, bits);
  Enclosure r = Enclosure::from_double(B, bits) * exp(sm1 * log(X) - X);
  return r.upper();
}

Enclosure incomplete_gamma_upper(unsigned long s, const Enclosure& x, long B) {
  if (B <= 1 || s == 0) throw Error(Errc::hypothesis_violated, "needs B > 1 and s > 0");
  mpq_class threshold(static_cast<long>(B) * static_cast<long>(s - 1), B - 1);
  if (!x.certainly_above(threshold) || mpfr_sgn(x.lo()) <= 0)
    throw Error(Errc::hypothesis_violated, "needs x > B(s-1)/(B-1)");
  return pow(x, s - 1) * exp(-x) * B;
}

Enclosure gamma_tail_sum(unsigned n, const Enclosure& gamma, unsigned long A) {
  if (A == 0) throw Error(Errc::hypothesis_violated, "tail must start at m >= 1");
  Bits bits = std::max<Bits>(gamma.precision(), 128);
  Enclosure c = pi_enclosure(bits) * gamma / 2;
  unsigned long A2 = std::max(2 * A, A + 16);
  Enclosure cA2 = c * static_cast<long>(A2);
  if (!cA2.certainly_above(static_cast<double>(2 * (n + 1))))
    throw Error(Errc::hypothesis_violated, "tail needs pi*gamma*A' > 4(n+1)");
  Enclosure sum(0, bits);
  for (unsigned long m = A; m < A2; ++m) {
    std::uint64_t count = r2(m);
    if (count == 0) continue;
    Enclosure M(static_cast<long>(m), bits);
    sum += pow(M, n) * exp(-(c * M)) * static_cast<long>(count);
  }
  // beyond A': r2(m) <= 4m and m^{n+1} e^{-cm} is decreasing there
  Enclosure M2(static_cast<long>(A2), bits);
  Enclosure head = pow(M2, n + 1) * exp(-cA2);
  Enclosure integral = incomplete_gamma_upper(n + 2, cA2, 2) / pow(c, n + 2);
  Enclosure rest = (head + integral) * 4;
  return sum + zero_to_upper(rest);
}

double gamma_tail_bound(unsigned n, double gamma, double a) {
  if (!(a >= 2)) throw Error(Errc::hypothesis_violated, "needs a >= 2");
  if (!(gamma > 0) || !std::isfinite(gamma) || !std::isfinite(a))
    throw Error(Errc::hypothesis_violated, "needs gamma > 0");
  Bits bits = 256;
  Enclosure G = Enclosure::from_double(gamma, bits);
  Enclosure a2 = square(Enclosure::from_double(a, bits));
  if (!(a2 * pi_enclosure(bits) * G).certainly_above(static_cast<double>(2 * n + 2)))
    throw Error(Errc::hypothesis_violated, "needs gamma > (2n+2)/(a^2 pi)");
  auto A = static_cast<unsigned long>(std::ceil(a * a * (1 - 1e-12)));
  return gamma_tail_sum(n, G, A).upper();
}

Enclosure power_geometric_tail(unsigned p, const Enclosure& q, unsigned long N,
                               const PrecisionConfig& prec) {
  if (p == 0 || N == 0) throw Error(Errc::invalid_argument, "needs p >= 1 and N >= 1");
  if (!q.certainly_above(0.0) || !q.certainly_below(1.0))
    throw Error(Errc::hypothesis_violated, "needs 0 < q < 1");
  Bits bits = std::max<Bits>(q.precision(), 128);
  // m^p q^m is non-increasing from N on iff ((N+1)/N)^p q <= 1
  Enclosure first_ratio = pow(Enclosure(static_cast<long>(N + 1), bits) / static_cast<long>(N), p) * q;
  if (!first_ratio.upper_at_most(1.0))
    throw Error(Errc::hypothesis_violated, "terms not yet decreasing at N");

  const unsigned long kMaxTerms = 10'000'000;
  Enclosure rel = Enclosure::from_double(prec.target_width, bits);
  Enclosure sum(0, bits);
  Enclosure term = pow(Enclosure(static_cast<long>(N), bits), p) * pow(q, N);
  for (unsigned long m = N; m < N + kMaxTerms; ++m) {
    sum += term;
    Enclosure ratio = pow(Enclosure(static_cast<long>(m + 1), bits) / static_cast<long>(m), p) * q;
    if (ratio.certainly_below(1.0)) {
      Enclosure rem = term * ratio / (1L - ratio);
      if (mpfr_sgn(rem.hi()) == 0 || rem.upper_below(sum * rel))
        return sum + zero_to_upper(rem);
    }
    term *= ratio;
  }
  throw Error(Errc::precision_exhausted, "geometric tail did not converge");
}

Enclosure power_geometric_tail(unsigned p, double q, unsigned long N,
                               const PrecisionConfig& prec) {
  return power_geometric_tail(p, Enclosure::from_double(q, 128), N, prec);
}

}  // namespace janssen
