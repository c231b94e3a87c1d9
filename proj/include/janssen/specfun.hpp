#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <vector>

#include "janssen/enclosure.hpp"
#include "janssen/precision.hpp"

namespace janssen {

/// sign * exp(log_mag); log_mag is -inf exactly when sign is 0.
struct LogSigned {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static LogSigned from_double(double v);
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
  /// |this| * exp(-shift), as a plain double.
  double damped(double shift) const { return sign == 0 ? 0.0 : std::exp(log_mag - shift); }
};

/// L_n(x) by the three-term recurrence, in whatever scalar type x has.
template <class Scalar>
Scalar laguerre_recurrence(unsigned n, const Scalar& x) {
  Scalar prev = one_like(x);
  if (n == 0) return prev;
  Scalar cur = one_like(x) - x;
  for (unsigned k = 1; k < n; ++k) {
    Scalar next = ((static_cast<long>(2 * k + 1) - x) * cur - prev * static_cast<long>(k)) /
                  static_cast<long>(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <>
inline double laguerre_recurrence<double>(unsigned n, const double& x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (unsigned k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Taylor coefficients L_n^{(j)}(x)/j! for j = 0..n; the expansion is exact
/// because L_n has degree n.
std::vector<Enclosure> laguerre_taylor(unsigned n, const Enclosure& x);

/// Enclosure of {L_n(t) : t in X}, via the Taylor form about the midpoint of X.
Enclosure laguerre_range(unsigned n, const Enclosure& X);

/// L_n(x) in double precision with rescaling, so large orders do not overflow.
LogSigned laguerre_log(unsigned n, double x);

Enclosure laguerre_eval(unsigned n, double x, const PrecisionConfig& prec);
Enclosure laguerre_eval(unsigned n, const mpq_class& x, const PrecisionConfig& prec);

/// Exact sum_k C(n,k) (-x)^k / k!, for n <= 64.
mpq_class laguerre_explicit(unsigned n, const mpq_class& x);

/// e^{x/2}, rounded up.
double szego_bound(double x);

/// (n+1) C(n, floor(n/2)) x^n for x >= 1.
Enclosure crude_bound(unsigned n, double x, Bits bits = kDefaultBits);
Enclosure crude_bound(unsigned n, const Enclosure& x);
/// (n+1) C(n, floor(n/2)).
mpz_class crude_constant(unsigned n);

/// 2n+1 + sqrt((2n+1)^2 + 1/4), rounded up.
double largest_root_upper(unsigned n);

struct KrasikovBounds {
  Enclosure b1;  ///< bounds L_n(-pi(n+1))
  Enclosure b2;  ///< bounds |L_n(pi(n+1))|
  Enclosure b3;  ///< bounds |L_n(2pi(n+1))|
};

/// Requires n >= 11.
KrasikovBounds krasikov_layer_bounds(unsigned n, Bits bits = 256);

/// e^{x/2} sqrt((s^2-q^2)/((x-q^2)(s^2-x))) with q, s = sqrt(n+1) -/+ sqrt(n).
double kras1_bound(unsigned n, double x, const PrecisionConfig& prec = {});
Enclosure kras1_bound(unsigned n, const Enclosure& x, double endpoint_margin);

/// B x^{s-1} e^{-x} >= Gamma(s, x) when x > B(s-1)/(B-1).
double incomplete_gamma_upper(double s, double x, double B);
Enclosure incomplete_gamma_upper(unsigned long s, const Enclosure& x, long B);

/// Upper bound for sum over (k,l) with k^2+l^2 >= a^2 of (k^2+l^2)^n e^{-(pi gamma/2)(k^2+l^2)}.
double gamma_tail_bound(unsigned n, double gamma, double a);
/// Same sum restricted to k^2+l^2 >= A, with gamma given as an enclosure.
Enclosure gamma_tail_sum(unsigned n, const Enclosure& gamma, unsigned long A);

/// Upper bound for sum_{m >= N} m^p q^m, with lo = the summed part.
Enclosure power_geometric_tail(unsigned p, const Enclosure& q, unsigned long N,
                               const PrecisionConfig& prec = {});
Enclosure power_geometric_tail(unsigned p, double q, unsigned long N,
                               const PrecisionConfig& prec = {});

}  // namespace janssen
