#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

#include "janssen/errors.hpp"
#include "janssen/precision.hpp"

namespace janssen {

inline constexpr Bits kDefaultBits = 128;

/// A closed interval [lo, hi] with MPFR endpoints.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the result contains the exact value whenever the
/// operands do. The precision of a result is the larger operand precision.
class Enclosure {
 public:
  explicit Enclosure(Bits bits = kDefaultBits);
  Enclosure(long value, Bits bits);

  static Enclosure from_double(double value, Bits bits);
  static Enclosure from_rational(const mpq_class& value, Bits bits);
  static Enclosure from_bounds(double lo, double hi, Bits bits);
  /// Endpoints as written by lo_string()/hi_string(); read with round-to-nearest
  /// at `bits`, which restores them exactly.
  static Enclosure from_strings(const std::string& lo, const std::string& hi, Bits bits);
  /// Degenerate enclosure used by fast mode (lo = hi = estimate).
  static Enclosure point_estimate(double value);
  static Enclosure hull(const Enclosure& a, const Enclosure& b);

  Enclosure(const Enclosure& other);
  Enclosure(Enclosure&& other) noexcept;
  Enclosure& operator=(const Enclosure& other);
  Enclosure& operator=(Enclosure&& other) noexcept;
  ~Enclosure();

  Bits precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }

  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double midpoint() const;
  /// hi - lo, rounded up.
  double width() const;
  /// max(|lo|, |hi|), rounded up.
  double magnitude() const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

  bool contains(double value) const;
  bool contains(const mpq_class& value) const;
  bool contains(const Enclosure& inner) const;
  bool intersects(const Enclosure& other) const;

  bool certainly_below(double bound) const { return mpfr_cmp_d(hi_, bound) < 0; }
  bool certainly_below(const mpq_class& bound) const { return mpfr_cmp_q(hi_, bound.get_mpq_t()) < 0; }
  bool certainly_above(double bound) const { return mpfr_cmp_d(lo_, bound) > 0; }
  bool certainly_above(const mpq_class& bound) const { return mpfr_cmp_q(lo_, bound.get_mpq_t()) > 0; }
  bool upper_at_most(double bound) const { return mpfr_cmp_d(hi_, bound) <= 0; }
  bool upper_at_most(const mpq_class& bound) const { return mpfr_cmp_q(hi_, bound.get_mpq_t()) <= 0; }
  bool upper_below(const Enclosure& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

  /// Shortest decimal strings that read back exactly at this precision.
  std::string lo_string() const;
  std::string hi_string() const;

  /// Same endpoints (precision is not compared).
  bool operator==(const Enclosure& other) const;

  Enclosure& operator+=(const Enclosure& rhs);
  Enclosure& operator-=(const Enclosure& rhs);
  Enclosure& operator*=(const Enclosure& rhs);
  Enclosure& operator/=(const Enclosure& rhs);
  Enclosure& operator*=(long rhs);
  Enclosure& operator/=(long rhs);

  /// [lo - r, hi + r] for r >= 0.
  Enclosure widened(double radius) const;
  /// [lo, hi + extra] for extra >= 0.
  Enclosure extended_up(double extra) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Enclosure operator-(const Enclosure& x);
Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator/(const Enclosure& a, const Enclosure& b);
Enclosure operator+(const Enclosure& a, long b);
Enclosure operator-(long a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, long b);
Enclosure operator/(const Enclosure& a, long b);

Enclosure abs(const Enclosure& x);
Enclosure square(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);
Enclosure exp(const Enclosure& x);
Enclosure log(const Enclosure& x);
Enclosure pow(const Enclosure& x, unsigned long k);
Enclosure intersect(const Enclosure& a, const Enclosure& b);
Enclosure pi_enclosure(Bits bits);
/// [0, hi] for an enclosure of a non-negative quantity; keeps only its upper bound.
Enclosure zero_to_upper(const Enclosure& x);

/// Upper endpoint of an exact sum of two upper bounds, rounded up to double.
double add_up(double a, double b);

/// Re-evaluates `eval(bits)` at doubling precision until the result is
/// narrower than the configured target width.
template <class F>
Enclosure refine(const PrecisionConfig& prec, F&& eval) {
  for (Bits bits = prec.start_bits();; bits *= 2) {
    if (bits > prec.bits) bits = prec.bits;
    Enclosure r = eval(bits);
    if (r.width() <= prec.target_width) return r;
    if (bits >= prec.bits)
      throw Error(Errc::precision_exhausted,
                  "width " + std::to_string(r.width()) + " at " + std::to_string(bits) + " bits");
  }
}

inline double one_like(double) { return 1.0; }
inline Enclosure one_like(const Enclosure& x) { return Enclosure(1, x.precision()); }
inline double zero_like(double) { return 0.0; }
inline Enclosure zero_like(const Enclosure& x) { return Enclosure(0, x.precision()); }

}  // namespace janssen
