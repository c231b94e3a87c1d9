#include "janssen/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "janssen/errors.hpp"

namespace janssen {

namespace {

// Scratch MPFR value with RAII cleanup.
struct Tmp {
  mpfr_t v;
  explicit Tmp(Bits bits) { mpfr_init2(v, bits); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

Bits join(const Enclosure& a, const Enclosure& b) {
  return std::max(a.precision(), b.precision());
}

std::string exact_string(mpfr_srcptr x) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t e = 0;
  char* digits = mpfr_get_str(nullptr, &e, 10, 0, x, MPFR_RNDN);
  std::unique_ptr<char, void (*)(char*)> guard(digits, mpfr_free_str);
  std::string s(digits);
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s.erase(0, 1);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  std::string out = neg ? "-" : "";
  long exp10 = static_cast<long>(e) - 1;
  if (exp10 >= -5 && exp10 < 21) {
    if (exp10 < 0) {
      out += "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + s;
    } else {
      auto ip = static_cast<size_t>(exp10 + 1);
      if (s.size() <= ip) return out + s + std::string(ip - s.size(), '0');
      out += s.substr(0, ip) + "." + s.substr(ip);
    }
    return out;
  }
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::to_string(exp10);
  return out;
}

}  // namespace

Enclosure::Enclosure(Bits bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(long value, Bits bits) : Enclosure(bits) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Enclosure Enclosure::from_double(double value, Bits bits) {
  return from_bounds(value, value, bits);
}

Enclosure Enclosure::from_bounds(double lo, double hi, Bits bits) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw Error(Errc::invalid_argument, "enclosure bounds must satisfy lo <= hi");
  Enclosure r(bits);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Enclosure Enclosure::from_rational(const mpq_class& value, Bits bits) {
  Enclosure r(bits);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::from_strings(const std::string& lo, const std::string& hi, Bits bits) {
  Enclosure r(bits);
  // strings from lo_string()/hi_string() read back exactly under round-to-nearest
  if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDN) != 0)
    throw Error(Errc::invalid_argument, "bad enclosure endpoint '" + lo + "'");
  if (mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDN) != 0)
    throw Error(Errc::invalid_argument, "bad enclosure endpoint '" + hi + "'");
  if (mpfr_greater_p(r.lo_, r.hi_))
    throw Error(Errc::invalid_argument, "bad enclosure [" + lo + ", " + hi + "]");
  return r;
}

Enclosure Enclosure::point_estimate(double value) {
  Enclosure r(53);
  mpfr_set_d(r.lo_, value, MPFR_RNDN);
  mpfr_set_d(r.hi_, value, MPFR_RNDN);
  return r;
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  Enclosure r(join(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Enclosure::Enclosure(const Enclosure& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Enclosure& Enclosure::operator=(const Enclosure& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Enclosure::~Enclosure() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Enclosure::midpoint() const {
  Tmp m(precision() + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Enclosure::width() const {
  Tmp w(53);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

double Enclosure::magnitude() const {
  double a = std::fabs(mpfr_get_d(lo_, MPFR_RNDD));
  double b = std::fabs(mpfr_get_d(hi_, MPFR_RNDU));
  return std::max(a, b);
}

bool Enclosure::contains(double value) const {
  return mpfr_cmp_d(lo_, value) <= 0 && mpfr_cmp_d(hi_, value) >= 0;
}

bool Enclosure::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool Enclosure::intersects(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

std::string Enclosure::lo_string() const { return exact_string(lo_); }
std::string Enclosure::hi_string() const { return exact_string(hi_); }

bool Enclosure::operator==(const Enclosure& other) const {
  return mpfr_equal_p(lo_, other.lo_) && mpfr_equal_p(hi_, other.hi_);
}

Enclosure& Enclosure::operator+=(const Enclosure& rhs) { return *this = *this + rhs; }
Enclosure& Enclosure::operator-=(const Enclosure& rhs) { return *this = *this - rhs; }
Enclosure& Enclosure::operator*=(const Enclosure& rhs) { return *this = *this * rhs; }
Enclosure& Enclosure::operator/=(const Enclosure& rhs) { return *this = *this / rhs; }
Enclosure& Enclosure::operator*=(long rhs) { return *this = *this * rhs; }
Enclosure& Enclosure::operator/=(long rhs) { return *this = *this / rhs; }

Enclosure Enclosure::widened(double radius) const {
  Enclosure r(*this);
  mpfr_sub_d(r.lo_, r.lo_, radius, MPFR_RNDD);
  mpfr_add_d(r.hi_, r.hi_, radius, MPFR_RNDU);
  return r;
}

Enclosure Enclosure::extended_up(double extra) const {
  Enclosure r(*this);
  mpfr_add_d(r.hi_, r.hi_, extra, MPFR_RNDU);
  return r;
}

Enclosure operator-(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_neg(r.lo_mut(), x.hi(), MPFR_RNDD);
  mpfr_neg(r.hi_mut(), x.lo(), MPFR_RNDU);
  return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Enclosure r(join(a, b));
  mpfr_add(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  Enclosure r(join(a, b));
  mpfr_sub(r.lo_mut(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi_mut(), a.hi(), b.lo(), MPFR_RNDU);
  return r;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Bits bits = join(a, b);
  Enclosure r(bits);
  mpfr_srcptr ends_a[2] = {a.lo(), a.hi()};
  mpfr_srcptr ends_b[2] = {b.lo(), b.hi()};
  Tmp lo(bits), hi(bits);
  bool first = true;
  for (auto x : ends_a) {
    for (auto y : ends_b) {
      mpfr_mul(lo.v, x, y, MPFR_RNDD);
      mpfr_mul(hi.v, x, y, MPFR_RNDU);
      // 0 * inf is nan; the true product there is 0.
      if (mpfr_nan_p(lo.v)) mpfr_set_zero(lo.v, 1);
      if (mpfr_nan_p(hi.v)) mpfr_set_zero(hi.v, 1);
      if (first) {
        mpfr_set(r.lo_mut(), lo.v, MPFR_RNDD);
        mpfr_set(r.hi_mut(), hi.v, MPFR_RNDU);
        first = false;
      } else {
        mpfr_min(r.lo_mut(), r.lo(), lo.v, MPFR_RNDD);
        mpfr_max(r.hi_mut(), r.hi(), hi.v, MPFR_RNDU);
      }
    }
  }
  return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (mpfr_sgn(b.lo()) <= 0 && mpfr_sgn(b.hi()) >= 0)
    throw Error(Errc::domain_error, "division by an enclosure containing zero");
  Bits bits = join(a, b);
  Enclosure inv(bits);
  mpfr_ui_div(inv.lo_mut(), 1, b.hi(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_mut(), 1, b.lo(), MPFR_RNDU);
  return a * inv;
}

Enclosure operator+(const Enclosure& a, long b) { return a + Enclosure(b, a.precision()); }
Enclosure operator-(long a, const Enclosure& b) { return Enclosure(a, b.precision()) - b; }

Enclosure operator*(const Enclosure& a, long b) {
  Enclosure r(a.precision());
  if (b >= 0) {
    mpfr_mul_si(r.lo_mut(), a.lo(), b, MPFR_RNDD);
    mpfr_mul_si(r.hi_mut(), a.hi(), b, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_mut(), a.hi(), b, MPFR_RNDD);
    mpfr_mul_si(r.hi_mut(), a.lo(), b, MPFR_RNDU);
  }
  return r;
}

Enclosure operator/(const Enclosure& a, long b) {
  if (b == 0) throw Error(Errc::domain_error, "division by zero");
  Enclosure r(a.precision());
  if (b > 0) {
    mpfr_div_si(r.lo_mut(), a.lo(), b, MPFR_RNDD);
    mpfr_div_si(r.hi_mut(), a.hi(), b, MPFR_RNDU);
  } else {
    mpfr_div_si(r.lo_mut(), a.hi(), b, MPFR_RNDD);
    mpfr_div_si(r.hi_mut(), a.lo(), b, MPFR_RNDU);
  }
  return r;
}

Enclosure abs(const Enclosure& x) {
  if (mpfr_sgn(x.lo()) >= 0) return x;
  if (mpfr_sgn(x.hi()) <= 0) return -x;
  Enclosure r(x.precision());
  mpfr_set_zero(r.lo_mut(), 1);
  Tmp nlo(x.precision());
  mpfr_neg(nlo.v, x.lo(), MPFR_RNDU);
  mpfr_max(r.hi_mut(), nlo.v, x.hi(), MPFR_RNDU);
  return r;
}

Enclosure square(const Enclosure& x) {
  Enclosure m = abs(x);
  Enclosure r(x.precision());
  mpfr_sqr(r.lo_mut(), m.lo(), MPFR_RNDD);
  mpfr_sqr(r.hi_mut(), m.hi(), MPFR_RNDU);
  return r;
}

Enclosure sqrt(const Enclosure& x) {
  if (mpfr_sgn(x.lo()) < 0) throw Error(Errc::domain_error, "square root of a negative enclosure");
  Enclosure r(x.precision());
  mpfr_sqrt(r.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_sqrt(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

Enclosure exp(const Enclosure& x) {
  Enclosure r(x.precision());
  mpfr_exp(r.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_exp(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

Enclosure log(const Enclosure& x) {
  if (mpfr_sgn(x.lo()) <= 0) throw Error(Errc::domain_error, "log of a non-positive enclosure");
  Enclosure r(x.precision());
  mpfr_log(r.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_log(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

Enclosure pow(const Enclosure& x, unsigned long k) {
  if (k == 0) return Enclosure(1, x.precision());
  if (k % 2 == 0) {
    Enclosure m = abs(x);
    Enclosure r(x.precision());
    mpfr_pow_ui(r.lo_mut(), m.lo(), k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_mut(), m.hi(), k, MPFR_RNDU);
    return r;
  }
  Enclosure r(x.precision());
  mpfr_pow_ui(r.lo_mut(), x.lo(), k, MPFR_RNDD);
  mpfr_pow_ui(r.hi_mut(), x.hi(), k, MPFR_RNDU);
  return r;
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  if (!a.intersects(b)) throw Error(Errc::domain_error, "disjoint enclosures");
  Enclosure r(join(a, b));
  mpfr_max(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_min(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Enclosure pi_enclosure(Bits bits) {
  Enclosure r(bits);
  mpfr_const_pi(r.lo_mut(), MPFR_RNDD);
  mpfr_const_pi(r.hi_mut(), MPFR_RNDU);
  return r;
}

Enclosure zero_to_upper(const Enclosure& x) {
  if (mpfr_sgn(x.hi()) < 0) throw Error(Errc::domain_error, "negative upper bound");
  Enclosure r(x.precision());
  mpfr_set_zero(r.lo_mut(), 1);
  mpfr_set(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

double add_up(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a + b;
  Tmp s(53);
  mpfr_set_d(s.v, a, MPFR_RNDU);
  mpfr_add_d(s.v, s.v, b, MPFR_RNDU);
  return mpfr_get_d(s.v, MPFR_RNDU);
}

}  // namespace janssen
