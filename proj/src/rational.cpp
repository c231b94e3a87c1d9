#include "janssen/rational.hpp"

#include <cctype>

#include "janssen/errors.hpp"

namespace janssen {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& text) {
  throw Error(Errc::invalid_argument, "not a rational number: '" + text + "'");
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class num = parse_rational(s.substr(0, slash));
    mpq_class den = parse_rational(s.substr(slash + 1));
    if (den == 0) bad(text);
    mpq_class r = num / den;
    r.canonicalize();
    return r;
  }

  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string mant = s.substr(i);
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    std::string ex = mant.substr(e + 1);
    mant = mant.substr(0, e);
    bool eneg = false;
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
      eneg = ex[0] == '-';
      ex = ex.substr(1);
    }
    if (!all_digits(ex) || ex.size() > 6) bad(text);
    exp10 = std::stol(ex);
    if (eneg) exp10 = -exp10;
  }
  std::string ip = mant, fp;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    ip = mant.substr(0, dot);
    fp = mant.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) bad(text);
  if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) bad(text);

  mpz_class digits(ip + fp, 10);
  exp10 -= static_cast<long>(fp.size());
  mpq_class r(digits);
  if (exp10 >= 0)
    r *= mpq_class(pow10(static_cast<unsigned long>(exp10)));
  else
    r /= mpq_class(pow10(static_cast<unsigned long>(-exp10)));
  r.canonicalize();
  return neg ? mpq_class(-r) : r;
}

std::string to_decimal(const mpq_class& value, int digits) {
  mpq_class v = abs(value);
  mpz_class ip = v.get_num() / v.get_den();
  mpq_class frac = v - mpq_class(ip);
  std::string out = value < 0 ? "-" : "";
  out += ip.get_str();
  std::string f;
  for (int k = 0; k < digits && frac != 0; ++k) {
    frac *= 10;
    mpz_class d = frac.get_num() / frac.get_den();
    f += d.get_str();
    frac -= mpq_class(d);
  }
  if (!f.empty()) out += "." + f;
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpq_class to_rational(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) throw Error(Errc::domain_error, "non-finite value has no rational form");
  mpq_class r;
  mpfr_get_q(r.get_mpq_t(), x);
  return r;
}

mpq_class ceil_decimal(const mpq_class& x, int digits) {
  mpz_class scale = pow10(static_cast<unsigned long>(digits));
  mpq_class scaled = x * mpq_class(scale);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpq_class r(c, scale);
  r.canonicalize();
  return r;
}

namespace {

double to_double(const mpq_class& x, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, x.get_mpq_t(), rnd);
  double d = mpfr_get_d(t, rnd);
  mpfr_clear(t);
  return d;
}

}  // namespace

double to_double_up(const mpq_class& x) { return to_double(x, MPFR_RNDU); }
double to_double_down(const mpq_class& x) { return to_double(x, MPFR_RNDD); }
double to_double_nearest(const mpq_class& x) { return to_double(x, MPFR_RNDN); }

}  // namespace janssen
