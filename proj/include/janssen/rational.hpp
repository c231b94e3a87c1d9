#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace janssen {

/// Parses "3", "-2", "3.06", "1e-3", "2.5E2" or "153/50" into an exact rational.
mpq_class parse_rational(const std::string& text);

/// Decimal rendering with up to `digits` fractional digits (exact when it terminates).
std::string to_decimal(const mpq_class& value, int digits = 12);

mpz_class binomial(unsigned long n, unsigned long k);

/// Exact value of an MPFR number.
mpq_class to_rational(mpfr_srcptr x);

/// ceil(x * 10^digits) / 10^digits, exactly.
mpq_class ceil_decimal(const mpq_class& x, int digits);

double to_double_up(const mpq_class& x);
double to_double_down(const mpq_class& x);
/// mpq_class::get_d truncates; this rounds to nearest.
double to_double_nearest(const mpq_class& x);

}  // namespace janssen
