#include "janssen/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "janssen/errors.hpp"
#include "janssen/rational.hpp"
#include "janssen/specfun.hpp"

namespace janssen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Bits kTailBits = 256;

mpq_class exact(double v) {
  if (!std::isfinite(v)) throw Error(Errc::domain_error, "coordinates must be finite");
  return mpq_class(v);
}

// |L_n(pi r2)| e^{-pi r2 / 2} at working precision.
Enclosure mag_at(unsigned n, const mpq_class& norm_sq, Bits bits) {
  if (norm_sq == 0) return Enclosure(1, bits);
  Enclosure x = pi_enclosure(bits) * Enclosure::from_rational(norm_sq, bits);
  return abs(laguerre_recurrence(n, x)) * exp(-x / 2);
}

// Signed L_n(pi r2) e^{-pi r2 / 2}.
Enclosure signed_at(unsigned n, const mpq_class& norm_sq, Bits bits) {
  if (norm_sq == 0) return Enclosure(1, bits);
  Enclosure x = pi_enclosure(bits) * Enclosure::from_rational(norm_sq, bits);
  return laguerre_recurrence(n, x) * exp(-x / 2);
}

double mag_fast(unsigned n, double norm_sq) {
  if (norm_sq == 0) return 1.0;
  double x = M_PI * norm_sq;
  return laguerre_log(n, x).damped(x / 2);
}

std::vector<LatticePoint> finite_points(const RectLattice& adj, const Cutoff& c) {
  if (c.kind == CutoffKind::max_norm) return enumerate_box(adj, static_cast<long>(c.value));
  return enumerate_disc(adj, c.value);
}

mpq_class frac_mod2(const mpq_class& t) {
  // t - 2 floor(t/2), in [0, 2)
  mpq_class half = t / 2;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  mpq_class r = t - mpq_class(2 * f);
  r.canonicalize();
  return r;
}

}  // namespace

Cutoff Cutoff::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = colon == std::string::npos ? "max" : text.substr(0, colon);
  std::string num = colon == std::string::npos ? text : text.substr(colon + 1);
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos || num.size() > 9)
    throw Error(Errc::invalid_argument, "bad cutoff '" + text + "'");
  std::uint64_t v = std::stoull(num);
  if (kind == "max" || kind == "maxnorm" || kind == "max_norm") return max_norm(v);
  if (kind == "euclid") {
    if (v == 0) throw Error(Errc::invalid_argument, "euclid cutoff must be positive");
    return euclid(v);
  }
  throw Error(Errc::invalid_argument, "bad cutoff kind '" + kind + "'");
}

std::string Cutoff::to_string() const {
  return (kind == CutoffKind::max_norm ? "max:" : "euclid:") + std::to_string(value);
}

const char* to_string(TailKind kind) {
  return kind == TailKind::crude_plus_power_geo ? "crude-plus-power-geo" : "gamma-integral";
}

TailKind tail_kind_from_string(const std::string& s) {
  if (s == "crude-plus-power-geo") return TailKind::crude_plus_power_geo;
  if (s == "gamma-integral") return TailKind::gamma_integral;
  throw Error(Errc::invalid_argument, "unknown tail strategy '" + s + "'");
}

const char* to_string(Verdict v) {
  return v == Verdict::frame_certified ? "frame-certified" : "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "frame-certified") return Verdict::frame_certified;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw Error(Errc::invalid_argument, "unknown verdict '" + s + "'");
}

const char* to_string(Mode m) { return m == Mode::fast ? "fast" : "certified"; }

Mode mode_from_string(const std::string& s) {
  if (s == "fast") return Mode::fast;
  if (s == "certified") return Mode::certified;
  throw Error(Errc::invalid_argument, "unknown mode '" + s + "'");
}

Enclosure JanssenReport::total() const {
  if (std::isinf(tail_upper)) {
    Enclosure r = finite_part;
    mpfr_set_inf(r.hi_mut(), 1);
    return r;
  }
  return finite_part + Enclosure::from_bounds(0.0, tail_upper, finite_part.precision());
}

const LedgerEntry* JanssenReport::find(const std::string& name) const {
  for (const auto& e : ledger)
    if (e.name == name) return &e;
  return nullptr;
}

bool JanssenReport::operator==(const JanssenReport& o) const {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  if (ledger.size() != o.ledger.size()) return false;
  for (size_t i = 0; i < ledger.size(); ++i)
    if (ledger[i].name != o.ledger[i].name || !same(ledger[i].value, o.ledger[i].value))
      return false;
  return n == o.n && lattice == o.lattice && strategy == o.strategy && mode == o.mode &&
         finite_part == o.finite_part && same(tail_upper, o.tail_upper) &&
         same(total_upper, o.total_upper) && verdict == o.verdict && certified == o.certified;
}

Enclosure ambiguity_mag_norm(HermiteWindow h, const mpq_class& norm_sq, const PrecisionConfig& prec) {
  if (norm_sq < 0) throw Error(Errc::domain_error, "negative squared norm");
  if (norm_sq == 0) return Enclosure(1, prec.is_certified() ? prec.start_bits() : 53);
  if (!prec.is_certified()) return Enclosure::point_estimate(mag_fast(h.n, norm_sq.get_d()));
  prec.validate();
  return refine(prec, [&](Bits bits) { return mag_at(h.n, norm_sq, bits); });
}

Enclosure ambiguity_mag(HermiteWindow h, double x, double w, const PrecisionConfig& prec) {
  mpq_class r2 = exact(x) * exact(x) + exact(w) * exact(w);
  return ambiguity_mag_norm(h, r2, prec);
}

std::pair<Enclosure, Enclosure> phase_enclosure(const mpq_class& t, Bits bits) {
  mpq_class r = frac_mod2(t);
  // quarter turns are exact
  mpq_class twice = r * 2;
  twice.canonicalize();
  if (twice.get_den() == 1) {
    long q = twice.get_num().get_si();
    static const long cs[4][2] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return {Enclosure(cs[q][0], bits), Enclosure(cs[q][1], bits)};
  }
  Enclosure theta = pi_enclosure(bits) * Enclosure::from_rational(r, bits);
  // cos and sin are 1-Lipschitz: evaluate at the midpoint and widen by the radius
  mpfr_t mid, radius, v;
  mpfr_inits2(bits + 8, mid, radius, v, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(mid, theta.lo(), theta.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(radius, theta.hi(), mid, MPFR_RNDU);
  mpfr_sub(v, mid, theta.lo(), MPFR_RNDU);
  mpfr_max(radius, radius, v, MPFR_RNDU);
  Enclosure c(bits), s(bits);
  mpfr_cos(c.lo_mut(), mid, MPFR_RNDD);
  mpfr_cos(c.hi_mut(), mid, MPFR_RNDU);
  mpfr_sin(s.lo_mut(), mid, MPFR_RNDD);
  mpfr_sin(s.hi_mut(), mid, MPFR_RNDU);
  double rad = mpfr_get_d(radius, MPFR_RNDU);
  mpfr_clears(mid, radius, v, static_cast<mpfr_ptr>(nullptr));
  Enclosure unit = Enclosure(-1, bits);
  mpfr_set_si(unit.hi_mut(), 1, MPFR_RNDU);
  c = intersect(c.widened(rad), unit);
  s = intersect(s.widened(rad), unit);
  return {c, -s};
}

std::pair<Enclosure, Enclosure> ambiguity_signed(HermiteWindow h, double x, double w,
                                                 const PrecisionConfig& prec) {
  mpq_class qx = exact(x), qw = exact(w);
  mpq_class r2 = qx * qx + qw * qw;
  mpq_class t = qx * qw;
  if (!prec.is_certified()) {
    double v = r2 == 0 ? 1.0 : laguerre_log(h.n, M_PI * r2.get_d()).value() *
                                   std::exp(-M_PI * r2.get_d() / 2);
    double th = M_PI * t.get_d();
    return {Enclosure::point_estimate(v * std::cos(th)), Enclosure::point_estimate(-v * std::sin(th))};
  }
  prec.validate();
  for (Bits bits = prec.start_bits();; bits *= 2) {
    bits = std::min(bits, prec.bits);
    Enclosure v = signed_at(h.n, r2, bits);
    auto [c, s] = phase_enclosure(t, bits);
    Enclosure re = v * c, im = v * s;
    if (re.width() <= prec.target_width && im.width() <= prec.target_width) return {re, im};
    if (bits >= prec.bits) throw Error(Errc::precision_exhausted, "signed value too wide");
  }
}

TailDetail tail_bound_detail(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy,
                             Bits bits) {
  unsigned n = h.n;
  RectLattice adj = L.adjoint();
  mpq_class s2 = adj.min_step_squared();
  Enclosure pi = pi_enclosure(bits);
  Enclosure S2 = Enclosure::from_rational(s2, bits);
  Enclosure piS2 = pi * S2;
  const Cutoff& c = strategy.cutoff;

  if (strategy.kind == TailKind::crude_plus_power_geo) {
    if (c.kind != CutoffKind::max_norm)
      throw Error(Errc::invalid_argument, "power-geometric tail needs a max-norm cutoff");
    unsigned long N = (c.value + 1) * (c.value + 1);
    if (mpfr_cmp_ui((piS2 * static_cast<long>(N)).lo(), 2 * (n + 1)) < 0)
      throw Error(Errc::hypothesis_violated,
                  "tail needs pi s^2 (M+1)^2 >= 2(n+1); enlarge the cutoff");
    // |L_n(x)| <= C_n x^n for x >= 1, r2(m) <= 4m, and every point outside the box has m >= N
    Enclosure prefactor =
        Enclosure::from_rational(mpq_class(crude_constant(n)), bits) * pow(piS2, n) * 4;
    Enclosure q = exp(-piS2 / 2);
    PrecisionConfig pc = PrecisionConfig::certified(bits, 1e-30);
    Enclosure series = power_geometric_tail(n + 1, q, N, pc);
    return {prefactor, series, prefactor * series};
  }

  if (c.kind != CutoffKind::euclid)
    throw Error(Errc::invalid_argument, "gamma-integral tail needs a euclid cutoff");
  unsigned long R2 = c.value;
  if (!(piS2 * static_cast<long>(R2) / 2).certainly_above(static_cast<double>(n + 1)))
    throw Error(Errc::hypothesis_violated,
                "tail needs (pi s^2 / 2) R2 > n+1; enlarge the cutoff");
  Enclosure prefactor(bits);
  if (adj.is_square()) {
    // |L_n(x m)| <= L_n(-x m) <= m^n L_n(-x) for m >= 1
    prefactor = laguerre_recurrence(n, -piS2);
  } else {
    prefactor = Enclosure::from_rational(mpq_class(crude_constant(n)), bits) * pow(piS2, n);
  }
  Enclosure series = gamma_tail_sum(n, S2, R2);
  return {prefactor, series, prefactor * series};
}

double tail_bound(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy) {
  return tail_bound_detail(h, L, strategy).total.upper();
}

JanssenReport janssen_sum(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy,
                          const PrecisionConfig& prec) {
  if (strategy.kind != TailStrategy::for_cutoff(strategy.cutoff).kind)
    throw Error(Errc::invalid_argument, "tail strategy does not match the cutoff kind");
  JanssenReport rep;
  rep.n = h.n;
  rep.lattice = L;
  rep.strategy = strategy;
  rep.mode = prec.mode;
  rep.certified = prec.is_certified();

  RectLattice adj = L.adjoint();
  auto groups = group_by_norm(finite_points(adj, strategy.cutoff));

  std::vector<LedgerEntry> notes;
  Enclosure tail(kTailBits);
  bool tail_ok = true;
  try {
    TailDetail td = tail_bound_detail(h, L, strategy, kTailBits);
    tail = td.total;
    notes.push_back({"tail_prefactor", td.prefactor.upper()});
    notes.push_back({"tail_series", td.series.upper()});
  } catch (const Error& e) {
    if (prec.is_certified() || e.code() != Errc::hypothesis_violated) throw;
    tail_ok = false;
    notes.push_back({"tail_hypothesis_violated", 1});
  }

  if (prec.is_certified()) {
    prec.validate();
    rep.finite_part = refine(prec, [&](Bits bits) {
      Enclosure sum(0, bits);
      for (const auto& g : groups)
        sum += mag_at(h.n, g.front().norm_sq, bits) * static_cast<long>(g.size());
      return sum;
    });
  } else {
    double sum = 0;
    for (const auto& g : groups) sum += mag_fast(h.n, g.front().norm_sq.get_d()) * g.size();
    rep.finite_part = Enclosure::point_estimate(sum);
  }

  rep.tail_upper = tail_ok ? tail.upper() : kInf;
  Enclosure total = rep.total();
  rep.total_upper = total.upper();
  rep.verdict = tail_ok && total.certainly_below(2.0) ? Verdict::frame_certified
                                                      : Verdict::inconclusive;

  size_t points = 0;
  for (const auto& g : groups) points += g.size();
  rep.ledger.push_back({"points", static_cast<double>(points)});
  rep.ledger.push_back({"distinct_norms", static_cast<double>(groups.size())});
  rep.ledger.push_back({"finite_part_upper", rep.finite_part.upper()});
  for (auto& e : notes) rep.ledger.push_back(std::move(e));
  rep.ledger.push_back({"tail_upper", rep.tail_upper});
  rep.ledger.push_back({"total_upper", rep.total_upper});
  rep.ledger.push_back({"margin_to_two", (Enclosure(2, 64) - total).lower()});
  rep.ledger.push_back({"certified", rep.certified ? 1.0 : 0.0});
  return rep;
}

std::pair<Enclosure, Enclosure> signed_lattice_sum(HermiteWindow h, const mpq_class& delta,
                                                   const Cutoff& cutoff,
                                                   const PrecisionConfig& prec) {
  if (cutoff.kind != CutoffKind::max_norm)
    throw Error(Errc::invalid_argument, "signed sums use a max-norm cutoff");
  RectLattice L = square_lattice(delta);
  auto points = enumerate_box(L.adjoint(), static_cast<long>(cutoff.value));
  double tail = tail_bound(h, L, TailStrategy::for_cutoff(cutoff));

  if (!prec.is_certified()) {
    double re = 0, im = 0;
    for (const auto& p : points) {
      double r2 = p.norm_sq.get_d();
      double v = r2 == 0 ? 1.0 : laguerre_log(h.n, M_PI * r2).value() * std::exp(-M_PI * r2 / 2);
      double th = M_PI * mpq_class(delta * p.k * p.l).get_d();
      re += v * std::cos(th);
      im -= v * std::sin(th);
    }
    return {Enclosure::point_estimate(re), Enclosure::point_estimate(im)};
  }

  prec.validate();
  for (Bits bits = prec.start_bits();; bits *= 2) {
    bits = std::min(bits, prec.bits);
    Enclosure re(0, bits), im(0, bits);
    for (const auto& g : group_by_norm(points)) {
      Enclosure v = signed_at(h.n, g.front().norm_sq, bits);
      for (const auto& p : g) {
        // the adjoint point is (sqrt(delta) k, sqrt(delta) l), so x w = delta k l
        auto [c, s] = phase_enclosure(mpq_class(delta * p.k * p.l), bits);
        re += v * c;
        im += v * s;
      }
    }
    // only the finite part has to meet the target width; the tail is added afterwards
    if (re.width() <= prec.target_width && im.width() <= prec.target_width)
      return {re.widened(tail), im.widened(tail)};
    if (bits >= prec.bits) throw Error(Errc::precision_exhausted, "signed sum too wide");
  }
}

double upper_frame_bound_estimate(const JanssenReport& report) {
  Enclosure d = report.lattice.density(128);
  if (std::isinf(report.total_upper)) return kInf;
  return (d * Enclosure::from_double(report.total_upper, 128)).upper();
}

namespace {

// Finite layers m < R plus a tail bound for m >= R, each term weighted by r2(m).
template <class Term, class Tail>
Enclosure layered_sum(const mpq_class& delta, const PrecisionConfig& prec, long origin, Term term,
                      Tail tail) {
  if (delta < 1) throw Error(Errc::domain_error, "needs delta >= 1");
  Enclosure D = Enclosure::from_rational(delta, kTailBits);
  unsigned long R = 16;
  Enclosure t = tail(D, R);
  double budget = prec.is_certified() ? prec.target_width / 4 : 1e-18;
  while (!(t.width() <= budget)) {
    R *= 2;
    if (R > (1ul << 20)) throw Error(Errc::precision_exhausted, "tail does not shrink");
    t = tail(D, R);
  }
  auto eval = [&](Bits bits) {
    Enclosure Dd = Enclosure::from_rational(delta, bits);
    Enclosure pi = pi_enclosure(bits);
    Enclosure sum(origin, bits);
    for (unsigned long m = 1; m < R; ++m) {
      std::uint64_t c = r2(m);
      if (c == 0) continue;
      sum += term(pi, Dd, static_cast<long>(m)) * static_cast<long>(c);
    }
    return sum + t;
  };
  if (!prec.is_certified()) return Enclosure::point_estimate(eval(64).midpoint());
  prec.validate();
  return refine(prec, eval);
}

}  // namespace

Enclosure j1(const mpq_class& delta, const PrecisionConfig& prec) {
  auto term = [](const Enclosure& pi, const Enclosure& d, long m) {
    Enclosure x = pi * d * m;
    return (x - Enclosure(1, x.precision())) * exp(-x / 2);
  };
  // (pi d m - 1) e^{..} <= pi d * m e^{..}
  auto tail = [](const Enclosure& d, unsigned long R) {
    return zero_to_upper(pi_enclosure(d.precision()) * d * gamma_tail_sum(1, d, R));
  };
  return layered_sum(delta, prec, 1, term, tail);
}

Enclosure j1(double delta, const PrecisionConfig& prec) { return j1(exact(delta), prec); }

Enclosure j1_derivative(const mpq_class& delta, const PrecisionConfig& prec) {
  auto term = [](const Enclosure& pi, const Enclosure& d, long m) {
    Enclosure x = pi * d * m;
    return pi * m / 2 * (3L - x) * exp(-x / 2);
  };
  // terms are negative once pi d m > 3; |m (3 - pi d m)| <= pi d m^2
  auto tail = [](const Enclosure& d, unsigned long R) {
    Enclosure pi = pi_enclosure(d.precision());
    return -zero_to_upper(pi * pi * d / 2 * gamma_tail_sum(2, d, R));
  };
  return layered_sum(delta, prec, 0, term, tail);
}

Enclosure j1_derivative(double delta, const PrecisionConfig& prec) {
  return j1_derivative(exact(delta), prec);
}

}  // namespace janssen
