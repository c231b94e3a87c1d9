#include <doctest.h>

#include <cmath>
#include <random>

#include "janssen/ambiguity.hpp"
#include "janssen/errors.hpp"
#include "janssen/rational.hpp"
#include "janssen/specfun.hpp"

using namespace janssen;

namespace {

const PrecisionConfig kCert = PrecisionConfig::certified();
const PrecisionConfig kFast = PrecisionConfig::fast();

// |L_n(pi r2)| e^{-pi r2 / 2} in long double, for brute-force comparisons.
long double term(unsigned n, long double r2) {
  long double x = 3.14159265358979323846264338327950288L * r2;
  long double a = 1, b = 1 - x;
  if (n == 0) return std::exp(-x / 2);
  for (unsigned k = 1; k < n; ++k) {
    long double c = ((2 * k + 1 - x) * b - k * a) / (k + 1);
    a = b;
    b = c;
  }
  return std::fabs(b) * std::exp(-x / 2);
}

// Sum over square-adjoint points (sqrt(delta) k, sqrt(delta) l) with inside(k, l) false
// and max(|k|, |l|) <= 60.
template <class Inside>
long double brute_outside(unsigned n, long delta, Inside inside) {
  long double s = 0;
  for (long k = -60; k <= 60; ++k)
    for (long l = -60; l <= 60; ++l)
      if (!inside(k, l)) s += term(n, static_cast<long double>(delta) * (k * k + l * l));
  return s;
}

}  // namespace

TEST_CASE("magnitude at simple points") {
  for (unsigned n : {0u, 1u, 7u, 40u}) {
    Enclosure v = ambiguity_mag({n}, 0, 0, kCert);
    CHECK(v.is_point());
    CHECK(v.contains(1.0));
  }
  Enclosure e = exp(-pi_enclosure(256));
  CHECK(ambiguity_mag({0}, 1, 1, kCert).intersects(e));
  CHECK(ambiguity_mag({0}, 1, 1, kCert).width() <= 1e-30);

  Enclosure pi = pi_enclosure(256);
  Enclosure want = abs(1L - pi * 2L) * exp(-pi);
  for (mpq_class r2 : {mpq_class(2)}) CHECK(ambiguity_mag_norm({1}, r2, kCert).intersects(want));
  CHECK(ambiguity_mag({1}, 0, std::sqrt(2.0), kCert).magnitude() == doctest::Approx(0.228307).epsilon(1e-5));
}

TEST_CASE("signed values and quarter turns") {
  auto [re0, im0] = ambiguity_signed({5}, 0, 0, kCert);
  CHECK(re0.contains(1.0));
  CHECK(im0.contains(0.0));

  auto [re, im] = ambiguity_signed({0}, 1, 0.5, kCert);
  CHECK(re.contains(0.0));
  CHECK(im.certainly_below(0.0));
  CHECK(re.width() <= 1e-30);

  // sqrt(2) * sqrt(2) is not exactly 2 in doubles, so the phase is only nearly 1
  auto [re1, im1] = ambiguity_signed({1}, std::sqrt(2.0), std::sqrt(2.0), kCert);
  CHECK(im1.magnitude() < 1e-14);
  CHECK(re1.certainly_below(0.0));

  auto [c, s] = phase_enclosure(mpq_class(3, 2), 128);
  CHECK(c.is_point());
  CHECK(c.contains(0.0));
  CHECK(s.contains(1.0));
  auto [c2, s2] = phase_enclosure(mpq_class(1, 3), 128);
  CHECK(c2.intersects(Enclosure::from_rational(mpq_class(1, 2), 128).widened(1e-35)));
  CHECK(s2.certainly_below(0.0));
}

TEST_CASE("fast and certified magnitudes agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 200; ++i) {
    unsigned n = static_cast<unsigned>(rng() % 30);
    double x = u(rng), w = u(rng);
    Enclosure c = ambiguity_mag({n}, x, w, kCert);
    double f = ambiguity_mag({n}, x, w, kFast).midpoint();
    CHECK(std::fabs(f - c.midpoint()) <= 1e-12 + 1e-9 * c.magnitude());
  }
}

TEST_CASE("strictly below one away from the origin") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> radius(1e-3, 6), angle(0, 2 * M_PI);
  int below = 0;
  for (int i = 0; i < 500; ++i) {
    unsigned n = static_cast<unsigned>(rng() % 21);
    double r = radius(rng), t = angle(rng);
    Enclosure v = ambiguity_mag({n}, r * std::cos(t), r * std::sin(t), kCert);
    if (v.certainly_below(1.0)) ++below;
  }
  CHECK(below == 500);
}

TEST_CASE("known sums") {
  JanssenReport r4 = janssen_sum({4}, square_lattice(5), TailStrategy::for_cutoff(Cutoff::max_norm(5)), kCert);
  CHECK(ceil_decimal(to_rational(r4.finite_part.hi()), 5) == parse_rational("1.99390"));
  CHECK(r4.verdict == Verdict::frame_certified);
  CHECK(r4.certified);
  CHECK(r4.tail_upper <= 1e-28);
  CHECK(r4.total_upper >= r4.finite_part.upper());
  CHECK_FALSE(r4.ledger.empty());

  JanssenReport r0 = janssen_sum({0}, square_lattice(1), TailStrategy::for_cutoff(Cutoff::max_norm(1)), kCert);
  CHECK(r0.finite_part.certainly_above(parse_rational("2.004")));
  CHECK(r0.verdict == Verdict::inconclusive);

  JanssenReport r2 = janssen_sum({2}, square_lattice(3), TailStrategy::for_cutoff(Cutoff::max_norm(1)), kCert);
  CHECK(r2.finite_part.certainly_above(parse_rational("2.00001")));
  CHECK(r2.verdict == Verdict::inconclusive);

  // origin alone
  JanssenReport only = janssen_sum({0}, square_lattice(1), TailStrategy::for_cutoff(Cutoff::max_norm(0)), kFast);
  CHECK(only.finite_part.midpoint() == doctest::Approx(1.0));
}

TEST_CASE("tail bounds") {
  auto box = TailStrategy::for_cutoff(Cutoff::max_norm(5));
  for (unsigned n = 4; n <= 36; n += 4) CHECK(tail_bound({n}, square_lattice(n + 1), box) <= 1e-28);
  CHECK(tail_bound({9}, square_lattice(3), box) < 1e-45);
  auto disc = TailStrategy::for_cutoff(Cutoff::euclid(8));
  for (long d = 11; d <= 16; ++d) CHECK(tail_bound({15}, square_lattice(d), disc) <= 1e-12);

  CHECK_THROWS_AS(janssen_sum({36}, square_lattice(1), TailStrategy::for_cutoff(Cutoff::max_norm(0)), kCert),
                  Error);
  JanssenReport fast = janssen_sum({36}, square_lattice(1), TailStrategy::for_cutoff(Cutoff::max_norm(0)), kFast);
  CHECK(std::isinf(fast.tail_upper));
  CHECK(fast.find("tail_hypothesis_violated") != nullptr);
  CHECK(fast.verdict == Verdict::inconclusive);
}

TEST_CASE("tail bounds dominate the brute-force continuation") {
  for (unsigned n = 0; n <= 8; ++n) {
    for (long delta = 2; delta <= 10; ++delta) {
      CAPTURE(n);
      CAPTURE(delta);
      RectLattice L = square_lattice(delta);
      long double box = brute_outside(n, delta, [](long k, long l) { return std::labs(k) <= 5 && std::labs(l) <= 5; });
      CHECK(box <= tail_bound({n}, L, TailStrategy::for_cutoff(Cutoff::max_norm(5))) * (1 + 1e-12));
      long double disc = brute_outside(n, delta, [](long k, long l) { return k * k + l * l < 8; });
      CHECK(disc <= tail_bound({n}, L, TailStrategy::for_cutoff(Cutoff::euclid(8))) * (1 + 1e-12));
    }
  }
}

TEST_CASE("rectangular tails stay sound") {
  RectLattice L = rect_lattice(mpq_class(1, 3), mpq_class(1, 4));
  for (unsigned n : {0u, 3u, 6u}) {
    double t = tail_bound({n}, L, TailStrategy::for_cutoff(Cutoff::max_norm(5)));
    long double s = 0;
    for (long k = -60; k <= 60; ++k)
      for (long l = -60; l <= 60; ++l)
        if (std::labs(k) > 5 || std::labs(l) > 5) s += term(n, 9.0L * k * k + 16.0L * l * l);
    CHECK(s <= t * (1 + 1e-12));
  }
}

TEST_CASE("swapping the steps changes nothing") {
  std::vector<std::pair<mpq_class, mpq_class>> cases = {
      {mpq_class(1, 2), mpq_class(1, 3)}, {mpq_class(2, 5), mpq_class(3, 7)}, {mpq_class(1), mpq_class(1, 4)}};
  for (auto& [a, b] : cases) {
    for (unsigned n : {0u, 2u, 5u}) {
      for (auto cut : {Cutoff::max_norm(5), Cutoff::euclid(12)}) {
        auto st = TailStrategy::for_cutoff(cut);
        JanssenReport ab = janssen_sum({n}, rect_lattice(a, b), st, kCert);
        JanssenReport ba = janssen_sum({n}, rect_lattice(b, a), st, kCert);
        CHECK(ab.finite_part == ba.finite_part);
        CHECK(ab.tail_upper == ba.tail_upper);
        CHECK(ab.verdict == ba.verdict);
      }
    }
  }
}

TEST_CASE("enlarging the cutoff is monotone") {
  for (unsigned n : {0u, 3u, 4u, 9u}) {
    for (long delta : {3L, 5L, 10L}) {
      CAPTURE(n);
      CAPTURE(delta);
      RectLattice L = square_lattice(delta);
      bool was_certified = false;
      for (std::uint64_t M = 3; M <= 7; ++M) {
        JanssenReport small = janssen_sum({n}, L, TailStrategy::for_cutoff(Cutoff::max_norm(M)), kCert);
        JanssenReport big = janssen_sum({n}, L, TailStrategy::for_cutoff(Cutoff::max_norm(M + 1)), kCert);
        CHECK(big.total_upper <= small.total_upper + small.tail_upper + 1e-25);
        CHECK(big.finite_part.upper() >= small.finite_part.lower());
        if (small.verdict == Verdict::frame_certified) was_certified = true;
        if (was_certified) CHECK(big.verdict == Verdict::frame_certified);
      }
    }
  }
}

TEST_CASE("signed sums") {
  auto [re1, im1] = signed_lattice_sum({1}, 2, Cutoff::max_norm(5), kCert);
  CHECK(re1.contains(0.0));
  CHECK(im1.contains(0.0));
  CHECK(re1.width() <= 1e-30);
  auto [re3, im3] = signed_lattice_sum({3}, 4, Cutoff::max_norm(5), kCert);
  CHECK(re3.contains(0.0));
  CHECK(im3.contains(0.0));
  CHECK(re3.width() <= 1e-30);
  auto [re0, im0] = signed_lattice_sum({0}, 2, Cutoff::max_norm(5), kCert);
  CHECK(re0.certainly_above(1.0));
  CHECK(im0.contains(0.0));
}

TEST_CASE("signed sums never exceed the absolute sum") {
  for (unsigned n = 0; n <= 6; ++n) {
    for (long delta : {1L, 2L, 3L, 7L}) {
      for (std::uint64_t M : {2u, 5u}) {
        auto [re, im] = signed_lattice_sum({n}, delta, Cutoff::max_norm(M), kCert);
        JanssenReport r = janssen_sum({n}, square_lattice(delta), TailStrategy::for_cutoff(Cutoff::max_norm(M)), kCert);
        Enclosure mod = sqrt(square(re) + square(im));
        CHECK(mod.lower() <= r.total_upper);
      }
    }
  }
}

TEST_CASE("frame bound estimate") {
  JanssenReport r = janssen_sum({4}, square_lattice(5), TailStrategy::for_cutoff(Cutoff::max_norm(5)), kCert);
  double B = upper_frame_bound_estimate(r);
  CHECK(B >= 5 * r.total_upper);
  CHECK(B <= 5 * 1.99391);
  JanssenReport r0 = janssen_sum({0}, square_lattice(1), TailStrategy::for_cutoff(Cutoff::max_norm(1)), kCert);
  CHECK(upper_frame_bound_estimate(r0) > 2.004);
  JanssenReport two;
  two.lattice = square_lattice(1);
  two.total_upper = 2;
  CHECK(upper_frame_bound_estimate(two) == 2);
}

TEST_CASE("j1 and its derivative") {
  Enclosure at2 = j1(mpq_class(2), kCert);
  CHECK(at2.contains(2.0));
  CHECK(at2.width() <= 1e-30);
  CHECK(j1_derivative(mpq_class(1), kCert).certainly_below(0.0));
  Enclosure far = j1(mpq_class(50), kCert);
  CHECK(far.certainly_above(1.0));
  CHECK(far.certainly_below(parse_rational("1.000000000000000000000000000001")));
  CHECK_THROWS_AS(j1(mpq_class(1, 2), kCert), Error);

  Enclosure prev = j1(mpq_class(1), kCert);
  for (int i = 11; i <= 20; ++i) {
    Enclosure cur = j1(mpq_class(i, 10), kCert);
    CHECK(cur.upper() < prev.lower());
    prev = cur;
  }
}

TEST_CASE("j1 derivative matches centered differences") {
  for (int i = 12; i <= 32; i += 4) {
    mpq_class d(i, 10), h(1, 100000);
    double fd = ((j1(mpq_class(d + h), kCert) - j1(mpq_class(d - h), kCert)).midpoint()) / (2 * h.get_d());
    double dj = j1_derivative(d, kCert).midpoint();
    CHECK(fd == doctest::Approx(dj).epsilon(1e-7));
  }
  CHECK(j1_derivative(1.0, kCert).midpoint() == doctest::Approx(-2.7322652019567129).epsilon(1e-12));
}

TEST_CASE("high orders stay finite in fast mode") {
  for (unsigned n : {60u, 100u, 120u}) {
    JanssenReport r = janssen_sum({n}, square_lattice(n + 1), TailStrategy::for_cutoff(Cutoff::max_norm(5)), kFast);
    CHECK(std::isfinite(r.finite_part.midpoint()));
    CHECK(std::isfinite(r.total_upper));
    CHECK(r.total_upper < 2);
    CHECK_FALSE(r.certified);
  }
}

TEST_CASE("cutoff parsing") {
  CHECK(Cutoff::parse("max:5") == Cutoff::max_norm(5));
  CHECK(Cutoff::parse("euclid:8") == Cutoff::euclid(8));
  CHECK(Cutoff::parse("7") == Cutoff::max_norm(7));
  CHECK(Cutoff::euclid(8).to_string() == "euclid:8");
  CHECK_THROWS_AS(Cutoff::parse("disc:3"), Error);
  CHECK_THROWS_AS(Cutoff::parse("max:"), Error);
  CHECK(tail_kind_from_string(to_string(TailKind::gamma_integral)) == TailKind::gamma_integral);
  CHECK(verdict_from_string("frame-certified") == Verdict::frame_certified);
  CHECK(mode_from_string(to_string(Mode::fast)) == Mode::fast);
}
