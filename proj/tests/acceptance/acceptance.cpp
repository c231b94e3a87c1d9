// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "commands.hpp"
#include "janssen/ambiguity.hpp"
#include "janssen/certify.hpp"
#include "janssen/errors.hpp"
#include "janssen/lattice.hpp"
#include "janssen/rational.hpp"
#include "janssen/specfun.hpp"

using namespace janssen;

namespace {

// Collects failed sub-checks so the summary line can say what went wrong.
struct Check {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Check&)> body;
};

const PrecisionConfig kCert = PrecisionConfig::certified();
const PrecisionConfig kFast = PrecisionConfig::fast();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

long double brute_term(unsigned n, long double r2) {
  long double x = 3.14159265358979323846264338327950288L * r2;
  if (n == 0) return std::exp(-x / 2);
  long double a = 1, b = 1 - x;
  for (unsigned k = 1; k < n; ++k) {
    long double c = ((2 * k + 1 - x) * b - k * a) / (k + 1);
    a = b;
    b = c;
  }
  return std::fabs(b) * std::exp(-x / 2);
}

void table(Check& c) {
  PropositionReport r = reproduce_table();
  for (const auto& rec : r.details) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " rounds up to %.5f, published %.5f", rec.computed.at("rounded_up").midpoint(),
                  rec.targets.at("published"));
    c.require(rec.passed, rec.label + buf);
  }
  for (const char* label : {"n=1", "n=3"}) {
    const CaseRecord* rec = r.find(label);
    bool exact = rec && rec->computed.count("total") && rec->computed.at("total").contains(2.0) &&
                 rec->computed.at("total").width() <= 1e-30;
    c.require(exact, std::string(label) + " does not enclose 2 to width 1e-30");
  }
  auto t0 = std::chrono::steady_clock::now();
  for (unsigned n = 0; n <= 36; ++n) table_entry(n, kFast);
  double fast = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(fast < 1.0, "fast table took " + num(fast) + " s");
}

void range_4_36(Check& c) {
  PropositionReport r = prop_4_36();
  c.require(r.verified(), "range report not verified");
  mpq_class threshold = mpq_class(2) - mpq_class(1, 100000);
  for (unsigned n = 4; n <= 36; ++n) {
    JanssenReport e = table_entry(n);
    std::string tag = "n=" + std::to_string(n);
    c.require(e.finite_part.certainly_below(threshold), tag + " finite part not below 2 - 1e-5");
    c.require(e.tail_upper <= 1e-28, tag + " tail " + num(e.tail_upper));
    c.require(e.verdict == Verdict::frame_certified, tag + " not frame-certified");
  }
  const CaseRecord* k = r.find("remainder constants");
  if (!k) {
    c.require(false, "remainder constants missing");
    return;
  }
  double pre = k->computed.at("prefactor_max").upper();
  double ser = k->computed.at("series_n4").upper();
  c.require(pre <= 1e87 && pre > 1e86, "prefactor " + num(pre) + " not within a decade of 1e87");
  c.require(ser <= 1e-115 && ser > 1e-116, "series " + num(ser) + " not within a decade of 1e-115");
}

void large_n(Check& c) {
  LargeNResult r36 = prop_large_n(36);
  c.require(r36.status == Status::verified, "n=36 derivation chain failed");
  c.require(r36.bound.certainly_below(1.0), "n=36 bound not below 1");
  // independent evaluation of the closed form at n = 36
  c.require(std::fabs(r36.bound.midpoint() - 0.98103887407099281) < 1e-12,
            "n=36 bound " + num(r36.bound.midpoint()) + " differs from 0.981038874071");
  PropositionReport range = prop_large_n_range(36, 200);
  c.require(range.verified(), "range report not verified");
  Enclosure prev = r36.bound;
  for (unsigned n = 37; n <= 200; ++n) {
    Enclosure cur = prop_large_n(n).bound;
    c.require(cur.upper() < prev.lower(), "not strictly decreasing at n=" + std::to_string(n));
    prev = cur;
  }
}

void order15(Check& c) {
  DeltaInterval iv{11, 16, {}};
  PropositionReport r = prop_15(iv);
  c.require(r.verified(), "report not verified");
  c.require(!iv.subdivisions.empty() && iv.subdivisions.front().lo == 11 && iv.subdivisions.back().hi == 16,
            "subdivisions do not span [11,16]");
  for (size_t i = 0; i + 1 < iv.subdivisions.size(); ++i)
    c.require(iv.subdivisions[i].hi == iv.subdivisions[i + 1].lo, "gap in the subdivision");
  double worst = 0;
  for (const auto& s : iv.subdivisions) worst = std::max(worst, s.total.upper());
  const CaseRecord* tail = r.find("tail k^2+l^2 >= 8");
  double t = tail ? tail->computed.at("tail").upper() : INFINITY;
  c.require(t <= 1e-12, "tail " + num(t));
  c.require(worst + t < 2, "total " + num(worst + t) + " not below 2");
  const std::pair<const char*, double> layers[] = {
      {"layer m=1", 0.15}, {"layer m=2", 0.04}, {"layer m=4", 1e-10}, {"layer m=5", 1e-16}};
  for (auto [label, bound] : layers) {
    const CaseRecord* rec = r.find(label);
    double v = rec ? rec->computed.at("max_term").upper() : INFINITY;
    c.require(v <= bound, std::string(label) + " maximum " + num(v) + " above " + num(bound));
  }
}

void single_density(Check& c) {
  auto box = TailStrategy::for_cutoff(Cutoff::max_norm(5));
  JanssenReport h9 = janssen_sum({9}, square_lattice(3), box, kCert);
  c.require(rounds_up_to(h9.finite_part, "1.76496"), "n=9 finite part does not round to 1.76496");
  c.require(h9.tail_upper < 1e-45, "n=9 tail " + num(h9.tail_upper));
  c.require(h9.verdict == Verdict::frame_certified, "n=9 not frame-certified");
  JanssenReport h15 = janssen_sum({15}, square_lattice(mpq_class(153, 50)), box, kCert);
  c.require(rounds_up_to(h15.finite_part, "1.96933"), "n=15 finite part does not round to 1.96933");
  c.require(h15.tail_upper < 1e-29, "n=15 tail " + num(h15.tail_upper));
  c.require(h15.verdict == Verdict::frame_certified, "n=15 not frame-certified");
  c.require(prop_h9().verified() && check_h15_3p06().verified(), "reports not verified");
}

void failures(Check& c) {
  auto nine = TailStrategy::for_cutoff(Cutoff::max_norm(1));
  JanssenReport r0 = janssen_sum({0}, square_lattice(1), nine, kCert);
  c.require(r0.finite_part.certainly_above(parse_rational("2.004")), "n=0 nine-point sum not above 2.004");
  JanssenReport r2 = janssen_sum({2}, square_lattice(3), nine, kCert);
  c.require(r2.finite_part.certainly_above(parse_rational("2.00001")), "n=2 nine-point sum not above 2.00001");
  for (int i = 10; i <= 20; ++i) {
    mpq_class d(i, 10);
    c.require(j1_derivative(d, kCert).certainly_below(0.0), "j1' not negative at " + d.get_str());
  }
  for (auto [n, delta] : {std::pair{1u, 2L}, std::pair{3u, 4L}}) {
    auto [re, im] = signed_lattice_sum({n}, delta, Cutoff::max_norm(5), kCert);
    bool ok = re.contains(0.0) && im.contains(0.0) && re.width() <= 1e-30 && im.width() <= 1e-30;
    c.require(ok, "signed sum for n=" + std::to_string(n) + " does not enclose 0 to width 1e-30");
  }
  c.require(negative_cases().verified() && h1_monotonicity().verified() && h1_h3_identities().verified(),
            "reports not verified");
}

void density3(Check& c) {
  auto rows = cli::run_scan(cli::preset_points("density3"), Cutoff::max_norm(5), kCert, cli::resolve_jobs(0));
  std::set<unsigned> certified;
  for (const auto& r : rows)
    if (r.verdict == "frame-certified") certified.insert(r.n);
  c.require(rows.size() == 41, "expected 41 rows");
  c.require(certified == std::set<unsigned>{0, 1, 4, 9}, "certified set differs from {0,1,4,9}");
  c.require(rows.size() > 4 && rows[4].value <= 1.59338, "n=4 value above 1.59338");
  c.require(scan_density3().verified(), "report not verified");
}

void properties(Check& c) {
  std::mt19937_64 rng(1009);

  // exact rational Laguerre values against the certified evaluator
  int contained = 0;
  for (int i = 0; i < 200; ++i) {
    unsigned n = static_cast<unsigned>(rng() % 41);
    mpq_class x(static_cast<long>(rng() % 10001) - 2000, static_cast<long>(rng() % 100) + 1);
    x.canonicalize();
    if (laguerre_eval(n, x, kCert).contains(laguerre_explicit(n, x))) ++contained;
  }
  c.require(contained == 200, "Laguerre containment " + std::to_string(contained) + "/200");

  // Szego, crude and Krasikov domination
  for (unsigned n = 0; n <= 40; n += 2) {
    for (int i = 1; i <= 60; ++i) {
      double x = 1 + 0.5 * (i - 1) * (1 + n / 10.0);
      double l = laguerre_eval(n, x, kCert).magnitude();
      c.require(szego_bound(x) >= l, "Szego fails at n=" + std::to_string(n));
      c.require(crude_bound(n, x).lower() >= l, "crude fails at n=" + std::to_string(n));
    }
    if (n < 2) continue;
    double q2 = std::pow(std::sqrt(n + 1.0) - std::sqrt(n), 2), s2 = std::pow(std::sqrt(n + 1.0) + std::sqrt(n), 2);
    for (int i = 1; i < 50; ++i) {
      double x = q2 + (s2 - q2) * i / 50;
      c.require(kras1_bound(n, x) >= laguerre_eval(n, x, kCert).magnitude(), "Krasikov fails at n=" + std::to_string(n));
    }
  }
  for (unsigned n = 11; n <= 36; ++n) {
    KrasikovBounds K = krasikov_layer_bounds(n);
    Enclosure x = pi_enclosure(256 + 8 * n) * static_cast<long>(n + 1);
    bool ok = laguerre_range(n, -x).upper_below(K.b1) && abs(laguerre_range(n, x)).upper_below(K.b2) &&
              abs(laguerre_range(n, x * 2)).upper_below(K.b3);
    c.require(ok, "layer bounds fail at n=" + std::to_string(n));
  }

  // tails against the brute-force continuation out to max-norm 60
  for (unsigned n = 0; n <= 8; ++n) {
    for (long delta = 2; delta <= 10; ++delta) {
      long double box = 0, disc = 0;
      for (long k = -60; k <= 60; ++k)
        for (long l = -60; l <= 60; ++l) {
          long double t = brute_term(n, static_cast<long double>(delta) * (k * k + l * l));
          if (std::labs(k) > 5 || std::labs(l) > 5) box += t;
          if (k * k + l * l >= 8) disc += t;
        }
      RectLattice L = square_lattice(delta);
      double tb = tail_bound({n}, L, TailStrategy::for_cutoff(Cutoff::max_norm(5)));
      double td = tail_bound({n}, L, TailStrategy::for_cutoff(Cutoff::euclid(8)));
      std::string tag = " n=" + std::to_string(n) + " delta=" + std::to_string(delta);
      c.require(box <= tb * (1 + 1e-12), "box tail unsound" + tag);
      c.require(disc <= td * (1 + 1e-12), "disc tail unsound" + tag);
    }
  }
  for (unsigned n = 0; n <= 6; ++n)
    for (double g : {1.0, 2.0, 5.0})
      for (double a : {2.0, 3.0, 4.0}) {
        if (M_PI * g / 2 * a * a <= 2 * (n + 1)) continue;
        long double s = 0;
        for (long k = -80; k <= 80; ++k)
          for (long l = -80; l <= 80; ++l) {
            long m = k * k + l * l;
            if (m >= a * a) s += std::pow(static_cast<long double>(m), n) * std::exp(-M_PI * g / 2 * m);
          }
        c.require(s <= gamma_tail_bound(n, g, a) * (1 + 1e-12), "gamma tail unsound at n=" + std::to_string(n));
      }

  // swapped steps
  for (auto [a, b] : {std::pair{mpq_class(1, 2), mpq_class(1, 3)}, std::pair{mpq_class(2, 5), mpq_class(3, 7)}})
    for (unsigned n : {0u, 3u, 7u}) {
      auto st = TailStrategy::for_cutoff(Cutoff::max_norm(5));
      JanssenReport ab = janssen_sum({n}, rect_lattice(a, b), st, kCert);
      JanssenReport ba = janssen_sum({n}, rect_lattice(b, a), st, kCert);
      c.require(ab.finite_part == ba.finite_part && ab.tail_upper == ba.tail_upper, "swap changes the sum");
    }

  // strictly below one away from the origin
  std::uniform_real_distribution<double> radius(1e-3, 6), angle(0, 2 * M_PI);
  int below = 0;
  for (int i = 0; i < 500; ++i) {
    unsigned n = static_cast<unsigned>(rng() % 21);
    double r = radius(rng), t = angle(rng);
    if (ambiguity_mag({n}, r * std::cos(t), r * std::sin(t), kCert).certainly_below(1.0)) ++below;
  }
  c.require(below == 500, "|V| < 1 certified at " + std::to_string(below) + "/500 points");

  for (std::uint64_t m = 1; m <= 10000; ++m) {
    std::uint64_t v = r2(m);
    if (v > 4 * m || v % 4 != 0) {
      c.require(false, "r2 bound fails at m=" + std::to_string(m));
      break;
    }
  }

  // thread-count independence of the CSV
  std::vector<cli::ScanPoint> pts;
  auto steps = cli::grid(mpq_class(1, 4), 1, mpq_class(1, 16));
  for (unsigned n : {0u, 5u, 15u})
    for (const auto& a : steps)
      for (const auto& b : steps) pts.push_back({n, rect_lattice(a, b)});
  std::string one = cli::scan_csv(cli::run_scan(pts, Cutoff::max_norm(5), kFast, 1));
  std::string many = cli::scan_csv(cli::run_scan(pts, Cutoff::max_norm(5), kFast, 8));
  c.require(one == many, "fast CSV depends on the thread count");
  auto d3 = cli::preset_points("density3");
  std::string c1 = cli::scan_csv(cli::run_scan(d3, Cutoff::max_norm(5), kCert, 1));
  std::string c4 = cli::scan_csv(cli::run_scan(d3, Cutoff::max_norm(5), kCert, 4));
  c.require(c1 == c4, "certified CSV depends on the thread count");
}

void diagonal(Check& c) {
  auto rows = cli::run_scan(cli::preset_points("diagonal-nmax120"), Cutoff::max_norm(5), kFast, cli::resolve_jobs(0));
  c.require(rows.size() == 121, "expected 121 rows");
  for (const auto& r : rows)
    c.require(std::isfinite(r.value) && std::isfinite(r.density), "non-finite row at n=" + std::to_string(r.n));
  for (unsigned n = 0; n <= 36 && n < rows.size(); ++n) {
    double cert = table_entry(n).total_upper;
    c.require(std::fabs(rows[n].value - cert) < 5e-6,
              "n=" + std::to_string(n) + " fast " + num(rows[n].value) + " vs certified " + num(cert));
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "table reproduction", 30, table},
      {2, "orders 4..36 at density n+1", 60, range_4_36},
      {3, "large-order closed form", 5, large_n},
      {4, "order 15 on density [11,16]", 120, order15},
      {5, "n=9 at density 3, n=15 at density 3.06", 10, single_density},
      {6, "failure suite", 10, failures},
      {7, "density-3 scan", 30, density3},
      {8, "property suites", 600, properties},
      {9, "diagonal scan up to n=120", 60, diagonal},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < cr.budget_s, "took " + num(secs) + " s, budget " + num(cr.budget_s) + " s");
    std::printf("criterion %d: %s  %s  (%.2f s)\n", cr.id, c.ok() ? "PASS" : "FAIL", cr.title, secs);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    if (!c.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
