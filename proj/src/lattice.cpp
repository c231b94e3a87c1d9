#include "janssen/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "janssen/errors.hpp"
#include "janssen/rational.hpp"

namespace janssen {

Step Step::rational(const mpq_class& value) {
  if (value <= 0) throw Error(Errc::invalid_argument, "lattice steps must be positive");
  return {value, 1};
}

Step Step::inv_sqrt(const mpq_class& delta) {
  if (delta <= 0) throw Error(Errc::invalid_argument, "density must be positive");
  // 1/sqrt(u/v) = sqrt(v/u) = v / sqrt(u v)
  mpq_class q = delta;
  q.canonicalize();
  mpz_class u = q.get_num(), v = q.get_den();
  return {mpq_class(v), u * v};
}

Step Step::reciprocal() const {
  mpq_class r = mpq_class(d) / p;
  r.canonicalize();
  return {r, d};
}

mpq_class Step::squared() const {
  mpq_class r = p * p / mpq_class(d);
  r.canonicalize();
  return r;
}

Enclosure Step::value(Bits bits) const {
  return Enclosure::from_rational(p, bits) / sqrt(Enclosure::from_rational(mpq_class(d), bits));
}

double Step::approx() const { return p.get_d() / std::sqrt(d.get_d()); }

std::string Step::to_string() const {
  if (d == 1) return p.get_str();
  return p.get_str() + "/sqrt(" + d.get_str() + ")";
}

Enclosure RectLattice::volume(Bits bits) const { return a.value(bits) * b.value(bits); }

Enclosure RectLattice::density(Bits bits) const {
  return Enclosure(1, bits) / volume(bits);
}

mpq_class RectLattice::min_step_squared() const {
  mpq_class sa = a.squared(), sb = b.squared();
  return sa < sb ? sa : sb;
}

RectLattice square_lattice(const mpq_class& delta) {
  Step s = Step::inv_sqrt(delta);
  return {s, s};
}

RectLattice rect_lattice(const mpq_class& a, const mpq_class& b) {
  return {Step::rational(a), Step::rational(b)};
}

RectLattice adjoint(const RectLattice& L) { return L.adjoint(); }

std::pair<double, double> LatticePoint::coords(const RectLattice& L) const {
  return {static_cast<double>(k) * L.a.approx(), static_cast<double>(l) * L.b.approx()};
}

std::uint64_t r2(std::uint64_t m) {
  if (m == 0) return 1;
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k * k <= m; ++k) {
    std::uint64_t rest = m - k * k;
    auto l = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (l * l > rest) --l;
    while ((l + 1) * (l + 1) <= rest) ++l;
    if (l * l != rest) continue;
    // (k, l) with signs; zeros carry one sign only
    count += (k == 0 ? 1 : 2) * (l == 0 ? 1 : 2);
  }
  return count;
}

namespace {

LatticePoint make_point(long k, long l, const mpq_class& a2, const mpq_class& b2) {
  LatticePoint p;
  p.k = k;
  p.l = l;
  p.norm_sq = a2 * (k * k) + b2 * (l * l);
  p.norm_sq.canonicalize();
  return p;
}

}  // namespace

std::vector<LatticePoint> enumerate_box(const RectLattice& L, long M) {
  if (M < 0) throw Error(Errc::invalid_argument, "box size must be non-negative");
  mpq_class a2 = L.a.squared(), b2 = L.b.squared();
  std::vector<LatticePoint> out;
  out.reserve(static_cast<size_t>((2 * M + 1) * (2 * M + 1)));
  for (long k = -M; k <= M; ++k)
    for (long l = -M; l <= M; ++l) out.push_back(make_point(k, l, a2, b2));
  return out;
}

std::vector<LatticePoint> enumerate_disc(const RectLattice& L, std::uint64_t R2) {
  mpq_class a2 = L.a.squared(), b2 = L.b.squared();
  std::vector<std::pair<std::uint64_t, LatticePoint>> tagged;
  long r = static_cast<long>(std::sqrt(static_cast<double>(R2))) + 1;
  for (long k = -r; k <= r; ++k)
    for (long l = -r; l <= r; ++l)
      if (auto m = static_cast<std::uint64_t>(k * k + l * l); m < R2)
        tagged.push_back({m, make_point(k, l, a2, b2)});
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<LatticePoint> out;
  out.reserve(tagged.size());
  for (auto& t : tagged) out.push_back(std::move(t.second));
  return out;
}

std::vector<Layer> layers_upto(std::uint64_t R2) {
  std::vector<Layer> out;
  for (std::uint64_t m = 1; m <= R2; ++m)
    if (auto c = r2(m); c > 0) out.push_back({m, c});
  return out;
}

std::vector<std::vector<LatticePoint>> group_by_norm(const std::vector<LatticePoint>& points) {
  std::map<mpq_class, std::vector<LatticePoint>> groups;
  for (const auto& p : points) groups[p.norm_sq].push_back(p);
  std::vector<std::vector<LatticePoint>> out;
  out.reserve(groups.size());
  for (auto& [norm, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace janssen
