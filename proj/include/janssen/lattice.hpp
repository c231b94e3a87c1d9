#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "janssen/enclosure.hpp"

namespace janssen {

/// A lattice step p / sqrt(d) with rational p > 0 and integer d >= 1.
/// Reciprocals stay in this form: 1/(p/sqrt(d)) = (d/p)/sqrt(d).
struct Step {
  mpq_class p;
  mpz_class d;

  static Step rational(const mpq_class& value);
  /// 1/sqrt(delta) for rational delta > 0.
  static Step inv_sqrt(const mpq_class& delta);

  Step reciprocal() const;
  /// p^2 / d, exact.
  mpq_class squared() const;
  Enclosure value(Bits bits) const;
  double approx() const;
  std::string to_string() const;

  bool operator==(const Step& o) const { return p == o.p && d == o.d; }
};

/// a Z x b Z.
struct RectLattice {
  Step a;
  Step b;

  RectLattice adjoint() const { return {a.reciprocal(), b.reciprocal()}; }
  /// a * b.
  Enclosure volume(Bits bits) const;
  /// 1 / (a * b).
  Enclosure density(Bits bits) const;
  /// (a b)^2 exactly; the density is 1/sqrt of its reciprocal.
  mpq_class volume_squared() const { return a.squared() * b.squared(); }
  bool is_square() const { return a.squared() == b.squared(); }
  /// min(a, b)^2.
  mpq_class min_step_squared() const;

  bool operator==(const RectLattice& o) const { return a == o.a && b == o.b; }
};

/// (1/sqrt(delta)) Z^2, the square lattice of density delta.
RectLattice square_lattice(const mpq_class& delta);
/// a Z x b Z with rational steps.
RectLattice rect_lattice(const mpq_class& a, const mpq_class& b);
/// a Z x b Z with both steps given as p/sqrt(d); useful when the steps are irrational.
inline RectLattice rect_lattice(const Step& a, const Step& b) { return {a, b}; }

RectLattice adjoint(const RectLattice& L);

struct LatticePoint {
  long k = 0;
  long l = 0;
  /// |(k a, l b)|^2 exactly.
  mpq_class norm_sq;

  std::pair<double, double> coords(const RectLattice& L) const;
};

struct Layer {
  std::uint64_t m = 0;
  std::uint64_t count = 0;
  bool operator==(const Layer& o) const { return m == o.m && count == o.count; }
};

/// Number of (k, l) in Z^2 with k^2 + l^2 = m.
std::uint64_t r2(std::uint64_t m);

/// All points with max(|k|, |l|) <= M, k ascending then l ascending.
std::vector<LatticePoint> enumerate_box(const RectLattice& L, long M);

/// All points with k^2 + l^2 < R2, in layer order (m ascending, row-major within a layer).
std::vector<LatticePoint> enumerate_disc(const RectLattice& L, std::uint64_t R2);

/// Layers m <= R2 with r2(m) > 0, excluding m = 0.
std::vector<Layer> layers_upto(std::uint64_t R2);

/// Groups points by exact squared norm, ascending; order inside a group is preserved.
std::vector<std::vector<LatticePoint>> group_by_norm(const std::vector<LatticePoint>& points);

}  // namespace janssen
