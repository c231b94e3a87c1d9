#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "janssen/enclosure.hpp"
#include "janssen/lattice.hpp"
#include "janssen/precision.hpp"

namespace janssen {

struct HermiteWindow {
  unsigned n = 0;
};

enum class CutoffKind { max_norm, euclid };

/// Which adjoint-lattice indices are summed exactly.
/// max_norm M: max(|k|, |l|) <= M.  euclid R2: k^2 + l^2 < R2.
struct Cutoff {
  CutoffKind kind = CutoffKind::max_norm;
  std::uint64_t value = 5;

  static Cutoff max_norm(std::uint64_t M) { return {CutoffKind::max_norm, M}; }
  static Cutoff euclid(std::uint64_t R2) { return {CutoffKind::euclid, R2}; }
  /// "max:5" or "euclid:8"; a bare integer means max-norm.
  static Cutoff parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const Cutoff&) const = default;
};

enum class TailKind { crude_plus_power_geo, gamma_integral };

/// Box cutoffs are closed with the crude polynomial bound and a power-geometric
/// series; disc cutoffs with the alternating-sign bound and the gamma-integral tail.
struct TailStrategy {
  TailKind kind = TailKind::crude_plus_power_geo;
  Cutoff cutoff;

  static TailStrategy for_cutoff(const Cutoff& c) {
    return {c.kind == CutoffKind::max_norm ? TailKind::crude_plus_power_geo
                                           : TailKind::gamma_integral,
            c};
  }
  bool operator==(const TailStrategy&) const = default;
};

const char* to_string(TailKind kind);
TailKind tail_kind_from_string(const std::string& s);

enum class Verdict { frame_certified, inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);
const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct LedgerEntry {
  std::string name;
  double value = 0;
  bool operator==(const LedgerEntry&) const = default;
};

struct JanssenReport {
  unsigned n = 0;
  RectLattice lattice;
  TailStrategy strategy;
  Mode mode = Mode::certified;
  Enclosure finite_part;
  double tail_upper = 0;
  double total_upper = 0;
  Verdict verdict = Verdict::inconclusive;
  /// False in fast mode: the verdict then rests on point estimates.
  bool certified = false;
  std::vector<LedgerEntry> ledger;

  /// [finite.lo, finite.hi + tail].
  Enclosure total() const;
  const LedgerEntry* find(const std::string& name) const;
  bool operator==(const JanssenReport& o) const;
};

/// |V h_n h_n(x, w)|.
Enclosure ambiguity_mag(HermiteWindow h, double x, double w, const PrecisionConfig& prec);
/// Same, at a point of exact squared norm |z|^2.
Enclosure ambiguity_mag_norm(HermiteWindow h, const mpq_class& norm_sq, const PrecisionConfig& prec);
/// Real and imaginary parts of V h_n h_n(x, w).
std::pair<Enclosure, Enclosure> ambiguity_signed(HermiteWindow h, double x, double w,
                                                 const PrecisionConfig& prec);

/// (cos, -sin) of pi t, i.e. e^{-i pi t}, for exact t.
std::pair<Enclosure, Enclosure> phase_enclosure(const mpq_class& t, Bits bits);

struct TailDetail {
  Enclosure prefactor;
  Enclosure series;
  Enclosure total;
};

/// Bound on the sum of |V h_n h_n| over adjoint points of L outside the cutoff.
double tail_bound(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy);
TailDetail tail_bound_detail(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy,
                             Bits bits = 256);

JanssenReport janssen_sum(HermiteWindow h, const RectLattice& L, const TailStrategy& strategy,
                          const PrecisionConfig& prec);

/// Signed sum over (sqrt(delta) k, sqrt(delta) l), max(|k|,|l|) <= M, widened by the tail.
std::pair<Enclosure, Enclosure> signed_lattice_sum(HermiteWindow h, const mpq_class& delta,
                                                   const Cutoff& cutoff, const PrecisionConfig& prec);

/// density * total_upper, rounded up.
double upper_frame_bound_estimate(const JanssenReport& report);

/// 1 + sum over (k,l) != 0 of (pi delta m - 1) e^{-pi delta m/2}, m = k^2 + l^2.
Enclosure j1(const mpq_class& delta, const PrecisionConfig& prec);
Enclosure j1(double delta, const PrecisionConfig& prec);
/// d/d delta of j1.
Enclosure j1_derivative(const mpq_class& delta, const PrecisionConfig& prec);
Enclosure j1_derivative(double delta, const PrecisionConfig& prec);

}  // namespace janssen
