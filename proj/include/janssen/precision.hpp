#pragma once

#include <mpfr.h>

namespace janssen {

using Bits = mpfr_prec_t;

enum class Mode { fast, certified };

/// How quantities are evaluated.
///
/// Certified evaluations start at 128 bits and double the working precision
/// until the enclosure is narrower than `target_width`; `bits` is the ceiling
/// for that loop. Fast mode runs in machine doubles and ignores `bits`.
struct PrecisionConfig {
  Mode mode = Mode::certified;
  Bits bits = 2048;
  double target_width = 1e-30;

  static PrecisionConfig fast() { return {Mode::fast, 53, 1e-12}; }
  static PrecisionConfig certified(Bits bits = 2048, double target_width = 1e-30) {
    return {Mode::certified, bits, target_width};
  }

  bool is_certified() const { return mode == Mode::certified; }

  /// Throws invalid_argument unless bits >= 53 and target_width > 0.
  void validate() const;

  /// First precision tried by the refinement loop.
  Bits start_bits() const { return bits < 128 ? bits : 128; }
};

}  // namespace janssen
