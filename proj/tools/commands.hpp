#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

#include "janssen/ambiguity.hpp"

namespace janssen::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kHypothesis = 3,
  kInconclusive = 10,
};

/// One grid point of a scan.
struct ScanPoint {
  unsigned n = 0;
  RectLattice lattice;
};

struct ScanRow {
  unsigned n = 0;
  double a = 0;
  double b = 0;
  double density = 0;
  double value = 0;
  std::string verdict;
  std::string mode;
  std::string cutoff;
};

/// Rational grid lo, lo+step, ..., <= hi.
std::vector<mpq_class> grid(const mpq_class& lo, const mpq_class& hi, const mpq_class& step);

std::vector<ScanPoint> preset_points(const std::string& preset);

std::vector<ScanRow> run_scan(const std::vector<ScanPoint>& points, const Cutoff& cutoff,
                              const PrecisionConfig& prec, unsigned jobs);

std::string scan_csv(const std::vector<ScanRow>& rows);

/// --jobs if given, else JANSSEN_JOBS, else the hardware thread count.
unsigned resolve_jobs(int requested);

/// Entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace janssen::cli
