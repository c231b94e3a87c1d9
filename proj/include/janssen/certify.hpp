#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "janssen/ambiguity.hpp"
#include "janssen/enclosure.hpp"

namespace janssen {

enum class PropositionId {
  P4_36,
  PLargeN,
  P15,
  PH9,
  H15at3p06,
  H1H3Identity,
  H1Monotone,
  NegativeCases,
  TableRepro,
  Density3Scan,
};

const std::vector<PropositionId>& all_propositions();
std::string to_string(PropositionId id);
PropositionId proposition_from_string(const std::string& s);

enum class Status { verified, failed };

const char* to_string(Status s);
Status status_from_string(const std::string& s);

/// One checked case: what was computed, what it was compared against.
struct CaseRecord {
  std::string label;
  bool passed = false;
  std::map<std::string, Enclosure> computed;
  std::map<std::string, double> targets;
  std::string note;

  bool operator==(const CaseRecord& o) const;
};

struct PropositionReport {
  PropositionId id = PropositionId::P4_36;
  Status status = Status::failed;
  std::vector<CaseRecord> details;

  bool verified() const { return status == Status::verified; }
  const CaseRecord* find(const std::string& label) const;
  bool operator==(const PropositionReport& o) const = default;
};

struct SubInterval {
  mpq_class lo;
  mpq_class hi;
  int depth = 0;
  /// 1 + sum of the layer terms (without tail) over the sub-interval.
  Enclosure total;
};

struct DeltaInterval {
  mpq_class lo;
  mpq_class hi;
  std::vector<SubInterval> subdivisions;
};

/// Box cutoff used by every table-style computation.
inline constexpr long kTableBox = 5;

/// Reference finite parts for n = 0..36 at five decimals; "2" marks the exact ones.
const std::vector<std::string>& published_table();

/// Finite part and tail at density n+1 over the box |k|,|l| <= 5; shared by
/// the table reproduction and the range proposition.
JanssenReport table_entry(unsigned n, const PrecisionConfig& prec = PrecisionConfig::certified());

/// Does ceil(hi * 1e5) / 1e5 equal `published` with width below 1e-8?
bool rounds_up_to(const Enclosure& value, const std::string& published);

struct LargeNResult {
  Enclosure bound;
  Status status = Status::failed;
  CaseRecord record;
};

PropositionReport prop_4_36();
/// 4 sqrt(2/n) + 4 sqrt(2/pi) e^{-n/10 - 43/50} + e^{-23n/125}, with its derivation
/// checked for this n. Requires n >= 36.
LargeNResult prop_large_n(unsigned n);
PropositionReport prop_large_n_range(unsigned lo = 36, unsigned hi = 200);
PropositionReport prop_15(DeltaInterval& interval, int max_depth = 40);
PropositionReport prop_15();
PropositionReport prop_h9();
PropositionReport check_h15_3p06();
PropositionReport h1_h3_identities();
PropositionReport h1_monotonicity(const std::vector<mpq_class>& grid);
PropositionReport h1_monotonicity();
PropositionReport negative_cases();
PropositionReport reproduce_table();
PropositionReport scan_density3(unsigned n_max = 40);

PropositionReport run_proposition(PropositionId id);

}  // namespace janssen
