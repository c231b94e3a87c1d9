#include "janssen/serialize.hpp"

#include <cmath>
#include <limits>

#include "janssen/errors.hpp"
#include "janssen/rational.hpp"

namespace janssen {

json to_json(const Enclosure& e) {
  return {{"lo", e.lo_string()}, {"hi", e.hi_string()}, {"bits", e.precision()}};
}

Enclosure enclosure_from_json(const json& j) {
  return Enclosure::from_strings(j.at("lo").get<std::string>(), j.at("hi").get<std::string>(),
                                 j.at("bits").get<Bits>());
}

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(Errc::invalid_argument, "bad number '" + s + "'");
}

namespace {

json step_json(const Step& s) { return {{"p", s.p.get_str()}, {"d", s.d.get_str()}}; }

Step step_from_json(const json& j) {
  Step s;
  s.p = parse_rational(j.at("p").get<std::string>());
  s.d = mpz_class(j.at("d").get<std::string>());
  return s;
}

}  // namespace

json to_json(const RectLattice& L) {
  return {{"a", step_json(L.a)},
          {"b", step_json(L.b)},
          {"a_value", L.a.approx()},
          {"b_value", L.b.approx()},
          {"density", L.density(64).midpoint()}};
}

RectLattice lattice_from_json(const json& j) {
  return {step_from_json(j.at("a")), step_from_json(j.at("b"))};
}

json to_json(const JanssenReport& r) {
  json ledger = json::array();
  for (const auto& e : r.ledger) ledger.push_back({{"name", e.name}, {"value", number_to_json(e.value)}});
  return {
      {"n", r.n},
      {"lattice", to_json(r.lattice)},
      {"strategy", {{"kind", to_string(r.strategy.kind)}, {"cutoff", r.strategy.cutoff.to_string()}}},
      {"mode", to_string(r.mode)},
      {"finite_part", to_json(r.finite_part)},
      {"tail_upper", number_to_json(r.tail_upper)},
      {"total_upper", number_to_json(r.total_upper)},
      {"verdict", to_string(r.verdict)},
      {"certified", r.certified},
      {"upper_frame_bound", number_to_json(upper_frame_bound_estimate(r))},
      {"ledger", ledger},
  };
}

JanssenReport report_from_json(const json& j) {
  JanssenReport r;
  r.n = j.at("n").get<unsigned>();
  r.lattice = lattice_from_json(j.at("lattice"));
  r.strategy.kind = tail_kind_from_string(j.at("strategy").at("kind").get<std::string>());
  r.strategy.cutoff = Cutoff::parse(j.at("strategy").at("cutoff").get<std::string>());
  r.mode = mode_from_string(j.at("mode").get<std::string>());
  r.finite_part = enclosure_from_json(j.at("finite_part"));
  r.tail_upper = number_from_json(j.at("tail_upper"));
  r.total_upper = number_from_json(j.at("total_upper"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.certified = j.at("certified").get<bool>();
  for (const auto& e : j.at("ledger"))
    r.ledger.push_back({e.at("name").get<std::string>(), number_from_json(e.at("value"))});
  return r;
}

json to_json(const CaseRecord& c) {
  json computed = json::object();
  for (const auto& [k, v] : c.computed) computed[k] = to_json(v);
  json targets = json::object();
  for (const auto& [k, v] : c.targets) targets[k] = number_to_json(v);
  return {{"label", c.label}, {"passed", c.passed}, {"computed", computed},
          {"targets", targets}, {"note", c.note}};
}

CaseRecord case_from_json(const json& j) {
  CaseRecord c;
  c.label = j.at("label").get<std::string>();
  c.passed = j.at("passed").get<bool>();
  for (const auto& [k, v] : j.at("computed").items()) c.computed.emplace(k, enclosure_from_json(v));
  for (const auto& [k, v] : j.at("targets").items()) c.targets[k] = number_from_json(v);
  c.note = j.at("note").get<std::string>();
  return c;
}

json to_json(const PropositionReport& r) {
  json details = json::array();
  for (const auto& c : r.details) details.push_back(to_json(c));
  return {{"id", to_string(r.id)}, {"status", to_string(r.status)}, {"details", details}};
}

PropositionReport proposition_from_json(const json& j) {
  PropositionReport r;
  r.id = proposition_from_string(j.at("id").get<std::string>());
  r.status = status_from_string(j.at("status").get<std::string>());
  for (const auto& c : j.at("details")) r.details.push_back(case_from_json(c));
  return r;
}

}  // namespace janssen
