#pragma once

#include <json.hpp>

#include "janssen/ambiguity.hpp"
#include "janssen/certify.hpp"
#include "janssen/enclosure.hpp"

namespace janssen {

using json = nlohmann::ordered_json;

/// {"lo": "...", "hi": "...", "bits": b}; endpoints are exact decimal strings.
json to_json(const Enclosure& e);
Enclosure enclosure_from_json(const json& j);

/// Finite numbers as JSON numbers, everything else as "inf", "-inf" or "nan".
json number_to_json(double v);
double number_from_json(const json& j);

json to_json(const RectLattice& L);
RectLattice lattice_from_json(const json& j);

json to_json(const JanssenReport& r);
JanssenReport report_from_json(const json& j);

json to_json(const CaseRecord& c);
CaseRecord case_from_json(const json& j);

json to_json(const PropositionReport& r);
PropositionReport proposition_from_json(const json& j);

}  // namespace janssen
