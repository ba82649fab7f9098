#pragma once

// JSON forms of the reports. Integers are numbers, other rationals "p/q".

#include "negcone/fixtures.hpp"
#include "negcone/oracle.hpp"
#include "negcone/report.hpp"

#include "json.hpp"

namespace negcone {

using nlohmann::json;

json to_json_value(const Rational& q);
json to_json_vec(const Vec& v);
Rational rational_from_json(const json& j);
Vec vec_from_json(const json& j);

json space_json(const Space& space);
json theorem_json(const Space& space, const TheoremCertificate& cert);
json enumeration_json(const Space& space, const EnumerationReport& report, const std::vector<Vec>& covers);
json rays_json(const Space& space, const RaysOfM& r);
json facets_json(const Space& space, const FacetCheck& f);
json crosscheck_json(const Space& space, const CrosscheckReport& c);
json contractions_json(const Space& space, const ContractionReport& r);
json fixtures_json(const std::vector<FixtureResult>& results);
json face_json(const Space& space, const FaceCertificate& cert);

}  // namespace negcone
