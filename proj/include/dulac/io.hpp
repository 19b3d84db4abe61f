#ifndef DULAC_IO_HPP
#define DULAC_IO_HPP

#include <string>

#include <json.hpp>

#include "dulac/dulac_map.hpp"
#include "dulac/oracle.hpp"

namespace dulac {

using nlohmann::json;

// VectorFieldSpec: the on-disk form of a PolyVectorField.  All numerics are
// exact rational strings; floating point never enters these files.
//
// {
//   "eigenvalues": {"alpha": "2/3", "beta": "1/2"},
//   "centre_dim": 1, "jet_order": 2, "degree": 4,
//   "normal_dim": 3,                        // optional; 2 forbids z-terms
//   "alpha_jet": {"(0)": "2/3", "(1)": "1"}, // optional u-dependence
//   "beta_jet": {"(0)": "1/2"},
//   "terms": [{"component": "y", "exponents": [1,0,1], "coeff": {"(0)": "1"}}]
// }
PolyVectorField field_from_json(const json& j);
json field_to_json(const PolyVectorField& X, int normal_dim = 3);

PolyVectorField load_field(const std::string& path);
void save_field(const std::string& path, const PolyVectorField& X, int normal_dim = 3);

json jet_to_json(const UJet& jet);
UJet jet_from_json(const json& j, int k, int J);

json generators_to_json(const NormalizeResult& r);
std::pair<std::vector<Generator>, ScalarPoly> generators_from_json(const json& j, int k, int J);

json exppoly_to_json(const ExpPoly& p);
ExpPoly exppoly_from_json(const json& j);
json omegapoly_to_json(const OmegaPoly& w);
OmegaPoly omegapoly_from_json(const json& j);

json dulac_series_to_json(const DulacSeries& D);
DulacSeries dulac_series_from_json(const json& j);

void save_json(const std::string& path, const json& j);
json load_json(const std::string& path);

// human-readable series in the paper's omega notation
std::string pretty_dulac(const DulacSeries& D);

// one pass/fail line of a validation report
struct CheckResult {
    std::string name;
    double expected = 0;
    double measured = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};
json report_to_json(const std::vector<CheckResult>& checks);

} // namespace dulac

#endif
