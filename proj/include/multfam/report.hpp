#ifndef MULTFAM_REPORT_HPP
#define MULTFAM_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "multfam/multiplicities.hpp"
#include "multfam/rational.hpp"
#include "multfam/theorem_lab.hpp"

namespace multfam {

using Json = nlohmann::ordered_json;

/// {num, den, decimal}; the fraction strings are authoritative.
Json rational_json(const Rational &q);
Json rationals_json(const std::vector<Rational> &qs);

Json to_json(const ConvergenceReport &r);
Json to_json(const Claim &c);
Json to_json(const LabReport &r);

/// Two-space indent and a trailing newline.
std::string dump(const Json &j);

/// n,value_decimal,value_fraction
std::string samples_csv(const std::vector<Sample> &samples);
/// name,expected,computed_fraction,computed_decimal,verdict
std::string claims_csv(const std::vector<Claim> &claims);

std::string claims_table(const std::vector<Claim> &claims);
std::string report_table(const ConvergenceReport &r);

} // namespace multfam

#endif
