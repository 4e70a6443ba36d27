#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anglerank/certify.hpp"
#include "anglerank/enumerate.hpp"
#include "anglerank/numerics.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

struct AnalysisReport {
    std::string input_echo; // label or coefficient list as given
    std::string input_type; // "label" or "coeffs"
    bool valid = false;
    int g = 0;
    mpz_class q, p;
    int r = 0;
    std::string label;
    std::vector<mpz_class> coeffs; // constant first
    bool ordinary = false;
    std::vector<mpq_class> newton_slopes;
    bool irreducible = false;
    GeomSimplicityEvidence simplicity;
    long rho = 625, sigma = 25;
    int m = 0, s = 0, rank = -1;
    RelationStatus status = RelationStatus::Ok;
    std::vector<IntegerRelation> relations;
    std::vector<std::string> angles; // decimal strings, display only
    UpperBoundResult certified;
    double ms_validate = 0, ms_numerics = 0, ms_certify = 0;
};

// Full pipeline on a validated polynomial.  extra_patterns are certified in
// addition to the patterns predicted from the LLL relations.
AnalysisReport analyze(const WeilPolynomial& P, const PrecisionProfile& profile,
                       const std::vector<RelationPattern>& extra_patterns = {});

nlohmann::json report_to_json(const AnalysisReport& report);
nlohmann::json certificate_to_json(const Certificate& cert);

// Re-runs the exact claims of a serialized report against a fresh
// computation; returns human-readable mismatch descriptions (empty = ok).
std::vector<std::string> verify_report(const nlohmann::json& report);

// Serialization helpers shared with the CLI.
nlohmann::json weil_to_json(const WeilPolynomial& P);
std::vector<mpz_class> parse_coeff_list(const std::string& text);

} // namespace anglerank
