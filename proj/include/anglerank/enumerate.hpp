#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "anglerank/certify.hpp"
#include "anglerank/numerics.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

// Streams every Weil polynomial for (g, q) in lexicographic order of
// (a_1..a_g).  Recursive search over the top coefficients; each partial
// choice is pruned by requiring the corresponding derivative of the real
// Weil transform to stay real-rooted in [-2 sqrt(q), 2 sqrt(q)].
void enumerate_weil(int g, const mpz_class& q, const std::function<void(const WeilPolynomial&)>& emit);
std::vector<WeilPolynomial> enumerate_weil(int g, const mpz_class& q);

struct ClassifyFlags {
    bool ordinary = false;
    bool geometrically_simple = false;
    int numerical_angle_rank = -1;
    bool interrupted = false;
    GeomSimplicityEvidence simplicity;
};

ClassifyFlags classify(const WeilPolynomial& P, const PrecisionProfile& profile = PrecisionProfile{});

struct SurveyFilters {
    bool ordinary = false;
    bool geometrically_simple = false;
    std::optional<int> max_rank;
};

struct SurveyRow {
    std::string label;
    std::vector<mpz_class> coeffs; // constant first
    ClassifyFlags flags;
};

struct SurveyResult {
    long total_enumerated = 0;
    std::vector<SurveyRow> rows; // rows passing all filters, label order
};

SurveyResult survey(int g, const mpz_class& q, const SurveyFilters& filters,
                    const PrecisionProfile& profile = PrecisionProfile{}, int threads = 1);

} // namespace anglerank
