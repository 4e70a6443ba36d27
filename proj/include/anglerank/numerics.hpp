#pragma once

#include <vector>

#include "anglerank/intpoly.hpp"
#include "anglerank/mpreal.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

// Working precision rho = sigma^2 bits; relations with a coefficient above
// 2^sigma are treated as numerical artifacts.
struct PrecisionProfile {
    long rho = 625;
    long sigma = 25;
    static PrecisionProfile from_rho(long rho);
};

struct AngleVector {
    std::vector<MpReal> t; // strictly increasing, in (0,1)
    PrecisionProfile profile;
    int m() const { return static_cast<int>(t.size()); }
};

struct IntegerRelation {
    std::vector<mpz_class> coeffs; // c_1..c_m, c_{m+1}; sum c_i t_i + c_{m+1} = 0
};

enum class RelationStatus {
    Ok,
    Interrupted, // a candidate mixed coefficients below and above 2^sigma
};

struct RelationSearch {
    std::vector<IntegerRelation> relations;
    RelationStatus status = RelationStatus::Ok;
    int spurious_discarded = 0;
};

struct AngleRankResult {
    int m = 0;
    int s = 0;
    int rank = 0;
    RelationSearch search;
    AngleVector angles;
};

// All complex roots of an integer polynomial (with multiplicity, repeated in
// the output), certified to 2^-(rho) via residual disks; sorted by argument.
// Throws PrecisionFailure if certification fails at this precision.
std::vector<MpComplex> complex_roots_of(const IntPoly& f, long rho);

// Roots of P, certified, sorted by principal argument.
std::vector<MpComplex> complex_roots(const WeilPolynomial& P, const PrecisionProfile& profile);

// Normalized arguments t = arg(alpha)/pi of the distinct roots with positive
// imaginary part, deduplicated at 2^-(rho/2).
AngleVector frobenius_angles(const WeilPolynomial& P, const PrecisionProfile& profile);

// LLL-based integer relation detection among {t_1..t_m, 1} with the spurious
// filter at 2^sigma.
RelationSearch find_integer_relations(const AngleVector& angles);

// rank = m - s.
AngleRankResult numerical_angle_rank(const WeilPolynomial& P, const PrecisionProfile& profile);

} // namespace anglerank
