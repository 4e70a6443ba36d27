#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anglerank/intpoly.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

// GF(p^n) for p^n <= 2^16, elements packed as base-p digit vectors,
// multiplication through discrete log tables.
class SmallField {
public:
    using Elt = uint32_t;

    SmallField(int p, int n);

    int p() const { return p_; }
    int n() const { return n_; }
    long size() const { return size_; }
    const std::vector<int>& modulus() const { return modulus_; } // constant first, monic

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt from_int(long c) const;
    Elt add(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt mul(Elt a, Elt b) const;
    Elt inv(Elt a) const;
    Elt pow(Elt a, long e) const;
    Elt generator() const { return gen_; }

    bool is_square(Elt a) const;       // true for 0 and even discrete logs
    int trace_to_prime(Elt a) const;   // absolute trace into F_p

private:
    int p_, n_;
    long size_;
    std::vector<int> modulus_;
    Elt gen_;
    std::vector<int32_t> log_;  // log_[0] unused
    std::vector<Elt> exp_;
    std::vector<uint8_t> trace_;
};

struct HyperellipticCurve {
    int p = 0;
    IntPoly h; // coefficients reduced into [0, p)
    IntPoly f;
};

// "p; h-coeffs; f-coeffs", coefficient lists constant term first.
HyperellipticCurve parse_curve(const std::string& spec);
std::string curve_to_spec(const HyperellipticCurve& curve);

// Genus of the smooth model implied by the degrees of (h, f).
int model_genus(const HyperellipticCurve& curve);

// Throws ValidationError unless the curve is a nonsingular genus-4 model
// (p odd: h = 0 and f squarefree of degree 9 or 10; p = 2: the
// Artin-Schreier nonsingularity conditions).
void validate_genus4(const HyperellipticCurve& curve);

struct PointCounts {
    std::vector<long> counts; // N_1..N_k
};

// Points on the smooth projective model over F_{p^n}; p^n <= 2^16.
long count_points(const HyperellipticCurve& curve, int n);

// The Weil polynomial with the given point counts N_1..N_g (Newton
// identities plus the functional equation); throws InconsistentCounts.
WeilPolynomial lpoly_from_counts(const PointCounts& counts, int g, const mpz_class& q);

struct ZetaResult {
    PointCounts counts;
    WeilPolynomial weil;
    IsogenyLabel label;
};

// Counts points over F_{p^n} for n = 1..4 and assembles the zeta data.
ZetaResult zeta(const HyperellipticCurve& curve);

struct CurveMatch {
    HyperellipticCurve curve;
    IsogenyLabel label;
};

// Exhaustive genus-4 hyperelliptic search over F_p (p in {2,3,5}) with
// point-count pruning against the targets; returns every model whose
// L-polynomial matches a target, in deterministic order.
std::vector<CurveMatch> search_hyperelliptic(int p, const std::vector<WeilPolynomial>& targets,
                                             int threads = 1);

} // namespace anglerank
