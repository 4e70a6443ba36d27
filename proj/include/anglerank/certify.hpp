#pragma once

#include <vector>

#include "anglerank/exactpoly.hpp"
#include "anglerank/numerics.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

// Exponent pattern (e_1..e_j), all nonzero.  A negative exponent means the
// inverse root, realized by the index shift alpha_{i+g} = alpha_i^{-1} on
// normalized roots; both the pattern polynomial and the trivial count are
// invariant under flipping signs, so patterns are canonicalized to positive
// exponents internally.
struct RelationPattern {
    std::vector<long> exponents;
    int j() const { return static_cast<int>(exponents.size()); }
    // |e_k| sorted descending
    std::vector<long> canonical() const;
    std::string str() const;
};

struct Certificate {
    RelationPattern pattern;
    long trivial_count = -1;
    long cyc_degree = -1;
    long excess = -1;
    long base_change_applied = 1;
    bool precond_irreducible = false;
    bool precond_no_root_of_unity = false;
    bool certifiable = false;

    enum class Conclusion { NontrivialRelationExists, NoRelationAtThisPattern, NotCertifiable };
    Conclusion conclusion = Conclusion::NotCertifiable;
};

// Number of ordered tuples (i_1..i_j) in {1..2g}^j whose formal exponent
// vector vanishes (index i <= g contributes +e_k in slot i, index i > g
// contributes -e_k in slot i-g).  Exhaustive enumeration.
long trivial_count(int g, const RelationPattern& pattern);

// Monic polynomial of degree (2g)^j whose roots are all pattern products of
// the normalized roots alpha_i / sqrt(q), with exact rational coefficients.
// Applies base_change(P, 2) first when sqrt(q)^sum|e| is not an integer.
RatPoly pattern_poly(const WeilPolynomial& P, const RelationPattern& pattern);

// Compares deg(cyclotomic part of the pattern polynomial) with the trivial
// count; excess > 0 certifies a nontrivial multiplicative relation among the
// normalized roots, hence angle rank < g.
Certificate cyclotomic_excess(const WeilPolynomial& P, const RelationPattern& pattern);

struct UpperBoundResult {
    int bound = 0;
    bool supersingular_shortcircuit = false;
    std::vector<Certificate> certificates;
};

// Converts LLL relations into patterns (plus all contractions), runs
// cyclotomic_excess on each, and certifies bound = g - 1 if any pattern has
// positive excess.  Always an upper bound for the true angle rank.
UpperBoundResult certify_upper_bound(const WeilPolynomial& P,
                                     const std::vector<IntegerRelation>& hints);

struct GeomSimplicityEvidence {
    bool value = false;
    bool irreducible = false;
    long ratio_trivial = -1;
    long ratio_cyc_degree = -1;
    long ratio_excess = -1;
};

// Irreducible over Q and no ratio of distinct roots is a root of unity
// (ratio pattern (2,(1,-1)), trivial count 2g).
GeomSimplicityEvidence is_geometrically_simple(const WeilPolynomial& P);

// True iff every normalized root alpha/sqrt(q) is a root of unity.
bool is_supersingular(const WeilPolynomial& P);

} // namespace anglerank
