#include "anglerank/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace anglerank {

namespace {

constexpr long kPatternDegreeCap = 4096;

// sum of |e_k|
long abs_sum(const std::vector<long>& e) {
    long s = 0;
    for (long x : e) s += std::abs(x);
    return s;
}

struct PatternPolyData {
    IntPoly unnormalized;   // monic, roots are the unnormalized pattern products
    mpz_class scale;        // s = q'^(E/2); normalized roots are roots/scale
    long base_change = 1;   // n applied to P first
    long degree = 0;        // (2g)^j
};

PatternPolyData compute_pattern_poly(const WeilPolynomial& P, const RelationPattern& pattern) {
    if (pattern.j() < 1) throw InvalidArgument("pattern must have at least one exponent");
    for (long e : pattern.exponents)
        if (e == 0) throw InvalidArgument("pattern exponents must be nonzero");

    std::vector<long> e = pattern.canonical();
    long esum = abs_sum(e);
    PatternPolyData out;

    // normalization q'^(E/2) must be an integer; base change to q^2 if not
    const WeilPolynomial* base = &P;
    WeilPolynomial squared = P; // reassigned when needed
    if ((esum % 2 != 0) && (P.r() % 2 != 0)) {
        squared = base_change(P, 2);
        base = &squared;
        out.base_change = 2;
    }

    int two_g = 2 * P.g();
    double logdeg = static_cast<double>(pattern.j()) * std::log2(static_cast<double>(two_g));
    if (logdeg > 13.0) throw Unsupported("pattern polynomial degree above supported cap");
    long degree = 1;
    for (int k = 0; k < pattern.j(); ++k) degree *= two_g;
    if (degree > kPatternDegreeCap) throw Unsupported("pattern polynomial degree above supported cap");
    out.degree = degree;

    // s = q'^(E/2); for odd E the base change has made r' even, so
    // sqrt(q') = p^(r'/2) is an integer
    if (esum % 2 == 0) {
        mpz_pow_ui(out.scale.get_mpz_t(), base->q().get_mpz_t(),
                   static_cast<unsigned long>(esum / 2));
    } else {
        mpz_class sqrt_q;
        mpz_pow_ui(sqrt_q.get_mpz_t(), base->p().get_mpz_t(),
                   static_cast<unsigned long>(base->r() / 2));
        mpz_pow_ui(out.scale.get_mpz_t(), sqrt_q.get_mpz_t(), static_cast<unsigned long>(esum));
    }

    // power sums of the pattern polynomial are products of P's power sums
    long maxe = *std::max_element(e.begin(), e.end());
    std::vector<mpz_class> ps = power_sums_int(base->poly(), static_cast<int>(degree * maxe));
    std::vector<mpz_class> sigma(static_cast<size_t>(degree));
    for (long n = 1; n <= degree; ++n) {
        mpz_class prod = 1;
        for (long ek : e) prod *= ps[static_cast<size_t>(n * ek - 1)];
        sigma[static_cast<size_t>(n - 1)] = prod;
    }
    out.unnormalized = coeffs_from_power_sums_int(sigma, static_cast<int>(degree));
    return out;
}

RatPoly normalize_pattern_poly(const PatternPolyData& data) {
    // Q(U) = Q_un(s U) / s^D
    int d = data.unnormalized.degree();
    std::vector<mpq_class> c(static_cast<size_t>(d) + 1);
    mpz_class denom = 1; // s^(D-i)
    for (int i = d; i >= 0; --i) {
        c[static_cast<size_t>(i)] = mpq_class(data.unnormalized.coeff(i), denom);
        c[static_cast<size_t>(i)].canonicalize();
        denom *= data.scale;
    }
    return RatPoly(std::move(c));
}

} // namespace

std::vector<long> RelationPattern::canonical() const {
    std::vector<long> e;
    e.reserve(exponents.size());
    for (long x : exponents) e.push_back(std::abs(x));
    std::sort(e.begin(), e.end(), std::greater<long>());
    return e;
}

std::string RelationPattern::str() const {
    std::ostringstream os;
    os << "(" << j() << ";";
    for (size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
    os << ")";
    return os.str();
}

long trivial_count(int g, const RelationPattern& pattern) {
    if (g < 1) throw InvalidArgument("g must be positive");
    int j = pattern.j();
    if (j < 1) throw InvalidArgument("pattern must have at least one exponent");
    for (long e : pattern.exponents)
        if (e == 0) throw InvalidArgument("pattern exponents must be nonzero");
    int two_g = 2 * g;
    double logdeg = static_cast<double>(j) * std::log2(static_cast<double>(two_g));
    if (logdeg > 24.0) throw Unsupported("tuple space too large for exhaustive count");

    std::vector<long> slot(static_cast<size_t>(g), 0);
    std::vector<int> idx(static_cast<size_t>(j), 0); // 0..2g-1
    auto apply = [&](int pos, long sign) {
        int i = idx[static_cast<size_t>(pos)];
        long e = pattern.exponents[static_cast<size_t>(pos)];
        if (i < g) slot[static_cast<size_t>(i)] += sign * e;
        else slot[static_cast<size_t>(i - g)] -= sign * e;
    };
    for (int pos = 0; pos < j; ++pos) apply(pos, +1);
    long count = 0;
    while (true) {
        bool zero = std::all_of(slot.begin(), slot.end(), [](long v) { return v == 0; });
        if (zero) ++count;
        int pos = j - 1;
        while (pos >= 0) {
            apply(pos, -1);
            if (++idx[static_cast<size_t>(pos)] < two_g) {
                apply(pos, +1);
                break;
            }
            idx[static_cast<size_t>(pos)] = 0;
            apply(pos, +1);
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

RatPoly pattern_poly(const WeilPolynomial& P, const RelationPattern& pattern) {
    return normalize_pattern_poly(compute_pattern_poly(P, pattern));
}

bool is_supersingular(const WeilPolynomial& P) {
    IntPoly bc2 = power_map_int(P.poly(), 2);
    CyclotomicSplit split = cyclotomic_split_scaled(bc2, P.q());
    return split.degree == bc2.degree();
}

Certificate cyclotomic_excess(const WeilPolynomial& P, const RelationPattern& pattern) {
    Certificate cert;
    cert.pattern = pattern;
    cert.precond_irreducible = is_irreducible(P.poly());

    IntPoly bc2 = power_map_int(P.poly(), 2);
    CyclotomicSplit rou = cyclotomic_split_scaled(bc2, P.q());
    cert.precond_no_root_of_unity = (rou.degree == 0);

    if (!cert.precond_irreducible || !cert.precond_no_root_of_unity) {
        cert.certifiable = false;
        cert.conclusion = Certificate::Conclusion::NotCertifiable;
        return cert;
    }

    PatternPolyData data = compute_pattern_poly(P, pattern);
    cert.base_change_applied = data.base_change;
    cert.trivial_count = trivial_count(P.g(), pattern);
    CyclotomicSplit split = cyclotomic_split_scaled(data.unnormalized, data.scale);
    cert.cyc_degree = split.degree;
    cert.excess = cert.cyc_degree - cert.trivial_count;
    cert.certifiable = true;
    cert.conclusion = cert.excess > 0 ? Certificate::Conclusion::NontrivialRelationExists
                                      : Certificate::Conclusion::NoRelationAtThisPattern;
    return cert;
}

namespace {

// All contractions of the exponent list: set partitions of the positions,
// blocks replaced by their sums, zero blocks dropped.
void partitions_rec(const std::vector<long>& e, size_t pos, std::vector<std::vector<long>>& blocks,
                    std::set<std::vector<long>>& out) {
    if (pos == e.size()) {
        std::vector<long> sums;
        for (const auto& b : blocks) {
            long s = 0;
            for (long x : b) s += x;
            if (s != 0) sums.push_back(std::abs(s));
        }
        if (sums.empty()) return;
        std::sort(sums.begin(), sums.end(), std::greater<long>());
        out.insert(sums);
        return;
    }
    for (auto& b : blocks) {
        b.push_back(e[pos]);
        partitions_rec(e, pos + 1, blocks, out);
        b.pop_back();
    }
    blocks.push_back({e[pos]});
    partitions_rec(e, pos + 1, blocks, out);
    blocks.pop_back();
}

std::set<std::vector<long>> contractions(const std::vector<long>& e) {
    std::set<std::vector<long>> out;
    std::vector<std::vector<long>> blocks;
    partitions_rec(e, 0, blocks, out);
    return out;
}

} // namespace

UpperBoundResult certify_upper_bound(const WeilPolynomial& P,
                                     const std::vector<IntegerRelation>& hints) {
    UpperBoundResult out;
    out.bound = P.g();

    if (is_supersingular(P)) {
        out.supersingular_shortcircuit = true;
        out.bound = 0;
        return out;
    }

    // patterns predicted by the relations, plus all contractions
    std::set<std::vector<long>> wanted;
    for (const IntegerRelation& rel : hints) {
        std::vector<long> e;
        for (size_t i = 0; i + 1 < rel.coeffs.size(); ++i) { // last entry multiplies 1
            const mpz_class& c = rel.coeffs[i];
            if (c == 0) continue;
            if (!c.fits_slong_p()) continue;
            e.push_back(c.get_si());
        }
        if (e.empty()) continue;
        for (const auto& sub : contractions(e)) wanted.insert(sub);
    }

    std::vector<std::vector<long>> ordered(wanted.begin(), wanted.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    bool relation_found = false;
    for (const auto& e : ordered) {
        RelationPattern pattern{e};
        Certificate cert;
        try {
            cert = cyclotomic_excess(P, pattern);
        } catch (const Unsupported&) {
            continue; // degree cap; smaller contractions still reported
        }
        if (cert.certifiable && cert.excess > 0) relation_found = true;
        out.certificates.push_back(std::move(cert));
    }
    // the excess method certifies existence of one nontrivial relation, so
    // the certified drop is capped at 1
    if (relation_found) out.bound = P.g() - 1;
    return out;
}

GeomSimplicityEvidence is_geometrically_simple(const WeilPolynomial& P) {
    GeomSimplicityEvidence ev;
    ev.irreducible = is_irreducible(P.poly());
    if (!ev.irreducible) {
        ev.value = false;
        return ev;
    }
    RelationPattern ratio{{1, -1}};
    ev.ratio_trivial = trivial_count(P.g(), ratio);
    PatternPolyData data = compute_pattern_poly(P, ratio);
    CyclotomicSplit split = cyclotomic_split_scaled(data.unnormalized, data.scale);
    ev.ratio_cyc_degree = split.degree;
    ev.ratio_excess = ev.ratio_cyc_degree - ev.ratio_trivial;
    ev.value = (ev.ratio_excess == 0);
    return ev;
}

} // namespace anglerank
