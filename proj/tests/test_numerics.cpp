#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "anglerank/certify.hpp"
#include "anglerank/numerics.hpp"

using namespace anglerank;

namespace {

IntPoly ip(std::initializer_list<long> c) { return IntPoly(c); }

const IntPoly kOctic3 = ip({81, -27, 18, -12, -2, -4, 2, -1, 1});
const IntPoly kOctic5 = ip({625, -125, 50, -20, 16, -4, 2, -1, 1});

double to_d(const MpReal& x) { return x.to_double(); }

} // namespace

TEST_CASE("precision profile") {
    PrecisionProfile def = PrecisionProfile{};
    CHECK(def.rho == 625);
    CHECK(def.sigma == 25);
    PrecisionProfile p169 = PrecisionProfile::from_rho(169);
    CHECK(p169.sigma == 13);
    CHECK_THROWS_AS(PrecisionProfile::from_rho(600), InvalidArgument);
}

TEST_CASE("complex roots of small polynomials") {
    PrecisionProfile profile = PrecisionProfile{};
    // T^2 + 3 -> +- i sqrt(3)
    WeilPolynomial P = WeilPolynomial::validate(ip({3, 0, 1}), 3);
    auto roots = complex_roots(P, profile);
    REQUIRE(roots.size() == 2);
    CHECK(to_d(roots[0].re) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(to_d(roots[0].im)) == doctest::Approx(std::sqrt(3.0)));

    // T^2 - 2T + 2 -> 1 +- i
    WeilPolynomial S = WeilPolynomial::validate(ip({2, -2, 1}), 2);
    roots = complex_roots(S, profile);
    REQUIRE(roots.size() == 2);
    CHECK(to_d(roots[0].re) == doctest::Approx(1.0));
    CHECK(std::abs(to_d(roots[0].im)) == doctest::Approx(1.0));
}

TEST_CASE("roots of the octic stay on the circle") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial P = WeilPolynomial::validate(kOctic3, 3);
    auto roots = complex_roots(P, profile);
    REQUIRE(roots.size() == 8);
    for (const auto& z : roots)
        CHECK(to_d(z.abs()) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    // sorted by argument
    for (size_t i = 1; i < roots.size(); ++i) {
        CHECK(to_d(roots[i - 1].arg()) <= to_d(roots[i].arg()));
    }
}

TEST_CASE("roots with multiplicity are repeated") {
    // (T^2+3)^2
    IntPoly sq = ip({3, 0, 1}) * ip({3, 0, 1});
    auto roots = complex_roots_of(sq, 256);
    CHECK(roots.size() == 4);
}

TEST_CASE("frobenius angles: exact rational cases") {
    PrecisionProfile profile = PrecisionProfile{};
    // arg(1 + i) = pi/4
    WeilPolynomial S = WeilPolynomial::validate(ip({2, -2, 1}), 2);
    AngleVector av = frobenius_angles(S, profile);
    REQUIRE(av.m() == 1);
    CHECK(to_d(av.t[0]) == doctest::Approx(0.25).epsilon(1e-15));

    // purely imaginary root: t = 1/2
    WeilPolynomial I3 = WeilPolynomial::validate(ip({3, 0, 1}), 3);
    av = frobenius_angles(I3, profile);
    REQUIRE(av.m() == 1);
    CHECK(to_d(av.t[0]) == doctest::Approx(0.5).epsilon(1e-15));

    // real roots only: (T-2)^2 over q = 4 has the double root 2, no angles
    WeilPolynomial R = WeilPolynomial::validate(ip({4, -4, 1}), 4);
    CHECK(frobenius_angles(R, profile).m() == 0);
}

TEST_CASE("frobenius angles: octic has four distinct angles") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial P = WeilPolynomial::validate(kOctic3, 3);
    AngleVector av = frobenius_angles(P, profile);
    REQUIRE(av.m() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(to_d(av.t[static_cast<size_t>(i)]) > 0.0);
        CHECK(to_d(av.t[static_cast<size_t>(i)]) < 1.0);
    }
    for (int i = 1; i < 4; ++i)
        CHECK(to_d(av.t[static_cast<size_t>(i - 1)]) < to_d(av.t[static_cast<size_t>(i)]));
}

TEST_CASE("integer relations: supersingular t = 1/4") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial S = WeilPolynomial::validate(ip({2, -2, 1}), 2);
    AngleVector av = frobenius_angles(S, profile);
    RelationSearch rs = find_integer_relations(av);
    CHECK(rs.status == RelationStatus::Ok);
    REQUIRE(rs.relations.size() == 1);
    REQUIRE(rs.relations[0].coeffs.size() == 2);
    CHECK(rs.relations[0].coeffs[0] == 4);
    CHECK(rs.relations[0].coeffs[1] == -1);
}

TEST_CASE("integer relations: t = 1/2") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial I3 = WeilPolynomial::validate(ip({3, 0, 1}), 3);
    RelationSearch rs = find_integer_relations(frobenius_angles(I3, profile));
    REQUIRE(rs.relations.size() == 1);
    CHECK(rs.relations[0].coeffs[0] == 2);
    CHECK(rs.relations[0].coeffs[1] == -1);
}

TEST_CASE("integer relations: ordinary non-special elliptic curve has none") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial E = WeilPolynomial::validate(ip({3, -1, 1}), 3);
    RelationSearch rs = find_integer_relations(frobenius_angles(E, profile));
    CHECK(rs.status == RelationStatus::Ok);
    CHECK(rs.relations.empty());
}

TEST_CASE("numerical angle rank: counterexamples give m=4 s=1 rank=3") {
    PrecisionProfile profile = PrecisionProfile{};
    for (const auto& [poly, q] :
         std::vector<std::pair<IntPoly, long>>{{kOctic3, 3}, {kOctic5, 5}}) {
        WeilPolynomial P = WeilPolynomial::validate(poly, q);
        AngleRankResult res = numerical_angle_rank(P, profile);
        CHECK(res.search.status == RelationStatus::Ok);
        CHECK(res.m == 4);
        CHECK(res.s == 1);
        CHECK(res.rank == 3);
        REQUIRE(res.search.relations.size() == 1);
        for (const auto& c : res.search.relations[0].coeffs) CHECK(abs(c) <= 4);
    }
}

TEST_CASE("q=5 relation spans t1 - t2 - t3 + t4 = 0") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial P = WeilPolynomial::validate(kOctic5, 5);
    AngleRankResult res = numerical_angle_rank(P, profile);
    REQUIRE(res.search.relations.size() == 1);
    const auto& c = res.search.relations[0].coeffs;
    REQUIRE(c.size() == 5);
    // proportional to (1, -1, -1, 1, 0)
    CHECK(c[0] == 1);
    CHECK(c[1] == -1);
    CHECK(c[2] == -1);
    CHECK(c[3] == 1);
    CHECK(c[4] == 0);
}

TEST_CASE("supersingular rank is zero, elliptic generic rank is one") {
    PrecisionProfile profile = PrecisionProfile{};
    WeilPolynomial S = WeilPolynomial::validate(ip({2, -2, 1}), 2);
    AngleRankResult res = numerical_angle_rank(S, profile);
    CHECK(res.m == 1);
    CHECK(res.s == 1);
    CHECK(res.rank == 0);

    WeilPolynomial E = WeilPolynomial::validate(ip({3, -1, 1}), 3);
    res = numerical_angle_rank(E, profile);
    CHECK(res.m == 1);
    CHECK(res.s == 0);
    CHECK(res.rank == 1);
}

TEST_CASE("relations persist at higher precision") {
    // rho' > rho never increases s for the counterexamples
    WeilPolynomial P3 = WeilPolynomial::validate(kOctic3, 3);
    WeilPolynomial P5 = WeilPolynomial::validate(kOctic5, 5);
    for (long rho : {625L, 900L, 1225L}) {
        PrecisionProfile profile = PrecisionProfile::from_rho(rho);
        CHECK(numerical_angle_rank(P3, profile).s == 1);
        CHECK(numerical_angle_rank(P5, profile).s == 1);
    }
}

TEST_CASE("rank at reduced precision rho=169") {
    PrecisionProfile profile = PrecisionProfile::from_rho(169);
    WeilPolynomial P = WeilPolynomial::validate(kOctic3, 3);
    AngleRankResult res = numerical_angle_rank(P, profile);
    CHECK(res.rank == 3);
}

TEST_CASE("validate agrees with numerical root moduli on random candidates") {
    // dual route: the exact Sturm certificate against |root| = sqrt(q) at
    // 320 bits, over random functional-equation candidates of degree <= 6
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> gdist(1, 3);
    std::uniform_int_distribution<long> cdist(-6, 6);
    for (long q : {2L, 3L}) {
        for (int iter = 0; iter < 120; ++iter) {
            int g = gdist(rng);
            std::vector<mpz_class> a(static_cast<size_t>(g));
            for (auto& x : a) x = cdist(rng);
            IntPoly cand = weil_poly_from_top_coeffs(a, q);
            bool exact_ok;
            try {
                WeilPolynomial::validate(cand, q);
                exact_ok = true;
            } catch (const ValidationError&) {
                exact_ok = false;
            }
            bool numeric_ok = true;
            double sq = std::sqrt(static_cast<double>(q));
            for (const auto& z : complex_roots_of(cand, 320)) {
                double modulus = z.abs().to_double();
                if (std::abs(modulus - sq) > 1e-30) numeric_ok = false;
            }
            CHECK(exact_ok == numeric_ok);
        }
    }
}

TEST_CASE("certified upper bound never undercuts the numerical rank") {
    // small cases only; the octics are covered by the acceptance suite
    std::vector<std::pair<IntPoly, long>> cases = {
        {ip({4, 0, 1, 0, 1}), 2}, // rank-one quartic
        {ip({3, -1, 1}), 3},
        {ip({2, -2, 1}), 2},
        {ip({3, 0, 1}), 3},
        {ip({4, -3, 1}), 4},
    };
    for (const auto& [poly, q] : cases) {
        WeilPolynomial P = WeilPolynomial::validate(poly, q);
        AngleRankResult r = numerical_angle_rank(P, PrecisionProfile::from_rho(169));
        if (r.search.status != RelationStatus::Ok) continue;
        UpperBoundResult ub = certify_upper_bound(P, r.search.relations);
        CHECK(ub.bound >= r.rank);
    }
}

TEST_CASE("mixed-magnitude relations interrupt the search") {
    // synthetic angle vector at rho = 64 (sigma = 8): t = 1/300 has the
    // relation (300, -1), whose coefficients straddle 2^8
    AngleVector av;
    av.profile = PrecisionProfile::from_rho(64);
    MpReal t(128);
    mpfr_set_ui(t.get(), 1, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), 300, MPFR_RNDN);
    av.t.push_back(std::move(t));
    RelationSearch rs = find_integer_relations(av);
    CHECK(rs.status == RelationStatus::Interrupted);
    CHECK(rs.relations.empty());
}

TEST_CASE("all-large relations are discarded as spurious") {
    // t = 1/99999 at rho = 64: the relation (99999, -1) has NOT all
    // coefficients above 2^8, so this still interrupts; but t irrational-ish
    // noise with no structure yields either nothing or spurious rows only
    AngleVector av;
    av.profile = PrecisionProfile::from_rho(64);
    MpReal t(128);
    // sqrt(2) - 1: poorly approximable by rationals with tiny denominators
    mpfr_sqrt_ui(t.get(), 2, MPFR_RNDN);
    mpfr_sub_ui(t.get(), t.get(), 1, MPFR_RNDN);
    av.t.push_back(std::move(t));
    RelationSearch rs = find_integer_relations(av);
    CHECK(rs.status == RelationStatus::Ok);
    CHECK(rs.relations.empty());
}

TEST_CASE("rank is between 0 and g") {
    PrecisionProfile profile = PrecisionProfile{};
    for (long a1 = -3; a1 <= 3; ++a1) {
        IntPoly cand = weil_poly_from_top_coeffs({mpz_class(a1)}, 3);
        WeilPolynomial P = WeilPolynomial::validate(cand, 3);
        AngleRankResult res = numerical_angle_rank(P, profile);
        CHECK(res.rank >= 0);
        CHECK(res.rank <= 1);
    }
}
