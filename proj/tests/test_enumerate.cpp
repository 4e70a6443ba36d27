#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "anglerank/enumerate.hpp"

using namespace anglerank;

namespace {

IntPoly ip(std::initializer_list<long> c) { return IntPoly(c); }

// independent oracle: iterate the full naive coefficient box and keep what
// validates
std::vector<IntPoly> naive_box_enumeration(int g, long q) {
    std::vector<mpz_class> bounds;
    for (int i = 1; i <= g; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * g),
                     static_cast<unsigned long>(i));
        mpz_class qi;
        mpz_pow_ui(qi.get_mpz_t(), mpz_class(q).get_mpz_t(), static_cast<unsigned long>(i));
        bounds.push_back(sqrt(binom * binom * qi));
    }
    std::vector<IntPoly> out;
    std::vector<mpz_class> a(static_cast<size_t>(g));
    std::function<void(int)> rec = [&](int k) {
        if (k == g) {
            IntPoly cand = weil_poly_from_top_coeffs(a, q);
            try {
                WeilPolynomial::validate(cand, q);
                out.push_back(cand);
            } catch (const ValidationError&) {
            }
            return;
        }
        for (mpz_class v = -bounds[static_cast<size_t>(k)]; v <= bounds[static_cast<size_t>(k)]; ++v) {
            a[static_cast<size_t>(k)] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace

TEST_CASE("enumerate_weil g=1 spec examples") {
    std::vector<WeilPolynomial> e2 = enumerate_weil(1, 2);
    REQUIRE(e2.size() == 5);
    for (long a = -2; a <= 2; ++a)
        CHECK(e2[static_cast<size_t>(a + 2)].poly() == IntPoly({mpz_class(2), mpz_class(a), mpz_class(1)}));

    std::vector<WeilPolynomial> e3 = enumerate_weil(1, 3);
    CHECK(e3.size() == 7);
}

TEST_CASE("enumerate_weil matches the naive-box oracle for g <= 2") {
    for (long q : {2L, 3L, 4L, 5L}) {
        for (int g : {1, 2}) {
            std::vector<WeilPolynomial> fast = enumerate_weil(g, q);
            std::vector<IntPoly> slow = naive_box_enumeration(g, q);
            REQUIRE(fast.size() == slow.size());
            for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].poly() == slow[i]);
        }
    }
}

TEST_CASE("enumerate_weil emits valid polynomials without duplicates") {
    std::vector<WeilPolynomial> all = enumerate_weil(2, 3);
    std::set<std::string> seen;
    for (const auto& P : all) {
        CHECK_NOTHROW(WeilPolynomial::validate(P.poly(), 3));
        seen.insert(encode_label(P).str());
    }
    CHECK(seen.size() == all.size());
}

TEST_CASE("enumerate_weil range guard") {
    CHECK_THROWS_AS(enumerate_weil(5, 2), Unsupported);
    CHECK_THROWS_AS(enumerate_weil(1, 7), Unsupported);
}

TEST_CASE("classify the counterexample and controls") {
    WeilPolynomial P3 = WeilPolynomial::validate(ip({81, -27, 18, -12, -2, -4, 2, -1, 1}), 3);
    ClassifyFlags flags = classify(P3);
    CHECK(flags.ordinary);
    CHECK(flags.geometrically_simple);
    CHECK(flags.numerical_angle_rank == 3);
    CHECK_FALSE(flags.interrupted);

    WeilPolynomial S = WeilPolynomial::validate(ip({2, -2, 1}), 2);
    flags = classify(S);
    CHECK_FALSE(flags.ordinary);
    CHECK(flags.numerical_angle_rank == 0);

    IntPoly sq = ip({3, 0, 1}) * ip({3, 0, 1});
    WeilPolynomial R = WeilPolynomial::validate(sq, 3);
    flags = classify(R);
    CHECK_FALSE(flags.geometrically_simple);
}

TEST_CASE("survey g=1 q=2") {
    SurveyResult all = survey(1, 2, SurveyFilters{});
    CHECK(all.total_enumerated == 5);
    CHECK(all.rows.size() == 5);
    // label order
    for (size_t i = 1; i < all.rows.size(); ++i) CHECK(all.rows[i - 1].label < all.rows[i].label);

    SurveyFilters ord;
    ord.ordinary = true;
    SurveyResult ordinary = survey(1, 2, ord);
    REQUIRE(ordinary.rows.size() == 2);
    CHECK(ordinary.rows[0].label == "1.2.ab");
    CHECK(ordinary.rows[1].label == "1.2.b");

    SurveyFilters ss;
    ss.max_rank = 0;
    SurveyResult supersingular = survey(1, 2, ss);
    REQUIRE(supersingular.rows.size() == 3);
    CHECK(supersingular.rows[0].label == "1.2.a");
    CHECK(supersingular.rows[1].label == "1.2.ac");
    CHECK(supersingular.rows[2].label == "1.2.c");
    for (const auto& row : supersingular.rows) CHECK(row.flags.numerical_angle_rank == 0);
}

TEST_CASE("survey is thread-count independent") {
    SurveyFilters f;
    f.ordinary = true;
    SurveyResult one = survey(2, 2, f, PrecisionProfile{}, 1);
    SurveyResult two = survey(2, 2, f, PrecisionProfile{}, 2);
    REQUIRE(one.rows.size() == two.rows.size());
    for (size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].label == two.rows[i].label);
        CHECK(one.rows[i].flags.numerical_angle_rank == two.rows[i].flags.numerical_angle_rank);
    }
}

TEST_CASE("g=2 maximal-rank classes dominate the ordinary simple survey") {
    // dimension-2 statement: ordinary geometrically simple classes over F_2
    // all have maximal angle rank
    SurveyFilters f;
    f.ordinary = true;
    f.geometrically_simple = true;
    SurveyResult res = survey(2, 2, f);
    CHECK(!res.rows.empty());
    for (const auto& row : res.rows) {
        CHECK_FALSE(row.flags.interrupted);
        CHECK(row.flags.numerical_angle_rank == 2);
    }
}
