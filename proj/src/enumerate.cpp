#include "anglerank/enumerate.hpp"

#include <algorithm>
#include <thread>

#include "anglerank/sturm.hpp"

namespace anglerank {

namespace {

struct EnumState {
    int g;
    mpz_class q;
    std::vector<mpz_class> a; // a_1..a_k chosen so far
    std::vector<mpz_class> b; // b_0..b_k of the real Weil transform
    std::vector<mpz_class> bounds; // naive |a_k| bounds
};

// naive coefficient box: |a_i| <= C(2g, i) sqrt(q)^i, exactly via isqrt
mpz_class naive_bound(int g, int i, const mpz_class& q) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * g), static_cast<unsigned long>(i));
    mpz_class qi;
    mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
    mpz_class box = binom * binom * qi;
    return sqrt(box); // floor; a_i is an integer so the floor is the bound
}

// b_k = a_k - sum_{m>=1} C(g-k+2m, m) q^m b_{k-2m}
mpz_class next_b(const EnumState& st, int k, const mpz_class& ak) {
    mpz_class acc = ak;
    mpz_class qm = 1;
    for (int m = 1; 2 * m <= k; ++m) {
        qm *= st.q;
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(st.g - k + 2 * m),
                     static_cast<unsigned long>(m));
        acc -= binom * qm * st.b[static_cast<size_t>(k - 2 * m)];
    }
    return acc;
}

// h^(g-k) for the partial transform: sum_{i<=k} b_i (g-i)!/(k-i)! x^(k-i)
IntPoly partial_derivative_poly(const EnumState& st, int k) {
    std::vector<mpz_class> c(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        mpz_class fall = 1; // (g-i)(g-i-1)...(k-i+1)
        for (int v = st.g - i; v > k - i; --v) fall *= v;
        c[static_cast<size_t>(k - i)] = st.b[static_cast<size_t>(i)] * fall;
    }
    return IntPoly(std::move(c));
}

void recurse(EnumState& st, int k, const mpz_class& four_q,
             const std::function<void(const WeilPolynomial&)>& emit) {
    const int g = st.g;
    const mpz_class& bound = st.bounds[static_cast<size_t>(k - 1)];
    for (mpz_class ak = -bound; ak <= bound; ++ak) {
        st.a[static_cast<size_t>(k - 1)] = ak;
        st.b[static_cast<size_t>(k)] = next_b(st, k, ak);
        IntPoly u = partial_derivative_poly(st, k);
        if (!all_roots_real_in_sqrt_interval(u, four_q)) continue;
        if (k == g) {
            IntPoly poly = weil_poly_from_top_coeffs(st.a, st.q);
            emit(WeilPolynomial::validate(poly, st.q));
        } else {
            recurse(st, k + 1, four_q, emit);
        }
    }
}

} // namespace

void enumerate_weil(int g, const mpz_class& q,
                    const std::function<void(const WeilPolynomial&)>& emit) {
    if (g < 1 || g > 4) throw Unsupported("enumeration supports 1 <= g <= 4");
    if (q < 2 || q > 5) throw Unsupported("enumeration supports q in {2,3,4,5}");
    mpz_class p;
    int r;
    prime_power_decompose(q, p, r);
    EnumState st;
    st.g = g;
    st.q = q;
    st.a.resize(static_cast<size_t>(g));
    st.b.resize(static_cast<size_t>(g) + 1);
    st.b[0] = 1;
    for (int i = 1; i <= g; ++i) st.bounds.push_back(naive_bound(g, i, q));
    recurse(st, 1, 4 * q, emit);
}

std::vector<WeilPolynomial> enumerate_weil(int g, const mpz_class& q) {
    std::vector<WeilPolynomial> out;
    enumerate_weil(g, q, [&](const WeilPolynomial& P) { out.push_back(P); });
    return out;
}

ClassifyFlags classify(const WeilPolynomial& P, const PrecisionProfile& profile) {
    ClassifyFlags flags;
    flags.ordinary = is_ordinary(P);
    flags.simplicity = is_geometrically_simple(P);
    flags.geometrically_simple = flags.simplicity.value;
    AngleRankResult rank = numerical_angle_rank(P, profile);
    if (rank.search.status == RelationStatus::Interrupted) {
        flags.interrupted = true;
        flags.numerical_angle_rank = -1;
    } else {
        flags.numerical_angle_rank = rank.rank;
    }
    return flags;
}

SurveyResult survey(int g, const mpz_class& q, const SurveyFilters& filters,
                    const PrecisionProfile& profile, int threads) {
    if (threads < 1) threads = 1;
    std::vector<WeilPolynomial> all = enumerate_weil(g, q);
    SurveyResult out;
    out.total_enumerated = static_cast<long>(all.size());

    std::vector<std::optional<SurveyRow>> rows(all.size());
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            const WeilPolynomial& P = all[i];
            ClassifyFlags flags;
            flags.ordinary = is_ordinary(P);
            if (filters.ordinary && !flags.ordinary) continue;
            flags.simplicity = is_geometrically_simple(P);
            flags.geometrically_simple = flags.simplicity.value;
            if (filters.geometrically_simple && !flags.geometrically_simple) continue;
            AngleRankResult rank = numerical_angle_rank(P, profile);
            if (rank.search.status == RelationStatus::Interrupted) {
                flags.interrupted = true;
                flags.numerical_angle_rank = -1;
            } else {
                flags.numerical_angle_rank = rank.rank;
            }
            if (filters.max_rank && !flags.interrupted && flags.numerical_angle_rank > *filters.max_rank)
                continue;
            SurveyRow row;
            row.label = encode_label(P).str();
            row.coeffs = P.poly().coeffs();
            row.flags = flags;
            rows[i] = std::move(row);
        }
    };
    if (threads == 1) {
        work(0, all.size());
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            size_t lo = all.size() * static_cast<size_t>(t) / static_cast<size_t>(threads);
            size_t hi = all.size() * static_cast<size_t>(t + 1) / static_cast<size_t>(threads);
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (auto& r : rows)
        if (r) out.rows.push_back(std::move(*r));
    std::sort(out.rows.begin(), out.rows.end(),
              [](const SurveyRow& a, const SurveyRow& b) { return a.label < b.label; });
    return out;
}

} // namespace anglerank
