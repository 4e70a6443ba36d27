#include "anglerank/lll.hpp"

#include <stdexcept>

// All-integer LLL (de Weger variant): Gram-Schmidt data kept as integers
// lambda_{i,j} = d_j * mu_{i,j} with d_i the leading Gram determinants.
// delta = 99/100, no deep insertions.

namespace anglerank {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

mpz_class round_div(const mpz_class& num, const mpz_class& den) {
    // nearest integer to num/den, den > 0, ties toward +inf (any tie rule works)
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    return q;
}

} // namespace

void lll_reduce(std::vector<std::vector<mpz_class>>& basis) {
    const int n = static_cast<int>(basis.size());
    if (n <= 1) return;

    std::vector<mpz_class> d(static_cast<size_t>(n) + 1);
    d[0] = 1;
    std::vector<std::vector<mpz_class>> lam(static_cast<size_t>(n) + 1,
                                            std::vector<mpz_class>(static_cast<size_t>(n) + 1));

    auto init_gram = [&]() {
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= i; ++j) {
                mpz_class u = dot(basis[static_cast<size_t>(i - 1)], basis[static_cast<size_t>(j - 1)]);
                for (int k = 1; k < j; ++k) {
                    mpz_class t = d[static_cast<size_t>(k)] * u -
                                  lam[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                                      lam[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), d[static_cast<size_t>(k - 1)].get_mpz_t());
                }
                if (j < i)
                    lam[static_cast<size_t>(i)][static_cast<size_t>(j)] = u;
                else {
                    if (u <= 0) throw std::invalid_argument("lll_reduce: rows are not independent");
                    d[static_cast<size_t>(i)] = u;
                }
            }
        }
    };
    init_gram();

    auto redi = [&](int k, int l) {
        mpz_class two_lam = 2 * lam[static_cast<size_t>(k)][static_cast<size_t>(l)];
        if (abs(two_lam) > d[static_cast<size_t>(l)]) {
            mpz_class q = round_div(lam[static_cast<size_t>(k)][static_cast<size_t>(l)],
                                    d[static_cast<size_t>(l)]);
            auto& bk = basis[static_cast<size_t>(k - 1)];
            const auto& bl = basis[static_cast<size_t>(l - 1)];
            for (size_t i = 0; i < bk.size(); ++i)
                mpz_submul(bk[i].get_mpz_t(), q.get_mpz_t(), bl[i].get_mpz_t());
            lam[static_cast<size_t>(k)][static_cast<size_t>(l)] -= q * d[static_cast<size_t>(l)];
            for (int i = 1; i < l; ++i)
                lam[static_cast<size_t>(k)][static_cast<size_t>(i)] -=
                    q * lam[static_cast<size_t>(l)][static_cast<size_t>(i)];
        }
    };

    auto swapi = [&](int k) {
        std::swap(basis[static_cast<size_t>(k - 1)], basis[static_cast<size_t>(k - 2)]);
        for (int j = 1; j <= k - 2; ++j)
            std::swap(lam[static_cast<size_t>(k)][static_cast<size_t>(j)],
                      lam[static_cast<size_t>(k - 1)][static_cast<size_t>(j)]);
        mpz_class lambda = lam[static_cast<size_t>(k)][static_cast<size_t>(k - 1)];
        mpz_class b = d[static_cast<size_t>(k - 2)] * d[static_cast<size_t>(k)] + lambda * lambda;
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d[static_cast<size_t>(k - 1)].get_mpz_t());
        for (int i = k + 1; i <= n; ++i) {
            mpz_class t = lam[static_cast<size_t>(i)][static_cast<size_t>(k)];
            mpz_class num = d[static_cast<size_t>(k)] * lam[static_cast<size_t>(i)][static_cast<size_t>(k - 1)] -
                            lambda * t;
            mpz_divexact(lam[static_cast<size_t>(i)][static_cast<size_t>(k)].get_mpz_t(), num.get_mpz_t(),
                         d[static_cast<size_t>(k - 1)].get_mpz_t());
            num = b * t + lambda * lam[static_cast<size_t>(i)][static_cast<size_t>(k)];
            mpz_divexact(lam[static_cast<size_t>(i)][static_cast<size_t>(k - 1)].get_mpz_t(),
                         num.get_mpz_t(), d[static_cast<size_t>(k)].get_mpz_t());
        }
        d[static_cast<size_t>(k - 1)] = b;
    };

    int k = 2;
    while (k <= n) {
        redi(k, k - 1);
        // Lovasz with delta = 99/100: swap when
        // 100 (d_k d_{k-2} + lambda^2) < 99 d_{k-1}^2
        const mpz_class& lambda = lam[static_cast<size_t>(k)][static_cast<size_t>(k - 1)];
        mpz_class lhs = 100 * (d[static_cast<size_t>(k)] * d[static_cast<size_t>(k - 2)] + lambda * lambda);
        mpz_class rhs = 99 * d[static_cast<size_t>(k - 1)] * d[static_cast<size_t>(k - 1)];
        if (lhs < rhs) {
            swapi(k);
            k = std::max(2, k - 1);
        } else {
            for (int l = k - 2; l >= 1; --l) redi(k, l);
            ++k;
        }
    }
}

} // namespace anglerank
