#include <catch2/catch_amalgamated.hpp>
#include <numeric>

#include "adicpl/builtins.hpp"
#include "adicpl/perron.hpp"

using namespace adicpl;

namespace {

PerronData pd(const char* name) { return PerronData::compute(builtin_matrix(name)); }

AlgebraicNumber alg(const PerronData& p, std::initializer_list<long> cs) {
    QPoly c;
    for (long v : cs) c.emplace_back(v);
    return AlgebraicNumber(p.system(), std::move(c));
}

} // namespace

TEST_CASE("full 2-shift: rational spectral radius") {
    PerronData p = pd("full2");
    CHECK(p.min_poly() == ZPoly{-2, 1});
    CHECK(p.beta() == p.rational(2));
    REQUIRE(p.eigenvector().size() == 2);
    CHECK(p.eigenvector()[0] == p.rational(mpq_class(1, 2)));
    CHECK(p.eigenvector()[1] == p.rational(mpq_class(1, 2)));
}

TEST_CASE("full 3-shift: symmetric eigenvector") {
    PerronData p = pd("full3");
    CHECK(p.beta() == p.rational(3));
    for (const auto& e : p.eigenvector()) CHECK(e == p.rational(mpq_class(1, 3)));
}

TEST_CASE("golden mean shift: quadratic field data") {
    PerronData p = pd("fib");
    CHECK(p.min_poly() == ZPoly{-1, -1, 1});
    // p = (beta - 1, 2 - beta) as residue polynomials
    CHECK(p.eigenvector()[0] == alg(p, {-1, 1}));
    CHECK(p.eigenvector()[1] == alg(p, {2, -1}));

    AlgebraicNumber beta = p.beta();
    CHECK((beta * beta - beta - p.one()).is_zero());
    CHECK(beta.pow(-1) == alg(p, {-1, 1}));
    CHECK(alg(p, {2, -1}) < alg(p, {-1, 1})); // 2-beta < beta-1
    CHECK(beta.decimal(12) == "1.618033988750");
    CHECK(alg(p, {-1, 1}).decimal(10) == "0.6180339887");
}

TEST_CASE("cubic field matrix") {
    PerronData p = pd("mix3");
    CHECK(p.min_poly() == ZPoly{-1, 1, -2, 1});
    AlgebraicNumber beta = p.beta();
    CHECK((beta.pow(3) - p.rational(2) * beta.pow(2) + beta - p.one()).is_zero());
    CHECK(beta > p.one());
    AlgebraicNumber sum = p.zero();
    for (const auto& e : p.eigenvector()) sum += e;
    CHECK(sum == p.one());
}

TEST_CASE("field operations") {
    PerronData p = pd("fib");
    AlgebraicNumber beta = p.beta();
    AlgebraicNumber a = alg(p, {2, -1});                   // 2 - beta
    CHECK(a + beta == p.rational(2));
    CHECK(a * a == (p.rational(4) - p.rational(4) * beta + beta * beta));
    CHECK(a / a == p.one());
    CHECK((beta / a) * a == beta);
    CHECK(beta.pow(-3) == p.rational(2) * beta - p.rational(3));
    CHECK_THROWS_AS(p.one() / p.zero(), error);
    CHECK(beta.pow(0) == p.one());

    // inverse round trip across a spray of residues
    for (long c0 = -3; c0 <= 3; ++c0)
        for (long c1 = -3; c1 <= 3; ++c1) {
            if (c0 == 0 && c1 == 0) continue;
            AlgebraicNumber x = alg(p, {c0, c1});
            CHECK(x * x.inverse() == p.one());
        }
}

TEST_CASE("cylinder weights") {
    PerronData fib = pd("fib");
    AlgebraicNumber beta = fib.beta();
    CHECK(fib.kms_weight({1, 1}) == beta.pow(-2));
    CHECK(fib.kms_weight({1, 1}) == alg(fib, {2, -1}));
    CHECK(fib.kms_weight({1, 2}) == alg(fib, {-3, 2})); // 2 beta - 3
    CHECK_THROWS_AS(fib.kms_weight({}), error);
    CHECK_THROWS_AS(fib.kms_weight({2, 2}), error);

    PerronData f2 = pd("full2");
    CHECK(f2.kms_weight({2, 1}) == f2.rational(mpq_class(1, 4)));
}

TEST_CASE("cylinder interval endpoints") {
    PerronData fib = pd("fib");
    CHECK(fib.endpoint_l({2}) == alg(fib, {-1, 1}));
    CHECK(fib.endpoint_r({2}) == fib.one());
    CHECK(fib.endpoint_l({1, 2}) == alg(fib, {2, -1}));
    CHECK(fib.endpoint_r({1, 2}) == alg(fib, {-1, 1}));

    PerronData f2 = pd("full2");
    CHECK(f2.endpoint_l({1, 2}) == f2.rational(mpq_class(1, 4)));
    CHECK(f2.endpoint_r({1, 2}) == f2.rational(mpq_class(1, 2)));
}

TEST_CASE("dyadic closed form on the full shift") {
    PerronData f2 = pd("full2");
    for (const Word& w : enumerate_words(f2.matrix(), 5)) {
        mpq_class expect = 0;
        mpq_class scale(1, 2);
        for (size_t i = 0; i < w.size(); ++i) {
            expect += (w[i] - 1) * scale;
            scale /= 2;
        }
        CHECK(f2.endpoint_l(w) == f2.rational(expect));
    }
}

TEST_CASE("tiling: weights sum to one and intervals abut") {
    for (const auto& [name, rows] : builtin_matrix_rows()) {
        PerronData p = PerronData::compute(TransitionMatrix::validate(rows));
        for (int n = 1; n <= 5; ++n) {
            auto iv = adic_intervals(p, n);
            AlgebraicNumber total = p.zero();
            for (size_t k = 0; k < iv.size(); ++k) {
                const auto& [w, l, r] = iv[k];
                total += p.kms_weight(w);
                // running-sum endpoints agree with the prefix recursion
                CHECK(l == p.endpoint_l(w));
                CHECK(r == p.endpoint_r(w));
                if (k + 1 < iv.size()) CHECK(r == std::get<1>(iv[k + 1]));
            }
            CHECK(total == p.one());
            CHECK(std::get<2>(iv.back()) == p.one());
        }
    }
}

TEST_CASE("weight equals interval length and obeys the slope law") {
    PerronData p = pd("fib");
    AlgebraicNumber beta = p.beta();
    auto words3 = enumerate_words(p.matrix(), 3);
    auto words5 = enumerate_words(p.matrix(), 5);
    for (const Word& u : words3) {
        CHECK(p.endpoint_r(u) - p.endpoint_l(u) == p.kms_weight(u));
        // upper bound by beta^{-|u|}
        CHECK(p.kms_weight(u) <= beta.pow(-3));
        for (const Word& v : words5) {
            if (!follower_equal(p.matrix(), u, v)) continue;
            CHECK(p.kms_weight(u) == beta.pow(2) * p.kms_weight(v));
        }
    }
}

TEST_CASE("distinct endpoints are separated by the eigenvector floor") {
    // any two distinct depth-n endpoints differ by at least min_j(p_j) * beta^{-n}
    for (const char* name : {"fib", "mix3"}) {
        PerronData p = PerronData::compute(builtin_matrix(name));
        AlgebraicNumber floor_p = p.eigenvector()[0];
        for (const auto& e : p.eigenvector())
            if (e < floor_p) floor_p = e;
        for (int n = 1; n <= 5; ++n) {
            AlgebraicNumber gap = floor_p * p.beta_pow(-n);
            auto iv = adic_intervals(p, n);
            for (size_t i = 0; i < iv.size(); ++i)
                for (size_t j = i + 1; j < iv.size(); ++j) {
                    AlgebraicNumber d = std::get<1>(iv[j]) - std::get<1>(iv[i]);
                    if (d.sign() < 0) d = -d;
                    if (std::get<1>(iv[i]) != std::get<1>(iv[j])) CHECK(d >= gap);
                }
        }
    }
}

TEST_CASE("decimal rendering is exact on rationals") {
    PerronData p = pd("full2");
    CHECK(p.rational(mpq_class(1, 4)).decimal(3) == "0.250");
    CHECK(p.rational(mpq_class(-1, 3)).decimal(4) == "-0.3333");
    CHECK(p.rational(2).decimal(1) == "2.0");
}

TEST_CASE("random irreducible matrices go through the whole pipeline") {
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 30; ++iter) {
        int n = 4 + static_cast<int>(rng() % 3);
        std::vector<std::vector<int>> rows(static_cast<size_t>(n),
                                           std::vector<int>(static_cast<size_t>(n), 0));
        // a full cycle guarantees irreducibility, random extra edges on top
        for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % n)] = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng() % 3 == 0) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
        // rare draw: nothing beyond the cycle, which a permutation check rejects
        if (std::accumulate(rows.begin(), rows.end(), 0, [](int acc, const auto& r) {
                return acc + std::accumulate(r.begin(), r.end(), 0);
            }) == n)
            rows[0][0] = 1;
        TransitionMatrix a = TransitionMatrix::validate(rows);
        PerronData p = PerronData::compute(a);
        AlgebraicNumber beta = p.beta();
        CHECK(beta > p.one());
        AlgebraicNumber sum = p.zero();
        for (const auto& e : p.eigenvector()) {
            CHECK(e.sign() > 0);
            sum += e;
        }
        CHECK(sum == p.one());
        // spot-check tiling at depth 3
        auto iv = adic_intervals(p, 3);
        CHECK(std::get<2>(iv.back()) == p.one());
        // beta satisfies its minimal polynomial exactly
        AlgebraicNumber v = p.zero();
        const ZPoly& mp = p.min_poly();
        for (size_t k = 0; k < mp.size(); ++k)
            v += p.rational(mpq_class(mp[k])) * beta.pow(static_cast<long>(k));
        CHECK(v.is_zero());
    }
}
