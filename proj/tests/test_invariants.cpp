#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adicpl/builtins.hpp"
#include "adicpl/invariants.hpp"

using namespace adicpl;

namespace {

ZMat zm(std::initializer_list<std::initializer_list<long>> rows) {
    ZMat m;
    for (auto& r : rows) {
        std::vector<mpz_class> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

std::vector<mpz_class> diagonal(const ZMat& d) {
    std::vector<mpz_class> out;
    for (size_t i = 0; i < d.size() && i < d[0].size(); ++i) out.push_back(d[i][i]);
    return out;
}

void check_snf_contract(const ZMat& m) {
    SmithNormalForm s = smith_normal_form(m);
    CHECK(abs(z_det(s.u)) == 1);
    CHECK(abs(z_det(s.v)) == 1);
    ZMat umv = z_mul(z_mul(s.u, m), s.v);
    CHECK(umv == s.d);
    auto d = diagonal(s.d);
    for (size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        if (d[i] == 0) CHECK(d[i + 1] == 0);
    }
    // off-diagonal zero
    for (size_t i = 0; i < s.d.size(); ++i)
        for (size_t j = 0; j < s.d[i].size(); ++j)
            if (i != j) CHECK(s.d[i][j] == 0);
}

} // namespace

TEST_CASE("smith normal form on pinned examples") {
    auto d1 = diagonal(smith_normal_form(zm({{0, -1}, {-1, 1}})).d);
    CHECK(d1 == std::vector<mpz_class>{1, 1});

    auto d2 = diagonal(smith_normal_form(zm({{2, 0}, {0, 2}})).d);
    CHECK(d2 == std::vector<mpz_class>{2, 2});

    auto d3 = diagonal(smith_normal_form(zm({{0, 0}, {0, 0}})).d);
    CHECK(d3 == std::vector<mpz_class>{0, 0});

    auto d4 = diagonal(smith_normal_form(zm({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}})).d);
    CHECK(d4 == std::vector<mpz_class>{2, 2, 156});
}

TEST_CASE("smith normal form contract on random matrices") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 2 + rng() % 3;
        ZMat m(n, std::vector<mpz_class>(n, 0));
        for (auto& row : m)
            for (auto& v : row) v = static_cast<long>(rng() % 11) - 5;
        check_snf_contract(m);
    }
}

TEST_CASE("invariant factors survive unimodular noise") {
    std::mt19937_64 rng(23);
    ZMat base = zm({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    auto reference = diagonal(smith_normal_form(base).d);
    for (int iter = 0; iter < 20; ++iter) {
        ZMat m = base;
        for (int ops = 0; ops < 6; ++ops) {
            size_t i = rng() % 3, j = rng() % 3;
            if (i == j) continue;
            long c = static_cast<long>(rng() % 5) - 2;
            if (rng() % 2) {
                for (size_t k = 0; k < 3; ++k) m[i][k] += c * m[j][k];
            } else {
                for (size_t k = 0; k < 3; ++k) m[k][i] += c * m[k][j];
            }
        }
        CHECK(diagonal(smith_normal_form(m).d) == reference);
    }
}

TEST_CASE("K0 presentations of the built-ins") {
    AbelianGroup fib = k0_group(builtin_matrix("fib"));
    CHECK(fib.free_rank == 0);
    CHECK(fib.torsion.empty());
    CHECK(det_id_minus_a(builtin_matrix("fib")) == -1);

    AbelianGroup f2 = k0_group(builtin_matrix("full2"));
    CHECK(f2.free_rank == 0);
    CHECK(f2.torsion.empty());
    CHECK(det_id_minus_a(builtin_matrix("full2")) == -1);

    AbelianGroup f3 = k0_group(builtin_matrix("full3"));
    CHECK(f3.free_rank == 0);
    REQUIRE(f3.torsion.size() == 1);
    CHECK(f3.torsion[0] == 2);
    CHECK(det_id_minus_a(builtin_matrix("full3")) == -2);
}

TEST_CASE("determinant cross-checks the torsion order") {
    for (const auto& [name, rows] : builtin_matrix_rows()) {
        TransitionMatrix a = TransitionMatrix::validate(rows);
        AbelianGroup g = k0_group(a);
        if (g.free_rank != 0) continue;
        mpz_class order = 1;
        for (const auto& d : g.torsion) order *= d;
        // |det(I - A^t)| = |det(I - A)| = product of invariant factors
        CHECK(abs(det_id_minus_a(a)) == order);
    }
}

TEST_CASE("simplicity verdicts") {
    CHECK(simplicity_verdict(builtin_matrix("fib")) == Simplicity::Simple);
    CHECK(simplicity_verdict(builtin_matrix("full2")) == Simplicity::Simple);
    CHECK(simplicity_verdict(builtin_matrix("full3")) == Simplicity::NotSimple);
}

TEST_CASE("invariant comparison") {
    CHECK(compare_invariants(builtin_matrix("fib"), builtin_matrix("full2")) ==
          InvariantComparison::NecessaryConditionsPass);
    CHECK(compare_invariants(builtin_matrix("full2"), builtin_matrix("full3")) ==
          InvariantComparison::Distinguished);
    CHECK(compare_invariants(builtin_matrix("mix3"), builtin_matrix("mix3")) ==
          InvariantComparison::NecessaryConditionsPass);
}
