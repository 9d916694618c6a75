#pragma once

// Integer matrix invariants of the group: Smith normal form with unimodular
// transforms, the cokernel of id - A^t presented by invariant factors,
// det(id - A), and the 2-divisibility simplicity criterion.

#include <gmpxx.h>

#include <cstdlib>
#include <vector>

#include "adicpl/errors.hpp"
#include "adicpl/sft.hpp"

namespace adicpl {

using ZMat = std::vector<std::vector<mpz_class>>;

inline ZMat z_identity(size_t n) {
    ZMat m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline ZMat z_mul(const ZMat& a, const ZMat& b) {
    size_t n = a.size(), k = b.size(), c = b[0].size();
    ZMat r(n, std::vector<mpz_class>(c, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < c; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

/// Exact determinant (fraction-free Bareiss elimination).
inline mpz_class z_det(ZMat m) {
    size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct SmithNormalForm {
    ZMat d; // diagonal with divisibility chain
    ZMat u; // unimodular, rows
    ZMat v; // unimodular, columns: u * m * v = d
};

/// Smith normal form by Euclidean row/column reduction.  The transforms are
/// accumulated and u * m * v = d with d_i | d_{i+1} and d_i >= 0.
inline SmithNormalForm smith_normal_form(ZMat m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    SmithNormalForm out;
    out.u = z_identity(rows);
    out.v = z_identity(cols);
    ZMat& a = m;

    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(a[i], a[j]);
        std::swap(out.u[i], out.u[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (size_t r = 0; r < cols; ++r) std::swap(out.v[r][i], out.v[r][j]);
    };
    auto addmul_row = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t j = 0; j < cols; ++j) a[dst][j] += c * a[src][j];
        for (size_t j = 0; j < rows; ++j) out.u[dst][j] += c * out.u[src][j];
    };
    auto addmul_col = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t i = 0; i < rows; ++i) a[i][dst] += c * a[i][src];
        for (size_t i = 0; i < cols; ++i) out.v[i][dst] += c * out.v[i][src];
    };
    auto negate_row = [&](size_t i) {
        for (size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
        for (size_t j = 0; j < rows; ++j) out.u[i][j] = -out.u[i][j];
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block into the pivot slot
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                if (!found ||
                    mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);

        bool dirty = false;
        for (size_t i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
            addmul_row(i, t, -q);
            if (a[i][t] != 0) dirty = true;
        }
        for (size_t j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
            addmul_col(j, t, -q);
            if (a[t][j] != 0) dirty = true;
        }
        if (dirty) continue; // a strictly smaller remainder moved somewhere

        // pivot must divide the whole trailing block
        bool divides_all = true;
        for (size_t i = t + 1; i < rows && divides_all; ++i)
            for (size_t j = t + 1; j < cols && divides_all; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    addmul_row(t, i, 1);
                    divides_all = false;
                }
        if (!divides_all) continue;
        if (a[t][t] < 0) negate_row(t);
        ++t;
    }
    out.d = a;
    return out;
}

/// Presentation of a finitely generated abelian group by invariant factors.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<mpz_class> torsion; // d1 | d2 | ..., each >= 2

    bool operator==(const AbelianGroup&) const = default;
};

/// Cokernel of id - A^t.
inline AbelianGroup k0_group(const TransitionMatrix& a) {
    int n = a.size();
    ZMat m(static_cast<size_t>(n), std::vector<mpz_class>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (i == j ? 1 : 0) - a.entry(j, i);
    SmithNormalForm snf = smith_normal_form(std::move(m));
    AbelianGroup g;
    for (int i = 0; i < n; ++i) {
        const mpz_class& d = snf.d[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (d == 0)
            ++g.free_rank;
        else if (d > 1)
            g.torsion.push_back(d);
    }
    return g;
}

inline mpz_class det_id_minus_a(const TransitionMatrix& a) {
    int n = a.size();
    ZMat m(static_cast<size_t>(n), std::vector<mpz_class>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (i == j ? 1 : 0) - a.entry(i, j);
    return z_det(std::move(m));
}

enum class Simplicity { Simple, NotSimple };

/// A finitely generated abelian group is 2-divisible iff it is finite of odd
/// order: no free part and every invariant factor odd.
inline Simplicity simplicity_verdict(const TransitionMatrix& a) {
    AbelianGroup g = k0_group(a);
    if (g.free_rank != 0) return Simplicity::NotSimple;
    for (const mpz_class& d : g.torsion)
        if (mpz_even_p(d.get_mpz_t())) return Simplicity::NotSimple;
    return Simplicity::Simple;
}

enum class InvariantComparison { Distinguished, NecessaryConditionsPass };

/// One-sided test: reports Distinguished when the computable invariants
/// differ.  Agreement is only a necessary condition, since the class of the
/// unit vector inside the group is not compared.
inline InvariantComparison compare_invariants(const TransitionMatrix& a,
                                              const TransitionMatrix& b) {
    if (!(k0_group(a) == k0_group(b)) || det_id_minus_a(a) != det_id_minus_a(b))
        return InvariantComparison::Distinguished;
    return InvariantComparison::NecessaryConditionsPass;
}

} // namespace adicpl
