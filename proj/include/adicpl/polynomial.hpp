#pragma once

// Dense univariate polynomial arithmetic over Q and Z: euclidean ops, Sturm
// sequences, real root isolation, and factorization of monic square-free
// integer polynomials (distinct-degree + equal-degree splitting modulo one
// big prime, followed by subset recombination over Z).

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "adicpl/errors.hpp"

namespace adicpl {

// Coefficients low degree first; empty vector is the zero polynomial.
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline void zp_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qp_degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
inline int zp_degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qp_from_z(const ZPoly& p) {
    QPoly q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = mpq_class(p[i]);
    return q;
}

inline QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    qp_trim(r);
    return r;
}

inline QPoly qp_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qp_trim(r);
    return r;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

inline QPoly qp_scale(const QPoly& a, const mpq_class& s) {
    if (s == 0) return {};
    QPoly r = a;
    for (auto& c : r) c *= s;
    return r;
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw error(errc::division_by_zero, "polynomial division by zero");
    QPoly rem = a, quot;
    int db = qp_degree(b);
    if (qp_degree(a) >= db) quot.assign(a.size() - b.size() + 1, mpq_class(0));
    while (qp_degree(rem) >= db) {
        int k = qp_degree(rem) - db;
        mpq_class c = rem.back() / b.back();
        quot[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[k + static_cast<int>(i)] -= c * b[i];
        qp_trim(rem);
    }
    qp_trim(quot);
    return {quot, rem};
}

inline QPoly qp_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
    return r;
}

inline mpq_class qp_eval(const QPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

inline QPoly qp_monic(const QPoly& p) {
    if (p.empty()) return p;
    return qp_scale(p, mpq_class(1) / p.back());
}

inline QPoly qp_gcd(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = qp_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return qp_monic(a);
}

/// Monic square-free part p / gcd(p, p').
inline QPoly qp_squarefree_part(const QPoly& p) {
    QPoly g = qp_gcd(p, qp_derivative(p));
    return qp_monic(qp_divmod(p, g).first);
}

inline ZPoly zp_from_q_exact(const QPoly& p) {
    ZPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].get_den() != 1)
            throw error(errc::bad_format, "polynomial is not integral");
        r[i] = p[i].get_num();
    }
    return r;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// Exact division test over Z; returns the quotient when b | a.
inline bool zp_divides(const ZPoly& a, const ZPoly& b, ZPoly& quot_out) {
    auto [q, r] = qp_divmod(qp_from_z(a), qp_from_z(b));
    if (!r.empty()) return false;
    for (const auto& c : q)
        if (c.get_den() != 1) return false;
    quot_out = zp_from_q_exact(q);
    return true;
}

// ---------------------------------------------------------------------------
// Sturm sequences and real root isolation
// ---------------------------------------------------------------------------

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    chain.push_back(qp_derivative(p));
    while (!chain.back().empty() && qp_degree(chain.back()) > 0) {
        QPoly r = qp_divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sturm_sign_changes(const std::vector<QPoly>& chain, const mpq_class& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        mpq_class v = qp_eval(p, x);
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

/// Number of distinct real roots of the chain's polynomial in (a, b].
inline int sturm_count(const std::vector<QPoly>& chain, const mpq_class& a, const mpq_class& b) {
    return sturm_sign_changes(chain, a) - sturm_sign_changes(chain, b);
}

struct RootInterval {
    mpq_class lo, hi; // root lies in (lo, hi]
};

/// Isolates the largest real root of a square-free polynomial within (lo, hi].
/// Requires at least one root in the window.
inline RootInterval isolate_largest_real_root(const QPoly& squarefree, mpq_class lo, mpq_class hi) {
    auto chain = sturm_chain(squarefree);
    if (sturm_count(chain, lo, hi) < 1)
        throw error(errc::check_failed, "no real root in the given window");
    while (sturm_count(chain, lo, hi) > 1) {
        mpq_class mid = (lo + hi) / 2;
        if (sturm_count(chain, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Factorization of monic square-free integer polynomials
// ---------------------------------------------------------------------------

namespace detail {

// Polynomials over F_P, coefficients reduced into [0, P).
using MPoly = std::vector<mpz_class>;

inline void mp_trim(MPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline MPoly mp_reduce(const ZPoly& p, const mpz_class& P) {
    MPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), p[i].get_mpz_t(), P.get_mpz_t());
    }
    mp_trim(r);
    return r;
}

inline mpz_class mp_inv(const mpz_class& a, const mpz_class& P) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t()) == 0)
        throw error(errc::division_by_zero, "non-invertible element mod P");
    return r;
}

inline MPoly mp_monic(MPoly p, const mpz_class& P) {
    mp_trim(p);
    if (p.empty()) return p;
    mpz_class inv = mp_inv(p.back(), P);
    for (auto& c : p) c = (c * inv) % P;
    return p;
}

inline MPoly mp_mul(const MPoly& a, const MPoly& b, const mpz_class& P) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % P;
    mp_trim(r);
    return r;
}

inline std::pair<MPoly, MPoly> mp_divmod(MPoly a, const MPoly& m, const mpz_class& P) {
    int dm = static_cast<int>(m.size()) - 1;
    mpz_class lead_inv = mp_inv(m.back(), P);
    mp_trim(a);
    MPoly quot;
    if (static_cast<int>(a.size()) >= static_cast<int>(m.size()))
        quot.assign(a.size() - m.size() + 1, mpz_class(0));
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int k = static_cast<int>(a.size()) - 1 - dm;
        mpz_class c = (a.back() * lead_inv) % P;
        quot[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < m.size(); ++i) {
            size_t idx = static_cast<size_t>(k) + i;
            a[idx] = ((a[idx] - c * m[i]) % P + P) % P;
        }
        mp_trim(a);
    }
    mp_trim(quot);
    return {quot, a};
}

inline MPoly mp_mod(MPoly a, const MPoly& m, const mpz_class& P) {
    return mp_divmod(std::move(a), m, P).second;
}

inline MPoly mp_sub(const MPoly& a, const MPoly& b, const mpz_class& P) {
    MPoly r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % P + P) % P;
    mp_trim(r);
    return r;
}

inline MPoly mp_gcd(MPoly a, MPoly b, const mpz_class& P) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        MPoly r = mp_mod(a, b, P);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(a, P);
}

inline MPoly mp_powmod(MPoly base, mpz_class e, const MPoly& m, const mpz_class& P) {
    MPoly result{mpz_class(1)};
    base = mp_mod(std::move(base), m, P);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mp_mod(mp_mul(result, base, P), m, P);
        base = mp_mod(mp_mul(base, base, P), m, P);
        e >>= 1;
    }
    return result;
}

inline MPoly mp_derivative(const MPoly& p, const mpz_class& P) {
    if (p.size() <= 1) return {};
    MPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = (p[i] * static_cast<long>(i)) % P;
    mp_trim(r);
    return r;
}

// Equal-degree splitting: f is monic square-free mod P, all irreducible
// factors of degree d.
inline void mp_equal_degree(const MPoly& f, int d, const mpz_class& P,
                            std::mt19937_64& rng, std::vector<MPoly>& out) {
    int df = static_cast<int>(f.size()) - 1;
    if (df == d) {
        out.push_back(f);
        return;
    }
    mpz_class pd;
    mpz_pow_ui(pd.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(d));
    mpz_class e = (pd - 1) / 2;
    auto split = [&](const MPoly& g) {
        MPoly q = mp_monic(mp_divmod(f, g, P).first, P);
        mp_equal_degree(g, d, P, rng, out);
        mp_equal_degree(q, d, P, rng, out);
    };
    while (true) {
        MPoly r(static_cast<size_t>(df));
        for (auto& c : r) {
            mpz_class v = static_cast<unsigned long>(rng());
            v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffULL);
            c = v % P;
        }
        mp_trim(r);
        if (r.empty()) continue;
        MPoly g0 = mp_gcd(f, r, P);
        int dg0 = static_cast<int>(g0.size()) - 1;
        if (dg0 > 0 && dg0 < df) {
            split(g0);
            return;
        }
        MPoly s = mp_powmod(r, e, f, P);
        if (s.empty())
            s = MPoly{mpz_class(P - 1)};
        else
            s[0] = ((s[0] - 1) % P + P) % P;
        mp_trim(s);
        if (s.empty()) continue; // r^e = 1: useless draw
        MPoly g = mp_gcd(f, s, P);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0 && dg < df) {
            split(g);
            return;
        }
    }
}

// Full factorization of a monic square-free polynomial mod P.
inline std::vector<MPoly> mp_factor_squarefree(const MPoly& f, const mpz_class& P,
                                               std::mt19937_64& rng) {
    std::vector<MPoly> out;
    MPoly rem = f;
    MPoly h{mpz_class(0), mpz_class(1)}; // x
    int d = 0;
    while (static_cast<int>(rem.size()) - 1 > 0) {
        ++d;
        if (2 * d > static_cast<int>(rem.size()) - 1) {
            out.push_back(rem);
            break;
        }
        h = mp_powmod(h, P, rem, P);
        MPoly hx = mp_sub(h, MPoly{mpz_class(0), mpz_class(1)}, P);
        MPoly g = mp_gcd(rem, hx, P);
        if (static_cast<int>(g.size()) - 1 > 0) {
            mp_equal_degree(g, d, P, rng, out);
            rem = mp_monic(mp_divmod(rem, g, P).first, P);
            h = mp_mod(h, rem, P);
        }
    }
    return out;
}

inline ZPoly mp_lift_symmetric(const MPoly& p, const mpz_class& P) {
    ZPoly r(p.size());
    mpz_class half = P / 2;
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i] > half ? mpz_class(p[i] - P) : p[i];
    zp_trim(r);
    return r;
}

} // namespace detail

/// Factors a monic square-free integer polynomial into monic irreducible
/// integer factors.  Degree is expected to stay in the low tens.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
    int deg = zp_degree(f);
    if (deg <= 0) return {};
    if (deg == 1) return {f};
    if (f.back() != 1) throw error(errc::bad_format, "polynomial must be monic");

    // Landau-Mignotte style bound: coefficients of any monic factor are
    // below 2^deg * ||f||_2.
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class bound = sqrt(norm2) + 1;
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(deg));
    bound *= two_pow;

    // One prime P > 2*bound with f square-free mod P.
    mpz_class P = 2 * bound + 1;
    while (true) {
        mpz_nextprime(P.get_mpz_t(), P.get_mpz_t());
        detail::MPoly fp = detail::mp_reduce(f, P);
        if (static_cast<int>(fp.size()) - 1 != deg) continue;
        detail::MPoly g = detail::mp_gcd(fp, detail::mp_derivative(fp, P), P);
        if (static_cast<int>(g.size()) - 1 == 0) break;
    }

    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<detail::MPoly> modular =
        detail::mp_factor_squarefree(detail::mp_reduce(f, P), P, rng);

    // Subset recombination with symmetric lifts.
    std::vector<ZPoly> factors;
    ZPoly remaining = f;
    std::vector<detail::MPoly> pool = modular;
    bool progress = true;
    while (pool.size() > 1 && progress) {
        progress = false;
        size_t r = pool.size();
        for (size_t s = 1; s <= r / 2 && !progress; ++s) {
            // iterate subsets of size s
            std::vector<size_t> idx(s);
            for (size_t i = 0; i < s; ++i) idx[i] = i;
            while (true) {
                detail::MPoly prod{mpz_class(1)};
                for (size_t i : idx) prod = detail::mp_mul(prod, pool[i], P);
                ZPoly cand = detail::mp_lift_symmetric(prod, P);
                ZPoly quot;
                if (!cand.empty() && cand.back() == 1 && zp_divides(remaining, cand, quot)) {
                    factors.push_back(cand);
                    remaining = quot;
                    std::vector<detail::MPoly> next;
                    for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) { ++j; continue; }
                        next.push_back(pool[i]);
                    }
                    pool = std::move(next);
                    progress = true;
                    break;
                }
                // next subset
                size_t k = s;
                while (k > 0 && idx[k - 1] == r - s + k - 1) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (size_t i = k; i < s; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
    if (zp_degree(remaining) > 0) factors.push_back(remaining);
    std::sort(factors.begin(), factors.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return factors;
}

/// Characteristic polynomial det(xI - M) of a small integer matrix
/// (Faddeev-LeVerrier), monic, coefficients low degree first.
inline ZPoly charpoly(const std::vector<std::vector<long>>& m) {
    size_t n = m.size();
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0));
    std::vector<mpq_class> c(n + 1, 0);
    c[n] = 1;
    // M_1 = A, c_{n-1} = -tr(M_1); M_k = A(M_{k-1} + c_{n-k+1} I)
    std::vector<std::vector<mpq_class>> Mk(n, std::vector<mpq_class>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Mk[i][j] = m[i][j];
    for (size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            for (size_t i = 0; i < n; ++i) Mk[i][i] += c[n - k + 1];
            std::vector<std::vector<mpq_class>> next(n, std::vector<mpq_class>(n, 0));
            for (size_t i = 0; i < n; ++i)
                for (size_t l = 0; l < n; ++l) {
                    if (m[i][l] == 0) continue;
                    for (size_t j = 0; j < n; ++j) next[i][j] += mpq_class(m[i][l]) * Mk[l][j];
                }
            Mk = std::move(next);
        }
        mpq_class tr = 0;
        for (size_t i = 0; i < n; ++i) tr += Mk[i][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    QPoly q(c.begin(), c.end());
    qp_trim(q);
    return zp_from_q_exact(q);
}

} // namespace adicpl
