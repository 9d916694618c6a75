#pragma once

// Exact arithmetic in Q(beta) for the Perron eigenvalue beta of a validated
// transition matrix.  Numbers are residue polynomials modulo the minimal
// polynomial of beta; order queries are answered by interval refinement on a
// certified isolating interval, with exact zero decided by the residue being
// the zero polynomial.

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "adicpl/errors.hpp"
#include "adicpl/polynomial.hpp"
#include "adicpl/rational.hpp"
#include "adicpl/sft.hpp"

namespace adicpl {

namespace detail {

struct Interval {
    mpq_class lo, hi;

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }

    Interval operator*(const Interval& o) const {
        mpq_class a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        mpq_class mn = a, mx = a;
        for (const mpq_class* v : {&b, &c, &d}) {
            if (*v < mn) mn = *v;
            if (*v > mx) mx = *v;
        }
        return {mn, mx};
    }
};

inline Interval interval_horner(const QPoly& c, const Interval& x) {
    Interval acc{0, 0};
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * x;
        acc.lo += c[i];
        acc.hi += c[i];
    }
    return acc;
}

} // namespace detail

/// Shared context: the minimal polynomial of beta and a refinable isolating
/// interval.  Immutable except for the interval, which only ever shrinks.
class PerronSystem {
public:
    PerronSystem(ZPoly min_poly, mpq_class lo, mpq_class hi)
        : min_poly_(std::move(min_poly)),
          deg_(zp_degree(min_poly_)),
          lo_(std::move(lo)),
          hi_(std::move(hi)) {
        if (deg_ < 1) throw error(errc::bad_format, "minimal polynomial must be nonconstant");
        min_poly_q_ = qp_from_z(min_poly_);
        if (deg_ == 1) {
            // beta is rational: x + c0 with beta = -c0
            beta_rational_ = -min_poly_q_[0] / min_poly_q_[1];
            lo_ = hi_ = beta_rational_;
        }
        // residues of beta^deg .. beta^(2 deg - 2)
        if (deg_ >= 2) {
            QPoly cur(deg_, mpq_class(0)); // beta^(deg-1)
            cur[deg_ - 1] = 1;
            for (int k = deg_; k <= 2 * deg_ - 2; ++k) {
                cur = step(cur);
                pow_table_.push_back(cur);
            }
        }
    }

    int degree() const { return deg_; }
    const ZPoly& min_poly() const { return min_poly_; }
    bool beta_is_rational() const { return deg_ == 1; }
    const mpq_class& beta_rational() const { return beta_rational_; }

    /// Residue of beta^(deg-1+k) for k = 1 .. deg-1.
    const QPoly& high_power(int k) const { return pow_table_[static_cast<size_t>(k - 1)]; }

    /// Exact sign of c(beta) for a residue polynomial c (degree < deg).
    int sign_of(const QPoly& c) const {
        if (c.empty()) return 0;
        if (deg_ == 1 || c.size() == 1) {
            mpq_class v = deg_ == 1 ? qp_eval(c, beta_rational_) : c[0];
            return sgn(v);
        }
        std::lock_guard<std::mutex> lock(mu_);
        while (true) {
            detail::Interval v = detail::interval_horner(c, {lo_, hi_});
            if (sgn(v.lo) > 0) return 1;
            if (sgn(v.hi) < 0) return -1;
            refine_locked();
        }
    }

    /// Enclosure of c(beta) with width below max_width.
    std::pair<mpq_class, mpq_class> enclosure(const QPoly& c, const mpq_class& max_width) const {
        if (c.empty()) return {0, 0};
        if (deg_ == 1) {
            mpq_class v = qp_eval(c, beta_rational_);
            return {v, v};
        }
        if (c.size() == 1) return {c[0], c[0]};
        std::lock_guard<std::mutex> lock(mu_);
        while (true) {
            detail::Interval v = detail::interval_horner(c, {lo_, hi_});
            if (v.hi - v.lo < max_width) return {v.lo, v.hi};
            refine_locked();
        }
    }

private:
    ZPoly min_poly_;
    QPoly min_poly_q_;
    int deg_;
    mpq_class beta_rational_{0};
    std::vector<QPoly> pow_table_;
    mutable std::mutex mu_;
    mutable mpq_class lo_, hi_;

    // One bisection step.  The minimal polynomial has exactly one (simple)
    // root in (lo, hi) and no rational roots when deg >= 2, so the sign at
    // the midpoint is always decisive.
    void refine_locked() const {
        mpq_class mid = (lo_ + hi_) / 2;
        int sm = sgn(qp_eval(min_poly_q_, mid));
        int sl = sgn(qp_eval(min_poly_q_, lo_));
        if (sm == sl)
            lo_ = mid;
        else
            hi_ = mid;
    }

    // multiply-by-x followed by reduction mod the minimal polynomial
    QPoly step(const QPoly& c) const {
        QPoly r(deg_, mpq_class(0));
        mpq_class top = c.size() == static_cast<size_t>(deg_) ? c[deg_ - 1] : mpq_class(0);
        for (int i = deg_ - 1; i >= 1; --i)
            r[i] = (static_cast<size_t>(i - 1) < c.size() ? c[i - 1] : mpq_class(0)) -
                   top * min_poly_q_[i];
        r[0] = -top * min_poly_q_[0];
        return r;
    }
};

/// Element of Q(beta), stored as a residue polynomial in beta.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;

    AlgebraicNumber(std::shared_ptr<const PerronSystem> sys, QPoly coeffs)
        : sys_(std::move(sys)), c_(std::move(coeffs)) {
        for (auto& c : c_) c.canonicalize(); // callers may pass e.g. mpq_class(6,10)
        qp_trim(c_);
        reduce();
    }

    static AlgebraicNumber rational(std::shared_ptr<const PerronSystem> sys, mpq_class q) {
        q.canonicalize();
        QPoly c;
        if (q != 0) c.push_back(std::move(q));
        return AlgebraicNumber(std::move(sys), std::move(c));
    }

    const std::shared_ptr<const PerronSystem>& system() const { return sys_; }
    const QPoly& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1 || sys_->degree() == 1; }

    mpq_class rational_value() const {
        if (c_.empty()) return 0;
        if (sys_ && sys_->degree() == 1) return qp_eval(c_, sys_->beta_rational());
        if (c_.size() == 1) return c_[0];
        throw error(errc::bad_format, "value is irrational");
    }

    AlgebraicNumber operator-() const {
        QPoly r = c_;
        for (auto& x : r) x = -x;
        return with(std::move(r));
    }

    AlgebraicNumber operator+(const AlgebraicNumber& o) const {
        check_same(o);
        return with(qp_add(c_, o.c_));
    }

    AlgebraicNumber operator-(const AlgebraicNumber& o) const {
        check_same(o);
        return with(qp_sub(c_, o.c_));
    }

    AlgebraicNumber operator*(const AlgebraicNumber& o) const {
        check_same(o);
        return AlgebraicNumber(sys_, qp_mul(c_, o.c_));
    }

    AlgebraicNumber operator/(const AlgebraicNumber& o) const {
        check_same(o);
        return *this * o.inverse();
    }

    AlgebraicNumber& operator+=(const AlgebraicNumber& o) { return *this = *this + o; }
    AlgebraicNumber& operator-=(const AlgebraicNumber& o) { return *this = *this - o; }
    AlgebraicNumber& operator*=(const AlgebraicNumber& o) { return *this = *this * o; }
    AlgebraicNumber& operator/=(const AlgebraicNumber& o) { return *this = *this / o; }

    /// Residue representations are canonical, so equality is coefficient
    /// comparison; no interval work needed.
    bool operator==(const AlgebraicNumber& o) const {
        check_same(o);
        return c_ == o.c_;
    }
    bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }

    int sign() const { return sys_ ? sys_->sign_of(c_) : 0; }

    bool operator<(const AlgebraicNumber& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const AlgebraicNumber& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const AlgebraicNumber& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const AlgebraicNumber& o) const { return (*this - o).sign() >= 0; }

    AlgebraicNumber inverse() const {
        if (c_.empty()) throw error(errc::division_by_zero, "division by exact zero");
        if (is_rational()) {
            if (sys_->degree() == 1)
                return rational(sys_, 1 / qp_eval(c_, sys_->beta_rational()));
            return rational(sys_, 1 / c_[0]);
        }
        // extended euclid: u * c + v * m = 1 since m is irreducible
        QPoly m = qp_from_z(sys_->min_poly());
        QPoly r0 = m, r1 = c_;
        QPoly u0{}, u1{mpq_class(1)};
        while (!r1.empty()) {
            auto [q, r2] = qp_divmod(r0, r1);
            QPoly u2 = qp_sub(u0, qp_mul(q, u1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            u0 = std::move(u1);
            u1 = std::move(u2);
        }
        // r0 is a nonzero constant gcd
        return AlgebraicNumber(sys_, qp_scale(u0, 1 / r0[0]));
    }

    AlgebraicNumber pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        AlgebraicNumber base = *this;
        AlgebraicNumber acc = rational(sys_, 1);
        while (k > 0) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    /// Correctly rounded decimal rendering with `digits` fractional digits.
    std::string decimal(int digits) const {
        if (digits < 1) throw error(errc::bad_size, "digits must be >= 1");
        if (is_rational()) return decimal_string(rational_value(), digits);
        mpq_class scale(pow10z(digits));
        mpq_class width(1, 1);
        while (true) {
            auto [lo, hi] = sys_->enclosure(c_, width);
            mpz_class nlo = round_nearest(mpq_class(lo * scale));
            mpz_class nhi = round_nearest(mpq_class(hi * scale));
            if (nlo == nhi) {
                bool neg = nlo < 0;
                mpz_class a = abs(nlo);
                mpz_class ip = a / pow10z(digits);
                std::string frac = mpz_class(a % pow10z(digits)).get_str();
                frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
                return (neg ? "-" : "") + ip.get_str() + "." + frac;
            }
            width /= 65536;
        }
    }

    /// Exact rendering as a polynomial in b (= beta), e.g. "-1+1b".
    std::string poly_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            std::string term = c_[i].get_str();
            if (!s.empty() && term[0] != '-') s += "+";
            s += term;
            if (i == 1) s += "b";
            if (i > 1) s += "b^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    std::shared_ptr<const PerronSystem> sys_;
    QPoly c_;

    AlgebraicNumber with(QPoly c) const {
        AlgebraicNumber r;
        r.sys_ = sys_;
        r.c_ = std::move(c);
        qp_trim(r.c_);
        return r;
    }

    void check_same(const AlgebraicNumber& o) const {
        if (sys_.get() != o.sys_.get())
            throw error(errc::matrix_mismatch, "operands belong to different fields");
    }

    void reduce() {
        int d = sys_->degree();
        if (qp_degree(c_) < d) return;
        QPoly r(c_.begin(), c_.begin() + d);
        for (size_t i = static_cast<size_t>(d); i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const QPoly& pw = sys_->high_power(static_cast<int>(i) - d + 1);
            for (size_t j = 0; j < pw.size(); ++j) r[j] += c_[i] * pw[j];
        }
        qp_trim(r);
        c_ = std::move(r);
    }
};

/// Perron data for a validated matrix: minimal polynomial of beta, the
/// isolating interval, and the normalized positive eigenvector, all exact.
class PerronData {
public:
    static PerronData compute(const TransitionMatrix& a) {
        int n = a.size();
        std::vector<std::vector<long>> m(static_cast<size_t>(n), std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] = a.entry(i, j);
        ZPoly chi = charpoly(m);
        QPoly sqfree = qp_squarefree_part(qp_from_z(chi));
        ZPoly sqfree_z = zp_from_q_exact(sqfree);

        // The spectral radius is the largest real root; it lies in (1, n]
        // because the matrix is irreducible and not a permutation.
        RootInterval iv = isolate_largest_real_root(sqfree, mpq_class(1), mpq_class(n));

        std::vector<ZPoly> factors = factor_monic_squarefree(sqfree_z);
        ZPoly min_poly;
        for (const auto& f : factors) {
            auto chain = sturm_chain(qp_from_z(f));
            if (sturm_count(chain, iv.lo, iv.hi) == 1) {
                min_poly = f;
                break;
            }
        }
        if (min_poly.empty())
            throw error(errc::check_failed, "failed to locate the minimal polynomial");

        PerronData pd;
        pd.a_ = std::make_shared<TransitionMatrix>(a);
        pd.sys_ = std::make_shared<PerronSystem>(min_poly, iv.lo, iv.hi);

        AlgebraicNumber beta = pd.beta();
        if (!(beta > pd.rational(1)))
            throw error(errc::check_failed, "spectral radius is not greater than 1");

        pd.p_ = pd.solve_eigenvector(beta);
        // exact certification: A p = beta p, sum p = 1, p > 0
        AlgebraicNumber sum = pd.zero();
        for (int i = 0; i < n; ++i) {
            AlgebraicNumber row = pd.zero();
            for (int j = 0; j < n; ++j)
                if (a.at(i + 1, j + 1)) row += pd.p_[static_cast<size_t>(j)];
            if (row != beta * pd.p_[static_cast<size_t>(i)])
                throw error(errc::check_failed, "eigenvector equation failed");
            if (pd.p_[static_cast<size_t>(i)].sign() <= 0)
                throw error(errc::check_failed, "eigenvector entry is not positive");
            sum += pd.p_[static_cast<size_t>(i)];
        }
        if (sum != pd.one())
            throw error(errc::check_failed, "eigenvector normalization failed");
        return pd;
    }

    const TransitionMatrix& matrix() const { return *a_; }
    const std::shared_ptr<const PerronSystem>& system() const { return sys_; }
    const ZPoly& min_poly() const { return sys_->min_poly(); }
    const std::vector<AlgebraicNumber>& eigenvector() const { return p_; }

    AlgebraicNumber beta() const {
        if (sys_->degree() == 1) return rational(sys_->beta_rational());
        QPoly x(2, mpq_class(0));
        x[1] = 1;
        return AlgebraicNumber(sys_, std::move(x));
    }

    AlgebraicNumber zero() const { return AlgebraicNumber::rational(sys_, 0); }
    AlgebraicNumber one() const { return AlgebraicNumber::rational(sys_, 1); }
    AlgebraicNumber rational(mpq_class q) const {
        return AlgebraicNumber::rational(sys_, std::move(q));
    }

    AlgebraicNumber beta_pow(long k) const { return beta().pow(k); }

    /// Cylinder weight of a nonempty admissible word:
    /// beta^{-|mu|} * sum of eigenvector entries allowed after the word.
    AlgebraicNumber kms_weight(const Word& mu) const {
        if (mu.empty()) throw error(errc::empty_word, "weight of the empty word");
        a_->require_admissible(mu);
        AlgebraicNumber s = zero();
        for (Symbol j : a_->successors(mu.back())) s += p_[static_cast<size_t>(j - 1)];
        return beta_pow(-static_cast<long>(mu.size())) * s;
    }

    /// Left endpoint of the cylinder interval, built by prefix recursion.
    AlgebraicNumber endpoint_l(const Word& mu) const {
        if (mu.empty()) throw error(errc::empty_word, "endpoint of the empty word");
        a_->require_admissible(mu);
        AlgebraicNumber l = zero();
        for (Symbol j = 1; j < mu[0]; ++j) l += p_[static_cast<size_t>(j - 1)];
        for (size_t k = 1; k < mu.size(); ++k) {
            AlgebraicNumber s = zero();
            for (Symbol j = 1; j < mu[k]; ++j)
                if (a_->at(mu[k - 1], j)) s += p_[static_cast<size_t>(j - 1)];
            if (!s.is_zero()) l += beta_pow(-static_cast<long>(k)) * s;
        }
        return l;
    }

    AlgebraicNumber endpoint_r(const Word& mu) const { return endpoint_l(mu) + kms_weight(mu); }

private:
    std::shared_ptr<TransitionMatrix> a_;
    std::shared_ptr<const PerronSystem> sys_;
    std::vector<AlgebraicNumber> p_;

    std::vector<AlgebraicNumber> solve_eigenvector(const AlgebraicNumber& beta) const {
        int n = a_->size();
        // (A - beta I) v = 0 via exact Gauss-Jordan; the kernel is 1-dim.
        std::vector<std::vector<AlgebraicNumber>> m(
            static_cast<size_t>(n), std::vector<AlgebraicNumber>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m[i][j] = rational(a_->entry(i, j));
                if (i == j) m[i][j] -= beta;
            }
        std::vector<int> pivot_col(static_cast<size_t>(n), -1);
        int rank = 0;
        for (int col = 0; col < n && rank < n; ++col) {
            int pr = -1;
            for (int r = rank; r < n; ++r)
                if (!m[r][col].is_zero()) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(m[rank], m[pr]);
            AlgebraicNumber inv = m[rank][col].inverse();
            for (int j = col; j < n; ++j) m[rank][j] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == rank || m[r][col].is_zero()) continue;
                AlgebraicNumber f = m[r][col];
                for (int j = col; j < n; ++j) m[r][j] -= f * m[rank][j];
            }
            pivot_col[static_cast<size_t>(rank)] = col;
            ++rank;
        }
        if (rank != n - 1)
            throw error(errc::check_failed, "eigenvalue is not simple");
        // the free column is the one that is nobody's pivot
        std::vector<bool> is_pivot(static_cast<size_t>(n), false);
        for (int r = 0; r < rank; ++r) is_pivot[static_cast<size_t>(pivot_col[r])] = true;
        int free_col = 0;
        while (is_pivot[static_cast<size_t>(free_col)]) ++free_col;
        std::vector<AlgebraicNumber> v(static_cast<size_t>(n), zero());
        v[static_cast<size_t>(free_col)] = one();
        for (int r = 0; r < rank; ++r)
            v[static_cast<size_t>(pivot_col[r])] = -m[r][free_col];
        AlgebraicNumber sum = zero();
        for (const auto& x : v) sum += x;
        AlgebraicNumber inv = sum.inverse();
        for (auto& x : v) x *= inv;
        return v;
    }
};

/// All cylinder intervals of depth m in lexicographic order:
/// (word, left endpoint, right endpoint).
inline std::vector<std::tuple<Word, AlgebraicNumber, AlgebraicNumber>> adic_intervals(
    const PerronData& pd, int m) {
    if (m < 1) throw error(errc::bad_size, "interval depth must be >= 1");
    std::vector<std::tuple<Word, AlgebraicNumber, AlgebraicNumber>> out;
    AlgebraicNumber cursor = pd.zero();
    for (const Word& w : enumerate_words(pd.matrix(), m)) {
        AlgebraicNumber weight = pd.kms_weight(w);
        out.emplace_back(w, cursor, cursor + weight);
        cursor += weight;
    }
    return out;
}

} // namespace adicpl
