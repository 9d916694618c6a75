#pragma once

// Analytic realization on [0,1): word-decorated piecewise linear bijections
// attached to adic tables, the one-sided expansion map and its branch
// inverses, the order-preserving surjection from the shift space onto the
// interval, derivative step functions, and the semiconjugacy check.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adicpl/errors.hpp"
#include "adicpl/perron.hpp"
#include "adicpl/sft.hpp"
#include "adicpl/tables.hpp"

namespace adicpl {

struct PLPiece {
    Word domain;          // nu
    Word range;           // mu
    AlgebraicNumber x_lo; // l(nu)
    AlgebraicNumber x_hi; // r(nu)
    AlgebraicNumber y_lo; // l(mu)
    int slope_exp;        // slope is beta^slope_exp
};

/// Right-continuous piecewise linear bijection of [0,1) whose pieces carry
/// their word decoration.  Pieces tile [0,1) in order; sigma records the
/// rank of each piece's range interval.
class PLMap {
public:
    PLMap(PerronData pd, std::vector<PLPiece> pieces, std::vector<size_t> sigma)
        : pd_(std::move(pd)), pieces_(std::move(pieces)), sigma_(std::move(sigma)) {}

    const PerronData& perron() const { return pd_; }
    const std::vector<PLPiece>& pieces() const { return pieces_; }
    const std::vector<size_t>& sigma() const { return sigma_; }
    size_t size() const { return pieces_.size(); }

private:
    PerronData pd_;
    std::vector<PLPiece> pieces_;
    std::vector<size_t> sigma_;
};

/// Renders a table as its PL function: piece p maps the domain cylinder
/// interval onto the range cylinder interval with slope
/// beta^(|domain| - |range|).
inline PLMap table_to_pl(const PerronData& pd, const AdicTable& t) {
    if (!(pd.matrix() == t.matrix()))
        throw error(errc::matrix_mismatch, "table and Perron data disagree");
    std::vector<PLPiece> pieces;
    for (const TableRow& r : t.rows()) {
        PLPiece p;
        p.domain = r.domain;
        p.range = r.range;
        p.x_lo = pd.endpoint_l(r.domain);
        p.x_hi = pd.endpoint_r(r.domain);
        p.y_lo = pd.endpoint_l(r.range);
        p.slope_exp = static_cast<int>(r.domain.size()) - static_cast<int>(r.range.size());
        pieces.push_back(std::move(p));
    }
    // rank of each range interval
    std::vector<size_t> order(pieces.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return word_less(pieces[i].range, pieces[j].range);
    });
    std::vector<size_t> sigma(pieces.size());
    for (size_t rank = 0; rank < order.size(); ++rank) sigma[order[rank]] = rank;
    return PLMap(pd, std::move(pieces), std::move(sigma));
}

/// Projects the word decoration back to a table.
inline AdicTable pl_to_table(const PLMap& f) {
    std::vector<TableRow> rows;
    for (const PLPiece& p : f.pieces()) rows.push_back({p.domain, p.range});
    return AdicTable::validate(f.perron().matrix(), std::move(rows));
}

inline PLMap pl_compose(const PLMap& f, const PLMap& g) {
    return table_to_pl(f.perron(), compose(pl_to_table(f), pl_to_table(g)));
}

inline PLMap pl_inverse(const PLMap& f) {
    return table_to_pl(f.perron(), inverse(pl_to_table(f)));
}

/// Evaluates at t in [0,1); right continuous by the half-open convention.
inline AlgebraicNumber pl_eval(const PLMap& f, const AlgebraicNumber& t) {
    const PerronData& pd = f.perron();
    if (t.sign() < 0 || !(t < pd.one()))
        throw error(errc::out_of_domain, "argument outside [0,1)");
    // binary search for the piece with x_lo <= t
    size_t lo = 0, hi = f.size();
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (f.pieces()[mid].x_lo <= t)
            lo = mid;
        else
            hi = mid;
    }
    const PLPiece& p = f.pieces()[lo];
    return p.y_lo + pd.beta_pow(p.slope_exp) * (t - p.x_lo);
}

/// Index of the piece containing t; same search as pl_eval.
inline size_t pl_locate(const PLMap& f, const AlgebraicNumber& t) {
    const PerronData& pd = f.perron();
    if (t.sign() < 0 || !(t < pd.one()))
        throw error(errc::out_of_domain, "argument outside [0,1)");
    size_t lo = 0, hi = f.size();
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (f.pieces()[mid].x_lo <= t)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace detail {

// Depth-1 and depth-2 cylinder interval endpoints.
inline AlgebraicNumber symbol_l(const PerronData& pd, Symbol j) {
    AlgebraicNumber l = pd.zero();
    for (Symbol k = 1; k < j; ++k) l += pd.eigenvector()[static_cast<size_t>(k - 1)];
    return l;
}

inline Symbol locate_symbol(const PerronData& pd, const AlgebraicNumber& t) {
    AlgebraicNumber acc = pd.zero();
    for (Symbol j = 1; j <= pd.matrix().size(); ++j) {
        AlgebraicNumber next = acc + pd.eigenvector()[static_cast<size_t>(j - 1)];
        if (t < next) return j;
        acc = next;
    }
    throw error(errc::out_of_domain, "argument outside [0,1)");
}

} // namespace detail

/// One-sided expansion map: on the depth-2 cylinder interval for (i,j) it is
/// linear with slope beta onto the depth-1 interval of j.
inline AlgebraicNumber eval_f_a(const PerronData& pd, const AlgebraicNumber& t) {
    if (t.sign() < 0 || !(t < pd.one()))
        throw error(errc::out_of_domain, "argument outside [0,1)");
    Symbol i = detail::locate_symbol(pd, t);
    // walk the allowed (i,j) subintervals
    AlgebraicNumber lo = detail::symbol_l(pd, i);
    AlgebraicNumber binv = pd.beta_pow(-1);
    for (Symbol j : pd.matrix().successors(i)) {
        AlgebraicNumber width = binv * pd.eigenvector()[static_cast<size_t>(j - 1)];
        AlgebraicNumber hi = lo + width;
        if (t < hi)
            return pd.beta() * (t - lo) + detail::symbol_l(pd, j);
        lo = hi;
    }
    throw error(errc::out_of_domain, "argument escapes the cylinder tiling");
}

/// Branch inverse for symbol i: defined on the union of depth-1 intervals of
/// the successors of i, linear with slope 1/beta into the (i,j) subinterval.
inline AlgebraicNumber eval_g_i(const PerronData& pd, Symbol i, const AlgebraicNumber& t) {
    if (i < 1 || i > pd.matrix().size()) throw error(errc::bad_index, "symbol out of range");
    if (t.sign() < 0 || !(t < pd.one()))
        throw error(errc::out_of_domain, "argument outside [0,1)");
    Symbol j = detail::locate_symbol(pd, t);
    if (!pd.matrix().at(i, j))
        throw error(errc::out_of_domain, "argument outside the branch domain");
    AlgebraicNumber l_ij = detail::symbol_l(pd, i);
    AlgebraicNumber binv = pd.beta_pow(-1);
    for (Symbol k : pd.matrix().successors(i)) {
        if (k == j) break;
        l_ij += binv * pd.eigenvector()[static_cast<size_t>(k - 1)];
    }
    return binv * (t - detail::symbol_l(pd, j)) + l_ij;
}

/// Order preserving surjection value of an eventually periodic point: the
/// prefix series summed exactly, with the periodic tail folded by a
/// geometric factor.
inline AlgebraicNumber rho(const PerronData& pd, const EppPoint& x) {
    require_valid_point(pd.matrix(), x);
    size_t q = x.preamble().size();
    size_t per = x.cycle().size();
    auto coeff = [&](size_t n) {
        // contribution of coordinate n+1 given coordinate n (n >= 1)
        AlgebraicNumber c = pd.zero();
        if (n == 0) {
            for (Symbol j = 1; j < x.at(1); ++j) c += pd.eigenvector()[static_cast<size_t>(j - 1)];
        } else {
            Symbol prev = x.at(n), next = x.at(n + 1);
            for (Symbol j = 1; j < next; ++j)
                if (pd.matrix().at(prev, j)) c += pd.eigenvector()[static_cast<size_t>(j - 1)];
        }
        return c;
    };
    AlgebraicNumber head = pd.zero();
    for (size_t n = 0; n <= q; ++n) head += pd.beta_pow(-static_cast<long>(n)) * coeff(n);
    AlgebraicNumber tail = pd.zero();
    for (size_t n = q + 1; n <= q + per; ++n)
        tail += pd.beta_pow(-static_cast<long>(n)) * coeff(n);
    AlgebraicNumber denom = pd.one() - pd.beta_pow(-static_cast<long>(per));
    return head + tail / denom;
}

struct SingularSets {
    std::vector<AlgebraicNumber> breakpoints; // interior domain breakpoints
    std::vector<EppPoint> points;             // minimal extensions of domain words
};

inline SingularSets singular_sets(const PerronData& pd, const AdicTable& t) {
    if (!(pd.matrix() == t.matrix()))
        throw error(errc::matrix_mismatch, "table and Perron data disagree");
    SingularSets s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i > 0) s.breakpoints.push_back(pd.endpoint_l(t.rows()[i].domain));
        s.points.push_back(min_extension(t.matrix(), t.rows()[i].domain));
    }
    return s;
}

/// Step function on the shift space: constant on each domain cylinder.
struct StepFunction {
    std::vector<std::pair<Word, AlgebraicNumber>> steps;
};

/// The derivative as a cylinder function: beta^(|nu| - |mu|) on each row.
inline StepFunction derivative(const PerronData& pd, const AdicTable& t) {
    if (!(pd.matrix() == t.matrix()))
        throw error(errc::matrix_mismatch, "table and Perron data disagree");
    StepFunction d;
    for (const TableRow& r : t.rows())
        d.steps.emplace_back(r.domain,
                             pd.beta_pow(static_cast<long>(r.domain.size()) -
                                         static_cast<long>(r.range.size())));
    return d;
}

/// Expectation against the cylinder weights.
inline AlgebraicNumber kms_expectation(const PerronData& pd, const StepFunction& d) {
    AlgebraicNumber s = pd.zero();
    for (const auto& [w, v] : d.steps) s += v * pd.kms_weight(w);
    return s;
}

/// Exact equality of two step functions whose domains partition the space:
/// values must agree on every overlapping pair of cylinders.
inline bool step_functions_equal(const StepFunction& f, const StepFunction& g) {
    for (const auto& [wf, vf] : f.steps)
        for (const auto& [wg, vg] : g.steps) {
            switch (word_order(wf, wg)) {
                case WordOrder::Equal:
                case WordOrder::ProperPrefixOfFirst:
                case WordOrder::ProperPrefixOfSecond:
                    if (vf != vg) return false;
                    break;
                default:
                    break;
            }
        }
    return true;
}

enum class SemiconjugacyResult { Verified, SkippedSingular };

/// Verifies that applying the table commutes with the PL function through
/// the interval surjection, and that the local slope matches the derivative
/// exponent.  Points whose image hits 0, 1, or an interior breakpoint are
/// skipped: the surjection glues cylinder boundaries there and the PL
/// function is only right continuous.
inline SemiconjugacyResult check_semiconjugacy(const PerronData& pd, const AdicTable& t,
                                               const EppPoint& x) {
    PLMap f = table_to_pl(pd, t);
    AlgebraicNumber rx = rho(pd, x);
    if (rx.is_zero() || rx == pd.one()) return SemiconjugacyResult::SkippedSingular;
    for (size_t i = 1; i < t.size(); ++i)
        if (rx == f.pieces()[i].x_lo) return SemiconjugacyResult::SkippedSingular;

    AlgebraicNumber lhs = pl_eval(f, rx);
    AlgebraicNumber rhs = rho(pd, apply(t, x));
    if (lhs != rhs)
        throw error(errc::check_failed,
                    "value identity failed: f(rho(x)) = " + lhs.poly_string() +
                        " but rho(tau(x)) = " + rhs.poly_string());

    // slope at rho(x) against the cocycle exponent of the row containing x
    size_t piece = pl_locate(f, rx);
    int d_exp = 0;
    bool found = false;
    for (const TableRow& r : t.rows()) {
        if (x.prefix(r.domain.size()) == r.domain) {
            d_exp = static_cast<int>(r.domain.size()) - static_cast<int>(r.range.size());
            found = true;
            break;
        }
    }
    if (!found) throw error(errc::bad_point, "point escapes the domain partition");
    if (f.pieces()[piece].slope_exp != d_exp)
        throw error(errc::check_failed,
                    "slope identity failed: piece exponent " +
                        std::to_string(f.pieces()[piece].slope_exp) + " vs cocycle " +
                        std::to_string(d_exp));
    return SemiconjugacyResult::Verified;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

namespace detail {

inline std::string word_string(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

struct FlatPiece {
    AlgebraicNumber x_lo, x_hi, y_lo;
    int slope_exp;
    Word domain, range;
    bool merged = false;
};

inline std::vector<FlatPiece> render_pieces(const PLMap& f, bool merge_colinear) {
    const PerronData& pd = f.perron();
    std::vector<FlatPiece> out;
    for (const PLPiece& p : f.pieces()) {
        FlatPiece fp{p.x_lo, p.x_hi, p.y_lo, p.slope_exp, p.domain, p.range, false};
        if (merge_colinear && !out.empty()) {
            FlatPiece& prev = out.back();
            if (prev.slope_exp == fp.slope_exp) {
                AlgebraicNumber prev_y_hi =
                    prev.y_lo + pd.beta_pow(prev.slope_exp) * (prev.x_hi - prev.x_lo);
                if (prev_y_hi == fp.y_lo) {
                    prev.x_hi = fp.x_hi;
                    prev.merged = true;
                    continue;
                }
            }
        }
        out.push_back(std::move(fp));
    }
    return out;
}

} // namespace detail

/// CSV rows: decimal endpoints and slope exponent plus exact polynomial
/// columns and the word decoration.  Colinear continuous pieces are merged
/// by default; merged segments span several words and leave the word
/// columns empty.
inline std::string export_pl_csv(const PLMap& f, int digits, bool merge_colinear = true) {
    std::ostringstream os;
    os << "x_lo,x_hi,y_at_lo,slope_exponent,nu,mu,x_lo_exact,x_hi_exact,y_at_lo_exact\n";
    for (const auto& p : detail::render_pieces(f, merge_colinear)) {
        os << p.x_lo.decimal(digits) << ',' << p.x_hi.decimal(digits) << ','
           << p.y_lo.decimal(digits) << ',' << p.slope_exp << ','
           << (p.merged ? "" : detail::word_string(p.domain)) << ','
           << (p.merged ? "" : detail::word_string(p.range)) << ',' << p.x_lo.poly_string()
           << ',' << p.x_hi.poly_string() << ',' << p.y_lo.poly_string() << '\n';
    }
    return os.str();
}

/// SVG graph on the unit square: one segment per piece, filled circle at the
/// closed left end, open circle at the right end.
inline std::string export_pl_svg(const PLMap& f, int digits) {
    const PerronData& pd = f.perron();
    const int size = 512, margin = 32;
    auto coord = [&](const AlgebraicNumber& v, bool flip) {
        double t = std::stod(v.decimal(std::max(digits, 8)));
        double c = flip ? 1.0 - t : t;
        return margin + c * size;
    };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin
       << "\" height=\"" << size + 2 * margin << "\">\n";
    os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
       << "\" height=\"" << size << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (const auto& p : detail::render_pieces(f, true)) {
        AlgebraicNumber y_hi = p.y_lo + pd.beta_pow(p.slope_exp) * (p.x_hi - p.x_lo);
        double x1 = coord(p.x_lo, false), y1 = coord(p.y_lo, true);
        double x2 = coord(p.x_hi, false), y2 = coord(y_hi, true);
        os << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
           << y2 << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        os << "  <circle cx=\"" << x1 << "\" cy=\"" << y1
           << "\" r=\"3\" fill=\"black\"/>\n";
        os << "  <circle cx=\"" << x2 << "\" cy=\"" << y2
           << "\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace adicpl
