#pragma once

// One-sided topological Markov shift combinatorics: the 0/1 transition
// matrix, admissible words in lexicographic order, follower sets, and the
// eventually periodic points that serve as exactly representable elements
// of the shift space.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "adicpl/errors.hpp"

namespace adicpl {

using Symbol = int; // 1-based alphabet {1, ..., n}
using Word = std::vector<Symbol>;

class TransitionMatrix {
public:
    /// Validates a 0/1 matrix: no zero row or column, irreducible, and the
    /// shift space has no isolated points (irreducible + not a permutation
    /// matrix).  Each failure raises a distinct error code.
    static TransitionMatrix validate(const std::vector<std::vector<int>>& rows) {
        int n = static_cast<int>(rows.size());
        if (n < 2) throw error(errc::bad_size, "alphabet size must be at least 2");
        TransitionMatrix m;
        m.n_ = n;
        m.a_.assign(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw error(errc::bad_size, "matrix is not square");
            for (int j = 0; j < n; ++j) {
                int v = rows[i][j];
                if (v != 0 && v != 1)
                    throw error(errc::bad_entry, "entries must be 0 or 1");
                m.a_[static_cast<size_t>(i) * n + j] = static_cast<uint8_t>(v);
            }
        }
        for (int i = 0; i < n; ++i) {
            bool row = false, col = false;
            for (int j = 0; j < n; ++j) {
                row |= m.a_[static_cast<size_t>(i) * n + j] != 0;
                col |= m.a_[static_cast<size_t>(j) * n + i] != 0;
            }
            if (!row) throw error(errc::zero_row, "row " + std::to_string(i + 1) + " is zero");
            if (!col) throw error(errc::zero_column, "column " + std::to_string(i + 1) + " is zero");
        }
        if (!m.irreducible())
            throw error(errc::reducible_matrix, "matrix is not irreducible");
        if (m.is_permutation())
            throw error(errc::condition_i_failed,
                        "shift space is finite (permutation matrix)");
        return m;
    }

    int size() const { return n_; }

    bool at(Symbol i, Symbol j) const {
        return a_[static_cast<size_t>(i - 1) * n_ + (j - 1)] != 0;
    }

    int entry(int i0, int j0) const { return a_[static_cast<size_t>(i0) * n_ + j0]; }

    int out_degree(Symbol i) const {
        int d = 0;
        for (Symbol j = 1; j <= n_; ++j) d += at(i, j) ? 1 : 0;
        return d;
    }

    std::vector<Symbol> successors(Symbol i) const {
        std::vector<Symbol> s;
        for (Symbol j = 1; j <= n_; ++j)
            if (at(i, j)) s.push_back(j);
        return s;
    }

    Symbol min_successor(Symbol i) const {
        for (Symbol j = 1; j <= n_; ++j)
            if (at(i, j)) return j;
        return 0; // unreachable for validated matrices
    }

    Symbol max_successor(Symbol i) const {
        for (Symbol j = n_; j >= 1; --j)
            if (at(i, j)) return j;
        return 0;
    }

    /// Follower sets of one-symbol words agree iff the rows agree.
    bool same_row(Symbol i, Symbol j) const {
        for (Symbol k = 1; k <= n_; ++k)
            if (at(i, k) != at(j, k)) return false;
        return true;
    }

    /// Row bitmask, usable as a follower-class key.
    uint32_t row_mask(Symbol i) const {
        uint32_t m = 0;
        for (Symbol j = 1; j <= n_; ++j)
            if (at(i, j)) m |= 1u << (j - 1);
        return m;
    }

    bool admissible(const Word& w) const {
        for (Symbol s : w)
            if (s < 1 || s > n_) return false;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (!at(w[i], w[i + 1])) return false;
        return true;
    }

    void require_admissible(const Word& w) const {
        if (!admissible(w))
            throw error(errc::inadmissible_word, "word is not admissible");
    }

    bool operator==(const TransitionMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    TransitionMatrix() = default;
    int n_ = 0;
    std::vector<uint8_t> a_;

    bool irreducible() const {
        // reach[i][j]: path of length >= 1 from i to j
        std::vector<std::vector<bool>> reach(n_, std::vector<bool>(n_, false));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) reach[i][j] = entry(i, j) != 0;
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!reach[i][j]) return false;
        return true;
    }

    bool is_permutation() const {
        for (int i = 0; i < n_; ++i) {
            int rs = 0, cs = 0;
            for (int j = 0; j < n_; ++j) {
                rs += entry(i, j);
                cs += entry(j, i);
            }
            if (rs != 1 || cs != 1) return false;
        }
        return true;
    }
};

enum class WordOrder { Less, Greater, ProperPrefixOfSecond, ProperPrefixOfFirst, Equal };

inline WordOrder word_order(const Word& a, const Word& b) {
    size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    if (k == a.size() && k == b.size()) return WordOrder::Equal;
    if (k == a.size()) return WordOrder::ProperPrefixOfSecond;
    if (k == b.size()) return WordOrder::ProperPrefixOfFirst;
    return a[k] < b[k] ? WordOrder::Less : WordOrder::Greater;
}

/// Strict cylinder order; only defined for words with disjoint cylinders.
inline bool word_less(const Word& a, const Word& b) {
    switch (word_order(a, b)) {
        case WordOrder::Less: return true;
        case WordOrder::Greater: return false;
        default:
            throw error(errc::bad_format, "cylinder order undefined for nested words");
    }
}

inline bool is_prefix(const Word& p, const Word& w) {
    if (p.size() > w.size()) return false;
    return std::equal(p.begin(), p.end(), w.begin());
}

inline Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

/// All admissible words of length m, lexicographically increasing.
inline std::vector<Word> enumerate_words(const TransitionMatrix& a, int m) {
    if (m < 0) throw error(errc::bad_size, "word length must be nonnegative");
    std::vector<Word> out;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    Word cur;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == m) {
            out.push_back(cur);
            return;
        }
        if (cur.empty()) {
            for (Symbol j = 1; j <= a.size(); ++j) {
                cur.push_back(j);
                self(self, depth + 1);
                cur.pop_back();
            }
        } else {
            for (Symbol j : a.successors(cur.back())) {
                cur.push_back(j);
                self(self, depth + 1);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

/// Follower sets agree iff the transition rows of the last symbols agree.
inline bool follower_equal(const TransitionMatrix& a, const Word& mu, const Word& nu) {
    if (mu.empty() || nu.empty())
        throw error(errc::empty_word, "follower set of the empty word is not supported");
    a.require_admissible(mu);
    a.require_admissible(nu);
    return a.same_row(mu.back(), nu.back());
}

/// Eventually periodic point: preamble followed by an infinitely repeated
/// primitive cycle.  Canonical form = primitive cycle with the earliest
/// possible period start; this makes equality a plain comparison.
class EppPoint {
public:
    EppPoint(Word preamble, Word cycle) : pre_(std::move(preamble)), cyc_(std::move(cycle)) {
        if (cyc_.empty()) throw error(errc::bad_point, "cycle must be nonempty");
        canonicalize();
    }

    const Word& preamble() const { return pre_; }
    const Word& cycle() const { return cyc_; }

    /// 1-based coordinate access.
    Symbol at(size_t i) const {
        if (i == 0) throw error(errc::bad_index, "coordinates are 1-based");
        if (i <= pre_.size()) return pre_[i - 1];
        return cyc_[(i - 1 - pre_.size()) % cyc_.size()];
    }

    Word prefix(size_t m) const {
        Word w;
        w.reserve(m);
        for (size_t i = 1; i <= m; ++i) w.push_back(at(i));
        return w;
    }

    /// Drops the first k coordinates.
    EppPoint shifted(size_t k) const {
        if (k < pre_.size())
            return EppPoint(Word(pre_.begin() + static_cast<long>(k), pre_.end()), cyc_);
        size_t r = (k - pre_.size()) % cyc_.size();
        Word c(cyc_.begin() + static_cast<long>(r), cyc_.end());
        c.insert(c.end(), cyc_.begin(), cyc_.begin() + static_cast<long>(r));
        return EppPoint({}, std::move(c));
    }

    bool operator==(const EppPoint& o) const { return pre_ == o.pre_ && cyc_ == o.cyc_; }
    bool operator!=(const EppPoint& o) const { return !(*this == o); }

private:
    Word pre_, cyc_;

    void canonicalize() {
        // primitive cycle
        size_t len = cyc_.size();
        for (size_t d = 1; d <= len / 2; ++d) {
            if (len % d != 0) continue;
            bool pow = true;
            for (size_t i = d; i < len && pow; ++i) pow = cyc_[i] == cyc_[i % d];
            if (pow) {
                cyc_.resize(d);
                break;
            }
        }
        // earliest period start
        while (!pre_.empty() && pre_.back() == cyc_.back()) {
            pre_.pop_back();
            cyc_.insert(cyc_.begin(), cyc_.back());
            cyc_.pop_back();
        }
    }
};

/// Checks that preamble + cycle + wrap-around transitions are allowed.
inline void require_valid_point(const TransitionMatrix& a, const EppPoint& x) {
    Word probe = x.prefix(x.preamble().size() + 2 * x.cycle().size());
    if (!a.admissible(probe))
        throw error(errc::bad_point, "point is not admissible for the matrix");
}

namespace detail {

inline EppPoint deterministic_extension(const TransitionMatrix& a, const Word& w, bool maximal) {
    if (w.empty()) throw error(errc::empty_word, "cannot extend the empty word");
    a.require_admissible(w);
    Word seq = w;
    // The continuation depends only on the current symbol, so the orbit of
    // the last symbol enters a cycle within n steps.
    std::vector<int> first_seen(static_cast<size_t>(a.size()) + 1, -1);
    int pos = static_cast<int>(seq.size()) - 1;
    first_seen[static_cast<size_t>(seq.back())] = pos;
    while (true) {
        Symbol next = maximal ? a.max_successor(seq.back()) : a.min_successor(seq.back());
        seq.push_back(next);
        ++pos;
        if (first_seen[static_cast<size_t>(next)] >= 0) {
            int start = first_seen[static_cast<size_t>(next)];
            Word pre(seq.begin(), seq.begin() + start);
            Word cyc(seq.begin() + start, seq.end() - 1);
            return EppPoint(std::move(pre), std::move(cyc));
        }
        first_seen[static_cast<size_t>(next)] = pos;
    }
}

} // namespace detail

/// Extends a word by always taking the smallest allowed successor.
inline EppPoint min_extension(const TransitionMatrix& a, const Word& w) {
    return detail::deterministic_extension(a, w, false);
}

/// Extends a word by always taking the largest allowed successor.
inline EppPoint max_extension(const TransitionMatrix& a, const Word& w) {
    return detail::deterministic_extension(a, w, true);
}

/// Lexicographic order on the shift space, decided on a sufficient prefix.
inline bool epp_less(const EppPoint& x, const EppPoint& y) {
    size_t lcm = std::lcm(x.cycle().size(), y.cycle().size());
    size_t bound = std::max(x.preamble().size(), y.preamble().size()) + lcm;
    for (size_t i = 1; i <= bound; ++i) {
        if (x.at(i) != y.at(i)) return x.at(i) < y.at(i);
    }
    return false; // equal
}

} // namespace adicpl
