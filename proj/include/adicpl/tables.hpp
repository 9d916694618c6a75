#pragma once

// Adic tables: two columns of admissible words presenting elements of the
// continuous full group of the shift.  Both columns partition the shift
// space into cylinders and each row preserves follower sets.  Expansion,
// canonical reduction, composition, inversion, the point action, the orbit
// cocycle, and the order-preserving classification live here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "adicpl/errors.hpp"
#include "adicpl/sft.hpp"

namespace adicpl {

struct TableRow {
    Word domain; // nu: where points are read
    Word range;  // mu: what they are rewritten to

    bool operator==(const TableRow&) const = default;
};

namespace detail {

// A column partitions the space iff the words form the leaf set of a
// complete prefix tree: no word is a prefix of another, and every interior
// node carries all of its allowed successors.
struct TrieNode {
    std::map<Symbol, TrieNode> children;
    bool selected = false;
};

inline void check_partition_column(const TransitionMatrix& a, const std::vector<const Word*>& col,
                                   const char* which) {
    TrieNode root;
    for (const Word* w : col) {
        TrieNode* node = &root;
        for (size_t i = 0; i < w->size(); ++i) {
            if (node->selected)
                throw error(errc::non_partition,
                            std::string(which) + " column: one word is a prefix of another");
            node = &node->children[(*w)[i]];
        }
        if (node->selected)
            throw error(errc::non_partition, std::string(which) + " column: duplicate word");
        if (!node->children.empty())
            throw error(errc::non_partition,
                        std::string(which) + " column: one word is a prefix of another");
        node->selected = true;
    }
    // completeness
    auto rec = [&](auto&& self, const TrieNode& node, Symbol last) -> void {
        if (node.selected) return;
        std::vector<Symbol> expect;
        if (last == 0) {
            for (Symbol j = 1; j <= a.size(); ++j) expect.push_back(j);
        } else {
            expect = a.successors(last);
        }
        std::vector<Symbol> got;
        for (const auto& [sym, child] : node.children) got.push_back(sym);
        if (got != expect)
            throw error(errc::non_partition,
                        std::string(which) + " column does not cover the space");
        for (const auto& [sym, child] : node.children) self(self, child, sym);
    };
    rec(rec, root, 0);
}

} // namespace detail

class AdicTable {
public:
    /// Validates rows: admissible nonempty words, follower match per row,
    /// and both columns partition the space.  Rows are stored sorted by
    /// domain word.
    static AdicTable validate(const TransitionMatrix& a, std::vector<TableRow> rows) {
        if (rows.empty()) throw error(errc::bad_size, "table must have at least one row");
        for (const auto& r : rows) {
            if (r.domain.empty() || r.range.empty())
                throw error(errc::empty_word, "table words must be nonempty");
            if (!a.admissible(r.domain) || !a.admissible(r.range))
                throw error(errc::inadmissible_word, "table word is not admissible");
        }
        for (const auto& r : rows)
            if (!a.same_row(r.domain.back(), r.range.back()))
                throw error(errc::follower_mismatch,
                            "row words have different follower sets");
        std::vector<const Word*> dom, rng;
        for (const auto& r : rows) {
            dom.push_back(&r.domain);
            rng.push_back(&r.range);
        }
        detail::check_partition_column(a, dom, "domain");
        detail::check_partition_column(a, rng, "range");
        std::sort(rows.begin(), rows.end(),
                  [](const TableRow& x, const TableRow& y) { return word_less(x.domain, y.domain); });
        return AdicTable(a, std::move(rows));
    }

    static AdicTable identity(const TransitionMatrix& a) {
        std::vector<TableRow> rows;
        for (Symbol j = 1; j <= a.size(); ++j) rows.push_back({{j}, {j}});
        return validate(a, std::move(rows));
    }

    const TransitionMatrix& matrix() const { return a_; }
    const std::vector<TableRow>& rows() const { return rows_; }
    size_t size() const { return rows_.size(); }

    int domain_depth() const {
        size_t d = 0;
        for (const auto& r : rows_) d = std::max(d, r.domain.size());
        return static_cast<int>(d);
    }

    int range_depth() const {
        size_t d = 0;
        for (const auto& r : rows_) d = std::max(d, r.range.size());
        return static_cast<int>(d);
    }

    bool operator==(const AdicTable& o) const { return a_ == o.a_ && rows_ == o.rows_; }

private:
    AdicTable(TransitionMatrix a, std::vector<TableRow> rows)
        : a_(std::move(a)), rows_(std::move(rows)) {}
    friend AdicTable unchecked_table(const TransitionMatrix&, std::vector<TableRow>);
    TransitionMatrix a_;
    std::vector<TableRow> rows_;
};

/// Internal fast path for rows already known valid (sorted on construction).
inline AdicTable unchecked_table(const TransitionMatrix& a, std::vector<TableRow> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const TableRow& x, const TableRow& y) { return word_less(x.domain, y.domain); });
    return AdicTable(a, std::move(rows));
}

inline void require_same_matrix(const AdicTable& t1, const AdicTable& t2) {
    if (!(t1.matrix() == t2.matrix()))
        throw error(errc::matrix_mismatch, "tables belong to different shifts");
}

/// Replaces row i by its complete one-step family: one child row per
/// allowed successor symbol, appended to both words.
inline AdicTable expand_row(const AdicTable& t, size_t i) {
    if (i >= t.size()) throw error(errc::bad_index, "row index out of range");
    std::vector<TableRow> rows;
    for (size_t k = 0; k < t.size(); ++k) {
        const TableRow& r = t.rows()[k];
        if (k != i) {
            rows.push_back(r);
            continue;
        }
        for (Symbol s : t.matrix().successors(r.domain.back())) {
            TableRow child{r.domain, r.range};
            child.domain.push_back(s);
            child.range.push_back(s);
            rows.push_back(std::move(child));
        }
    }
    return unchecked_table(t.matrix(), std::move(rows));
}

/// Enumerates all admissible continuations of w of exact length k.
inline std::vector<Word> continuations(const TransitionMatrix& a, const Word& w, int k) {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, Symbol last, int depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (Symbol j : a.successors(last)) {
            cur.push_back(j);
            self(self, j, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, w.back(), 0);
    return out;
}

/// Expands rows until the domain column is exactly the set of admissible
/// words of length p.  Requires p >= domain depth.
inline AdicTable expand_to_depth(const AdicTable& t, int p) {
    if (p < t.domain_depth())
        throw error(errc::bad_depth, "target depth is below the table's domain depth");
    std::vector<TableRow> rows;
    for (const TableRow& r : t.rows()) {
        int k = p - static_cast<int>(r.domain.size());
        if (k == 0) {
            rows.push_back(r);
            continue;
        }
        for (const Word& eta : continuations(t.matrix(), r.domain, k))
            rows.push_back({word_concat(r.domain, eta), word_concat(r.range, eta)});
    }
    return unchecked_table(t.matrix(), std::move(rows));
}

/// Same, for the range column.
inline AdicTable expand_to_range_depth(const AdicTable& t, int q) {
    if (q < t.range_depth())
        throw error(errc::bad_depth, "target depth is below the table's range depth");
    std::vector<TableRow> rows;
    for (const TableRow& r : t.rows()) {
        int k = q - static_cast<int>(r.range.size());
        if (k == 0) {
            rows.push_back(r);
            continue;
        }
        for (const Word& eta : continuations(t.matrix(), r.range, k))
            rows.push_back({word_concat(r.domain, eta), word_concat(r.range, eta)});
    }
    return unchecked_table(t.matrix(), std::move(rows));
}

/// Two tables present the same map iff their expansions to a common uniform
/// domain depth agree word for word.
inline bool tables_equivalent(const AdicTable& t1, const AdicTable& t2) {
    require_same_matrix(t1, t2);
    int m = std::max(t1.domain_depth(), t2.domain_depth());
    AdicTable e1 = expand_to_depth(t1, m);
    AdicTable e2 = expand_to_depth(t2, m);
    return e1.rows() == e2.rows();
}

/// Greedy canonical reduction: merge every complete sibling family whose
/// stems have equal follower sets, until no merge applies.
inline AdicTable reduce(const AdicTable& t) {
    const TransitionMatrix& a = t.matrix();
    std::vector<TableRow> rows = t.rows();
    bool merged = true;
    while (merged) {
        merged = false;
        std::map<std::pair<Word, Word>, std::vector<std::pair<Symbol, size_t>>> groups;
        for (size_t i = 0; i < rows.size(); ++i) {
            const TableRow& r = rows[i];
            if (r.domain.size() < 2 || r.range.size() < 2) continue;
            if (r.domain.back() != r.range.back()) continue;
            Word dstem(r.domain.begin(), r.domain.end() - 1);
            Word rstem(r.range.begin(), r.range.end() - 1);
            groups[{std::move(dstem), std::move(rstem)}].emplace_back(r.domain.back(), i);
        }
        std::vector<bool> drop(rows.size(), false);
        std::vector<TableRow> added;
        for (auto& [stems, members] : groups) {
            const auto& [dstem, rstem] = stems;
            if (!a.same_row(dstem.back(), rstem.back())) continue;
            std::vector<Symbol> have;
            for (auto& [sym, idx] : members) have.push_back(sym);
            std::sort(have.begin(), have.end());
            if (have != a.successors(dstem.back())) continue;
            for (auto& [sym, idx] : members) drop[idx] = true;
            added.push_back({dstem, rstem});
            merged = true;
        }
        if (merged) {
            std::vector<TableRow> next;
            for (size_t i = 0; i < rows.size(); ++i)
                if (!drop[i]) next.push_back(std::move(rows[i]));
            next.insert(next.end(), added.begin(), added.end());
            rows = std::move(next);
        }
    }
    return unchecked_table(a, std::move(rows));
}

/// Product table presenting (first after second): points are transformed by
/// `second`, then by `first`.  Built on the common refinement by prefix
/// matching, then reduced.
inline AdicTable compose(const AdicTable& first, const AdicTable& second) {
    require_same_matrix(first, second);
    std::vector<TableRow> rows;
    for (const TableRow& r2 : second.rows()) {
        for (const TableRow& r1 : first.rows()) {
            if (is_prefix(r2.range, r1.domain)) {
                Word w(r1.domain.begin() + static_cast<long>(r2.range.size()), r1.domain.end());
                rows.push_back({word_concat(r2.domain, w), r1.range});
            } else if (is_prefix(r1.domain, r2.range) && r1.domain.size() < r2.range.size()) {
                Word w(r2.range.begin() + static_cast<long>(r1.domain.size()), r2.range.end());
                rows.push_back({r2.domain, word_concat(r1.range, w)});
            }
        }
    }
    return reduce(AdicTable::validate(first.matrix(), std::move(rows)));
}

/// Column swap; valid by the symmetry of the table conditions.
inline AdicTable inverse(const AdicTable& t) {
    std::vector<TableRow> rows;
    for (const TableRow& r : t.rows()) rows.push_back({r.range, r.domain});
    return unchecked_table(t.matrix(), std::move(rows));
}

/// Applies the presented map to an eventually periodic point: the unique
/// row whose domain word prefixes the point rewrites that prefix.
inline EppPoint apply(const AdicTable& t, const EppPoint& x) {
    for (const TableRow& r : t.rows()) {
        if (x.prefix(r.domain.size()) != r.domain) continue;
        EppPoint tail = x.shifted(r.domain.size());
        return EppPoint(word_concat(r.range, tail.preamble()), tail.cycle());
    }
    throw error(errc::bad_point, "point escapes the domain partition");
}

struct CocycleStep {
    Word domain;
    int exponent; // |domain word| - |range word| on this cylinder

    bool operator==(const CocycleStep&) const = default;
};

/// Orbit cocycle exponents, constant on each domain cylinder.
inline std::vector<CocycleStep> cocycle(const AdicTable& t) {
    std::vector<CocycleStep> steps;
    for (const TableRow& r : t.rows())
        steps.push_back({r.domain, static_cast<int>(r.domain.size()) -
                                       static_cast<int>(r.range.size())});
    return steps;
}

enum class OrderClass { OrderPreserving, CyclicOrderPreserving, General };

inline const char* order_class_name(OrderClass c) {
    switch (c) {
        case OrderClass::OrderPreserving: return "order_preserving";
        case OrderClass::CyclicOrderPreserving: return "cyclic_order_preserving";
        case OrderClass::General: return "general";
    }
    return "unknown";
}

/// With rows sorted by domain word, the element is order preserving when the
/// range column is increasing, and cyclic order preserving when exactly one
/// circular descent occurs.
inline OrderClass classify_order(const AdicTable& t) {
    size_t m = t.size();
    if (m == 1) return OrderClass::OrderPreserving;
    int descents = 0;
    bool linear = true;
    for (size_t i = 0; i < m; ++i) {
        const Word& cur = t.rows()[i].range;
        const Word& nxt = t.rows()[(i + 1) % m].range;
        if (!word_less(cur, nxt)) {
            ++descents;
            if (i + 1 < m) linear = false;
        }
    }
    if (linear && descents == 1) return OrderClass::OrderPreserving;
    if (descents == 1) return OrderClass::CyclicOrderPreserving;
    return OrderClass::General;
}

// ---------------------------------------------------------------------------
// Seeded random generation
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Word> random_partition(const TransitionMatrix& a, std::mt19937_64& rng,
                                          int max_depth) {
    std::vector<Word> leaves;
    Word cur;
    auto rec = [&](auto&& self, int depth) -> void {
        bool split = depth == 0 ||
                     (depth < max_depth && std::uniform_int_distribution<int>(0, 1)(rng) == 1);
        if (!split) {
            leaves.push_back(cur);
            return;
        }
        std::vector<Symbol> kids;
        if (cur.empty()) {
            for (Symbol j = 1; j <= a.size(); ++j) kids.push_back(j);
        } else {
            kids = a.successors(cur.back());
        }
        for (Symbol j : kids) {
            cur.push_back(j);
            self(self, depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return leaves;
}

// Searches for a partition whose leaf follower classes realize `need`
// (a multiset when `ordered` is false, the exact lex-order sequence when
// true).  The domain partition itself is always a solution, so the
// backtracking cannot come up empty within the same depth budget.
struct PartitionSearch {
    const TransitionMatrix& a;
    std::mt19937_64& rng;
    int max_depth;
    bool ordered;
    std::map<uint32_t, int> need_multiset;
    std::vector<uint32_t> need_sequence;
    std::vector<Word> result;
    long budget = 2000000;

    bool run(const std::vector<uint32_t>& classes) {
        if (ordered) {
            need_sequence = classes;
        } else {
            for (uint32_t c : classes) ++need_multiset[c];
        }
        result.clear();
        std::vector<Word> pending;
        for (Symbol j = a.size(); j >= 1; --j) pending.push_back({j});
        return search(pending, 0, static_cast<int>(classes.size()));
    }

private:
    // pending is a stack with the lexicographically first open node on top
    bool search(std::vector<Word>& pending, size_t consumed, int remaining) {
        if (--budget < 0) return false;
        if (pending.empty()) return remaining == 0;
        if (static_cast<int>(pending.size()) > remaining) return false;
        Word w = pending.back();
        pending.pop_back();
        uint32_t cls = a.row_mask(w.back());
        bool leaf_ok = ordered ? (consumed < need_sequence.size() && need_sequence[consumed] == cls)
                               : (need_multiset[cls] > 0);
        bool split_ok = static_cast<int>(w.size()) < max_depth;
        bool leaf_first = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
        for (int attempt = 0; attempt < 2; ++attempt) {
            bool try_leaf = (attempt == 0) == leaf_first;
            if (try_leaf && leaf_ok) {
                result.push_back(w);
                if (!ordered) --need_multiset[cls];
                if (search(pending, consumed + 1, remaining - 1)) return true;
                if (!ordered) ++need_multiset[cls];
                result.pop_back();
            } else if (!try_leaf && split_ok) {
                auto kids = a.successors(w.back());
                for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
                    Word child = w;
                    child.push_back(*it);
                    pending.push_back(std::move(child));
                }
                if (search(pending, consumed, remaining)) return true;
                pending.resize(pending.size() - kids.size());
            }
        }
        pending.push_back(std::move(w));
        return false;
    }
};

} // namespace detail

/// Seeded random valid table: a random domain partition, a searched range
/// partition with matching follower classes, and a random in-class pairing.
inline AdicTable random_table(const TransitionMatrix& a, uint64_t seed, int max_depth) {
    if (max_depth < 1) throw error(errc::bad_depth, "max_depth must be >= 1");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Word> domain = detail::random_partition(a, rng, max_depth);
        std::vector<uint32_t> classes;
        for (const Word& w : domain) classes.push_back(a.row_mask(w.back()));
        detail::PartitionSearch search{a, rng, max_depth, false, {}, {}, {}, 2000000};
        if (!search.run(classes)) continue;
        std::vector<Word> range = search.result;
        // random pairing within follower classes
        std::map<uint32_t, std::vector<size_t>> dom_by_class, rng_by_class;
        for (size_t i = 0; i < domain.size(); ++i)
            dom_by_class[a.row_mask(domain[i].back())].push_back(i);
        for (size_t i = 0; i < range.size(); ++i)
            rng_by_class[a.row_mask(range[i].back())].push_back(i);
        std::vector<TableRow> rows(domain.size());
        for (auto& [cls, dis] : dom_by_class) {
            auto& ris = rng_by_class[cls];
            std::shuffle(ris.begin(), ris.end(), rng);
            for (size_t k = 0; k < dis.size(); ++k)
                rows[dis[k]] = {domain[dis[k]], range[ris[k]]};
        }
        return AdicTable::validate(a, std::move(rows));
    }
    throw error(errc::generation_failed, "random table generation dead-ended");
}

/// Seeded random order-preserving (rotation = 0) or cyclic order-preserving
/// table: the range partition is searched with the follower-class sequence
/// aligned to the rotated domain sequence.  Nontrivial rotations are not
/// always realizable (the lex-first leaf class is forced by the minimal
/// path), so rotations are tried in random order with 0 as the fallback.
inline AdicTable random_ordered_table(const TransitionMatrix& a, uint64_t seed, int max_depth,
                                      bool cyclic) {
    if (max_depth < 1) throw error(errc::bad_depth, "max_depth must be >= 1");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Word> domain = detail::random_partition(a, rng, max_depth);
        size_t m = domain.size();
        std::vector<size_t> rots;
        if (cyclic && m > 1) {
            for (size_t r = 1; r < m; ++r) rots.push_back(r);
            std::shuffle(rots.begin(), rots.end(), rng);
        }
        rots.push_back(0);
        for (size_t rot : rots) {
            // range leaf i (in lex order) pairs with domain leaf (i + rot) mod m
            std::vector<uint32_t> classes(m);
            for (size_t i = 0; i < m; ++i)
                classes[i] = a.row_mask(domain[(i + rot) % m].back());
            detail::PartitionSearch search{a, rng, max_depth, true, {}, {}, {}, 200000};
            if (!search.run(classes)) continue;
            std::vector<TableRow> rows(m);
            for (size_t i = 0; i < m; ++i)
                rows[(i + rot) % m] = {domain[(i + rot) % m], search.result[i]};
            return AdicTable::validate(a, std::move(rows));
        }
    }
    throw error(errc::generation_failed, "ordered table generation dead-ended");
}

} // namespace adicpl
