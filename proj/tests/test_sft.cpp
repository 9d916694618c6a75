#include <catch2/catch_amalgamated.hpp>

#include "adicpl/builtins.hpp"
#include "adicpl/sft.hpp"

using namespace adicpl;

namespace {
const TransitionMatrix fib = builtin_matrix("fib");
const TransitionMatrix full2 = builtin_matrix("full2");
const TransitionMatrix full3 = builtin_matrix("full3");
} // namespace

TEST_CASE("matrix validation accepts the standard examples") {
    CHECK(full2.size() == 2);
    CHECK(fib.size() == 2);
    CHECK(fib.at(2, 1));
    CHECK_FALSE(fib.at(2, 2));
}

TEST_CASE("matrix validation rejects each failure mode distinctly") {
    auto code_of = [](const std::vector<std::vector<int>>& rows) {
        try {
            TransitionMatrix::validate(rows);
        } catch (const error& e) {
            return e.code();
        }
        return errc::check_failed;
    };
    CHECK(code_of({{0, 0}, {1, 1}}) == errc::zero_row);
    CHECK(code_of({{1, 0}, {1, 0}}) == errc::zero_column);
    CHECK(code_of({{1, 0}, {0, 1}}) == errc::reducible_matrix);
    // two periodic points only: a finite shift space
    CHECK(code_of({{0, 1}, {1, 0}}) == errc::condition_i_failed);
    CHECK(code_of({{1, 2}, {1, 0}}) == errc::bad_entry);
    CHECK(code_of({{1}}) == errc::bad_size);
}

TEST_CASE("word enumeration is lexicographic and admissible") {
    auto b2 = enumerate_words(fib, 2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == Word{1, 1});
    CHECK(b2[1] == Word{1, 2});
    CHECK(b2[2] == Word{2, 1});

    auto f2 = enumerate_words(full2, 2);
    REQUIRE(f2.size() == 4);
    CHECK(f2[3] == Word{2, 2});

    auto b0 = enumerate_words(fib, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].empty());

    for (int m = 1; m <= 6; ++m) {
        auto words = enumerate_words(fib, m);
        for (size_t i = 0; i < words.size(); ++i) {
            CHECK(fib.admissible(words[i]));
            if (i + 1 < words.size()) CHECK(word_less(words[i], words[i + 1]));
        }
    }
}

TEST_CASE("word counts match out-degree recursion and matrix powers") {
    for (const auto& [name, rows] : builtin_matrix_rows()) {
        TransitionMatrix a = TransitionMatrix::validate(rows);
        int n = a.size();
        // power[i][j] = number of admissible words of length m from i to j
        std::vector<std::vector<long>> power(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) power[i][j] = a.entry(i, j);
        for (int m = 1; m <= 5; ++m) {
            auto cur = enumerate_words(a, m);
            auto next = enumerate_words(a, m + 1);
            size_t expect = 0;
            for (const Word& w : cur) expect += static_cast<size_t>(a.out_degree(w.back()));
            CHECK(next.size() == expect);
            // |B_{m+1}| = sum of entries of A^m
            long total = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) total += power[i][j];
            CHECK(next.size() == static_cast<size_t>(total));
            std::vector<std::vector<long>> nextp(n, std::vector<long>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    for (int j = 0; j < n; ++j) nextp[i][j] += power[i][k] * a.entry(k, j);
            power = std::move(nextp);
        }
    }
}

TEST_CASE("follower comparison is the last-symbol row test") {
    CHECK(follower_equal(fib, {1, 1}, {2, 1}));
    CHECK_FALSE(follower_equal(fib, {1}, {1, 2}));
    CHECK(follower_equal(full2, {1, 2}, {2}));
    CHECK_THROWS_AS(follower_equal(fib, {}, {1}), error);

    // equivalence relation on a sample of words
    auto words = enumerate_words(fib, 3);
    for (const auto& u : words)
        for (const auto& v : words) {
            CHECK(follower_equal(fib, u, u));
            CHECK(follower_equal(fib, u, v) == follower_equal(fib, v, u));
        }
}

TEST_CASE("word order distinguishes prefix overlap from strict order") {
    CHECK(word_order({1, 2}, {2, 1}) == WordOrder::Less);
    CHECK(word_order({1}, {1, 2}) == WordOrder::ProperPrefixOfSecond);
    CHECK(word_order({1, 1}, {1, 2}) == WordOrder::Less);
    CHECK(word_order({2, 1}, {1, 2}) == WordOrder::Greater);
    CHECK(word_order({1, 2}, {1}) == WordOrder::ProperPrefixOfFirst);
    CHECK(word_order({1, 2}, {1, 2}) == WordOrder::Equal);
}

TEST_CASE("minimal and maximal extensions") {
    EppPoint m = min_extension(fib, {2});
    CHECK(m.preamble() == Word{2});
    CHECK(m.cycle() == Word{1});

    EppPoint M = max_extension(fib, {2});
    CHECK(M.preamble().empty());
    CHECK(M.cycle() == Word{2, 1});

    EppPoint one = min_extension(fib, {1});
    CHECK(one.preamble().empty());
    CHECK(one.cycle() == Word{1});

    // every coordinate beyond the seed is the extreme allowed successor
    for (const auto& [name, rows] : builtin_matrix_rows()) {
        TransitionMatrix a = TransitionMatrix::validate(rows);
        for (const Word& w : enumerate_words(a, 2)) {
            EppPoint lo = min_extension(a, w);
            EppPoint hi = max_extension(a, w);
            for (size_t i = w.size(); i < 3 * static_cast<size_t>(a.size()) + w.size(); ++i) {
                CHECK(lo.at(i + 1) == a.min_successor(lo.at(i)));
                CHECK(hi.at(i + 1) == a.max_successor(hi.at(i)));
            }
        }
    }
}

TEST_CASE("eventually periodic point canonical form") {
    // same sequence written with a redundant preamble
    EppPoint a({1, 2}, {1, 2});
    EppPoint b({}, {1, 2});
    CHECK(a == b);

    // cycle written as a proper power
    EppPoint c({}, {1, 2, 1, 2});
    CHECK(c == b);

    // canonical form is idempotent
    EppPoint d(c.preamble(), c.cycle());
    CHECK(d == c);

    CHECK(EppPoint({2}, {1}) != EppPoint({}, {1}));
}

TEST_CASE("shift and prefix on points") {
    EppPoint x({2}, {1});
    CHECK(x.shifted(1) == EppPoint({}, {1}));

    EppPoint y({}, {2, 1});
    CHECK(y.prefix(3) == Word{2, 1, 2});
    CHECK(y.shifted(1) == EppPoint({}, {1, 2}));
    CHECK(y.shifted(2) == y);

    CHECK(epp_less(EppPoint({}, {1}), EppPoint({}, {2, 1})));
    CHECK_FALSE(epp_less(y, y));
}
