#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nerveworks/delta.hpp"
#include "nerveworks/error.hpp"

using namespace nw;

TEST_CASE("generators have the expected value tables") {
    CHECK(OrdinalMap::face(2, 1).values() == std::vector<int>{0, 2});
    CHECK(OrdinalMap::degeneracy(2, 0).values() == std::vector<int>{0, 0, 1});
    CHECK(OrdinalMap::face(2, 1).source() == 1);
    CHECK(OrdinalMap::degeneracy(2, 0).target() == 1);
    CHECK_THROWS_AS(OrdinalMap::face(2, 3), ArgumentError);
    CHECK_THROWS_AS(OrdinalMap(2, {1, 0}), ArgumentError);
    CHECK_THROWS_AS(OrdinalMap(1, {0, 2}), ArgumentError);
}

TEST_CASE("cosimplicial identities hold") {
    for (int n = 1; n <= 5; ++n) {
        // delta^j delta^i = delta^i delta^{j-1} for i < j
        for (int j = 0; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(compose(OrdinalMap::face(n + 1, j), OrdinalMap::face(n, i)) ==
                      compose(OrdinalMap::face(n + 1, i), OrdinalMap::face(n, j - 1)));
        // sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                CHECK(compose(OrdinalMap::degeneracy(n, j), OrdinalMap::degeneracy(n + 1, i)) ==
                      compose(OrdinalMap::degeneracy(n, i), OrdinalMap::degeneracy(n + 1, j + 1)));
    }
}

TEST_CASE("compose checks shapes") {
    CHECK_THROWS_AS(compose(OrdinalMap::face(3, 0), OrdinalMap::face(1, 0)), ArgumentError);
}

TEST_CASE("monotone map counts are binomial") {
    auto binom = [](int n, int k) {
        long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            CHECK(static_cast<long>(all_monotone_maps(m, n).size()) == binom(m + n + 1, m + 1));
            CHECK(static_cast<long>(all_surjections(m, n).size()) == (m >= n ? binom(m, n) : 0));
            CHECK(static_cast<long>(all_injections(m, n).size()) == (m <= n ? binom(n + 1, m + 1) : 0));
        }
}

TEST_CASE("epi-mono factorization and generator words round-trip") {
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (const auto& f : all_monotone_maps(m, n)) {
                auto [e, u] = epi_mono_factorize(f);
                CHECK(e.is_surjective());
                CHECK(u.is_injective());
                CHECK(compose(u, e) == f);
                CHECK(evaluate_word(m, generator_word(f)) == f);
                CHECK(opposite(opposite(f)) == f);
            }
}

TEST_CASE("mask conversions invert each other") {
    for (int n = 0; n <= 5; ++n)
        for (const auto& s : [&] {
                 std::vector<OrdinalMap> all;
                 for (int k = 0; k <= n; ++k)
                     for (auto& f : all_surjections(n, k)) all.push_back(f);
                 return all;
             }())
            CHECK(surjection_from_mask(n, s.degeneracy_mask()) == s);
    for (int n = 0; n <= 5; ++n)
        for (std::uint32_t m = 1; m < (1u << (n + 1)); ++m) CHECK(injection_from_mask(n, m).image_mask() == m);
}

TEST_CASE("normalize_order relabels keys") {
    CHECK(normalize_order({2, 5, 9}, {9, 2, 5}) == std::vector<int>{2, 0, 1});
    CHECK_THROWS_AS(normalize_order({2, 5}, {3}), ArgumentError);
}
