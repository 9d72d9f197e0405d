#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nerveworks/error.hpp"
#include "nerveworks/hcnerve.hpp"
#include "nerveworks/quasicat.hpp"
#include "hc_support.hpp"

using namespace nw;
using namespace nwtest;

namespace {

/// Simplicial functors c[m] -> C counted by brute force over all families of maps of mapping spaces.
std::size_t brute_force_functors(const SimplicialCategory& C, int m) {
    const auto cm = frak_c(m);
    const int w = m + 1;
    const int n = C.object_count();
    std::size_t total = 0;
    std::vector<int> phi(static_cast<std::size_t>(w), 0);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < w; ++i)
        for (int k = i + 1; k < w; ++k) pairs.emplace_back(i, k);
    std::function<void(int)> objects = [&](int p) {
        if (p < w) {
            for (int x = 0; x < n; ++x) {
                phi[static_cast<std::size_t>(p)] = x;
                objects(p + 1);
            }
            return;
        }
        std::vector<std::vector<SimplicialMap>> options;
        for (auto [i, k] : pairs) options.push_back(all_maps(cm.map(i, k), C.map(phi[i], phi[k])));
        std::vector<const SimplicialMap*> pick(pairs.size());
        auto F = [&](int i, int k, const Simplex& s) -> Simplex {
            if (i == k) return SimplicialSet::constant(C.identity(phi[static_cast<std::size_t>(i)]), s.dim);
            for (std::size_t q = 0; q < pairs.size(); ++q)
                if (pairs[q] == std::make_pair(i, k)) return (*pick[q])(s);
            throw ArgumentError("pair");
        };
        std::function<void(std::size_t)> go = [&](std::size_t q) {
            if (q < pairs.size()) {
                for (const auto& f : options[q]) {
                    pick[q] = &f;
                    go(q + 1);
                }
                return;
            }
            for (int a = 0; a < w; ++a)
                for (int b = a + 1; b < w; ++b)
                    for (int c = b + 1; c < w; ++c) {
                        const int bound = composition_bound(cm.map(b, c), cm.map(a, b));
                        for (int k = 0; k <= bound; ++k)
                            for (const auto& u : cm.map(b, c).simplices(k))
                                for (const auto& v : cm.map(a, b).simplices(k)) {
                                    if (u.degen & v.degen) continue;
                                    const auto lhs = F(a, c, cm.compose(a, b, c, u, v));
                                    const auto rhs = C.compose(phi[a], phi[b], phi[c], F(b, c, u), F(a, b, v));
                                    if (lhs != rhs) return;
                                }
                    }
            ++total;
        };
        go(0);
    };
    objects(0);
    return total;
}

}  // namespace

TEST_CASE("c[2] mapping spaces") {
    auto c2 = frak_c(2);
    CHECK(c2.object_count() == 3);
    CHECK(c2.map(0, 2).cell_count(0) == 2);
    CHECK(c2.map(0, 2).cell_count(1) == 1);
    CHECK(c2.map(0, 2).cell_count(2) == 0);
    CHECK(c2.map(0, 1).cell_count(0) == 1);
    CHECK(c2.map(1, 0).empty());
    const auto comp = c2.compose(0, 1, 2, SimplicialSet::cell(0, 0), SimplicialSet::cell(0, 0));
    CHECK(frak_c_chain(c2, 0, 2, comp) == std::vector<std::uint32_t>{0b111});
}

TEST_CASE("Map(0,n) of c[n] is a cube") {
    for (int n = 1; n <= 4; ++n) {
        auto cn = frak_c(n);
        std::vector<SimplicialSet> factors(static_cast<std::size_t>(n - 1), standard_simplex(1));
        auto cube = n == 1 ? standard_simplex(0) : product(factors);
        CHECK(find_isomorphism(cn.map(0, n), cube).has_value());
    }
}

TEST_CASE("c[5] satisfies the enriched category axioms") {
    // the constructor validates units and associativity on every composable triple
    const auto c5 = frak_c(5);
    CHECK(c5.object_count() == 6);
    CHECK(c5.map(0, 5).top_dimension() == 4);
    CHECK(c5.map(0, 5).cell_count(0) == 16);
}

TEST_CASE("horn mapping spaces") {
    auto h21 = horn_mapspace(2, 1);
    CHECK(h21.sub.cell_count(0) == 1);
    CHECK(h21.sub.total_cells() == 1);
    CHECK(h21.ambient.cell_count(1) == 1);
    CHECK(frak_c_chain(frak_c(2), 0, 2, h21.inclusion(SimplicialSet::cell(0, 0))).size() == 1);

    auto h31 = horn_mapspace(3, 1);
    CHECK(h31.sub.cell_count(0) == 4);
    CHECK(h31.sub.cell_count(1) == 3);
    CHECK(h31.sub.cell_count(2) == 0);
    CHECK(h31.ambient.cell_count(1) == 5);
    CHECK(h31.inclusion.is_injective());
    // the missing edge is the face x_1 = 1, i.e. both endpoints contain 1
    for (int e = 0; e < h31.sub.cell_count(1); ++e) {
        auto verts = h31.ambient.vertices(h31.inclusion(SimplicialSet::cell(1, e)));
        const auto& name0 = h31.ambient.name(0, verts[0]);
        const auto& name1 = h31.ambient.name(0, verts[1]);
        CHECK(!(name0.find('1') != std::string::npos && name1.find('1') != std::string::npos));
    }
    auto h42 = horn_mapspace(4, 2);
    CHECK(h42.ambient.cell_count(3) == 6);
    CHECK(h42.sub.cell_count(0) == 8);
    CHECK(h42.sub.cell_count(2) == 10);  // five of the six square faces, two triangles each
    CHECK_THROWS_AS(horn_mapspace(3, 0), ArgumentError);
}

TEST_CASE("invalid simplicial categories are rejected") {
    // {e, a, b} with a*a = b, a*b = a, b*a = b, b*b = a is not associative
    SimplicialSet::Builder b;
    b.add_cell(0, "e");
    b.add_cell(0, "a");
    b.add_cell(0, "b");
    const auto M = b.build();
    const int table[3][3] = {{0, 1, 2}, {1, 2, 1}, {2, 2, 1}};
    CHECK_THROWS_AS(pointwise_monoid(M, 0, [&](int x, int y) { return table[x][y]; }), ArgumentError);
    CHECK_THROWS_AS(pointwise_monoid(M, 1, [](int x, int) { return x; }), ArgumentError);
}

TEST_CASE("coherent nerve of a discrete category is its nerve") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        auto C = random_category(rng, 3);
        auto N = coherent_nerve(SimplicialCategory::from_category(C), 3);
        CHECK(find_isomorphism(N, nerve(C, 3)).has_value());
    }
    CHECK(coherent_nerve(frak_c(1), 0).cell_count(0) == 2);
}

TEST_CASE("coherent nerve counts agree with brute-force functor enumeration") {
    std::vector<SimplicialCategory> cats = {
        SimplicialCategory::from_category(iso_pair_plus_arrow()),
        arrow_space(standard_simplex(1)),
        arrow_space(standard_object(StandardKind::boundary, 2)),
        pointwise_monoid(disjoint_union(standard_simplex(1), standard_simplex(0)), 2,
                         [](int x, int y) { return x == 2 ? y : y == 2 ? x : std::max(x, y); }),
        frak_c(2),
        group_nerve_monoid(2, 2),
    };
    for (const auto& C : cats) {
        auto N = coherent_nerve(C, 3);
        for (int m = 0; m <= 2; ++m) CHECK(N.simplices(m).size() == brute_force_functors(C, m));
    }
    auto N = coherent_nerve(arrow_space(standard_simplex(1)), 3);
    CHECK(N.simplices(3).size() == brute_force_functors(arrow_space(standard_simplex(1)), 3));
}

TEST_CASE("pi_0 of simplicial categories") {
    CHECK(find_isomorphism(pi0_category(frak_c(2)), poset_category(2)).has_value());
    CHECK(find_isomorphism(pi0_category(frak_c(3)), poset_category(3)).has_value());
    auto M = pi0_category(pointwise_monoid(disjoint_union(standard_simplex(1), standard_simplex(0)), 2,
                                           [](int x, int y) { return x == 2 ? y : y == 2 ? x : std::max(x, y); }));
    CHECK(M.object_count() == 1);
    CHECK(M.arrow_count() == 2);
    CHECK(find_isomorphism(M, idempotent_monoid()).has_value());
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        auto C = random_category(rng, 3);
        CHECK(find_isomorphism(pi0_category(SimplicialCategory::from_category(C)), C).has_value());
    }
}

TEST_CASE("Kan-enriched categories give quasicategories with matching homotopy categories") {
    std::vector<SimplicialCategory> cats = {
        group_nerve_monoid(2, 3),
        group_nerve_monoid(3, 2),
        arrow_space(nerve(contractible_pair(), 3)),
        SimplicialCategory::from_category(iso_pair_plus_arrow()),
    };
    for (const auto& C : cats) {
        auto N = coherent_nerve(C, 3);
        CHECK(classify(N, 3, HornMode::inner).all_fillable());
        CHECK(find_isomorphism(homotopy_category(N), pi0_category(C)).has_value());
    }
}
