#pragma once

#include <random>
#include <string>
#include <vector>

#include "nerveworks/category.hpp"

namespace nwtest {

using namespace nw;

inline FinCategory random_preorder(std::mt19937_64& rng, int n) {
    std::vector<std::string> objs;
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    std::bernoulli_distribution coin(0.35);
    for (int x = 0; x < n; ++x) {
        objs.push_back("o" + std::to_string(x));
        for (int y = 0; y < n; ++y) leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = x == y || coin(rng);
    }
    for (int k = 0; k < n; ++k)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(k)] && leq[static_cast<std::size_t>(k)][static_cast<std::size_t>(y)])
                    leq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
    return preorder_category(objs, leq);
}

/// Free category on a random DAG (edges i -> j with i < j, at most two parallel edges).
inline FinCategory random_free_dag(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> mult(0, 2);
    std::vector<std::vector<int>> edges;  // (src, dst)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = mult(rng);
            if (j > i + 1 && m == 2) m = 1;
            for (int k = 0; k < m; ++k) edges.push_back({i, j});
        }
    // Paths as edge lists.
    std::vector<std::vector<int>> paths;
    std::vector<int> psrc, pdst;
    for (int x = 0; x < n; ++x) {
        paths.push_back({});
        psrc.push_back(x);
        pdst.push_back(x);
    }
    for (std::size_t start = 0; start < paths.size(); ++start)
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            if (edges[static_cast<std::size_t>(e)][0] == pdst[start]) {
                auto p = paths[start];
                p.push_back(e);
                paths.push_back(p);
                psrc.push_back(psrc[start]);
                pdst.push_back(edges[static_cast<std::size_t>(e)][1]);
            }
    std::vector<std::string> objs;
    for (int x = 0; x < n; ++x) objs.push_back("o" + std::to_string(x));
    std::vector<ArrowSpec> arrows;
    std::vector<int> ids;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        std::string nm = paths[p].empty() ? "id_o" + std::to_string(psrc[p]) : "p";
        for (int e : paths[p]) nm += "_" + std::to_string(e);
        if (paths[p].empty()) ids.push_back(static_cast<int>(p));
        arrows.push_back({nm, psrc[p], pdst[p]});
    }
    const std::size_t A = paths.size();
    std::vector<std::vector<int>> table(A, std::vector<int>(A, -1));
    for (std::size_t g = 0; g < A; ++g)
        for (std::size_t f = 0; f < A; ++f) {
            if (pdst[f] != psrc[g]) continue;
            auto cat = paths[f];
            cat.insert(cat.end(), paths[g].begin(), paths[g].end());
            for (std::size_t h = 0; h < A; ++h)
                if (paths[h] == cat && psrc[h] == psrc[f]) table[g][f] = static_cast<int>(h);
        }
    return FinCategory(objs, arrows, ids, table);
}

/// a <-> b isomorphic pair plus h : b -> c.
inline FinCategory iso_pair_plus_arrow() {
    CategoryBuilder b;
    b.objects = {"a", "b", "c"};
    b.arrows = {{"f", 0, 1}, {"f_inv", 1, 0}, {"h", 1, 2}, {"hf", 0, 2}};
    b.compose = {{"f_inv", "f", "id_a"}, {"f", "f_inv", "id_b"}, {"h", "f", "hf"}, {"hf", "f_inv", "h"}};
    return b.build();
}

/// One object with an idempotent e.
inline FinCategory idempotent_monoid() { return bg({{0, 1}, {1, 1}}, {"1", "e"}); }

/// The contractible groupoid on two objects.
inline FinCategory contractible_pair() {
    return preorder_category({"x", "y"}, {{true, true}, {true, true}});
}

/// [1] x [1] -> [2] with c00 -> d0, c01 -> d1, c10, c11 -> d2.
inline Functor square_over_two() {
    const auto C = product(poset_category(1), poset_category(1));
    const auto D = poset_category(2);
    const std::vector<int> obj{0, 1, 2, 2};
    std::vector<int> arr;
    for (int a = 0; a < C.arrow_count(); ++a) {
        const int s = obj[static_cast<std::size_t>(C.source(a))], t = obj[static_cast<std::size_t>(C.target(a))];
        arr.push_back(D.hom(s, t).front());
    }
    return Functor(C, D, obj, arr);
}

inline FinCategory random_category(std::mt19937_64& rng, int max_objects = 3) {
    std::uniform_int_distribution<int> kind(0, 7);
    std::uniform_int_distribution<int> size(1, max_objects);
    switch (kind(rng)) {
        case 0:
        case 1: return random_preorder(rng, size(rng));
        case 2:
        case 3: return random_free_dag(rng, size(rng));
        case 4: return bg(cyclic_group_table(std::uniform_int_distribution<int>(1, 3)(rng)));
        case 5: return idempotent_monoid();
        case 6: return iso_pair_plus_arrow();
        default: return product(poset_category(1), bg(cyclic_group_table(2)));
    }
}

}  // namespace nwtest
