#pragma once

#include <random>
#include <vector>

#include "nerveworks/doldkan.hpp"

namespace nwtest {

using namespace nw;

/// A random complex over Z in degrees [0, hi] (hi <= max_degree, ranks <= max_rank): a sum of
/// Z[k], Z -a-> Z and Z/m[k] pieces with the free generators scrambled by unimodular changes of basis.
inline ChainComplex random_complex(std::mt19937_64& rng, int max_degree, int max_rank, bool torsion = true) {
    const int hi = std::uniform_int_distribution<int>(0, max_degree)(rng);
    const int levels = hi + 1;
    std::vector<IntVector> orders(static_cast<std::size_t>(levels));
    struct Edge {
        int degree, col, row;
        int a;
    };
    std::vector<Edge> edges;
    std::uniform_int_distribution<int> kind(0, torsion ? 2 : 1);
    for (int attempt = 0; attempt < 3 * levels; ++attempt) {
        const int k = std::uniform_int_distribution<int>(0, hi)(rng);
        auto& ok = orders[static_cast<std::size_t>(k)];
        switch (kind(rng)) {
            case 0:
                if (static_cast<int>(ok.size()) < max_rank) ok.push_back(0);
                break;
            case 1:
                if (k < hi && static_cast<int>(ok.size()) < max_rank &&
                    static_cast<int>(orders[static_cast<std::size_t>(k + 1)].size()) < max_rank) {
                    auto& up = orders[static_cast<std::size_t>(k + 1)];
                    edges.push_back({k + 1, static_cast<int>(up.size()), static_cast<int>(ok.size()),
                                     std::uniform_int_distribution<int>(1, 4)(rng)});
                    up.push_back(0);
                    ok.push_back(0);
                }
                break;
            default:
                if (static_cast<int>(ok.size()) < max_rank) ok.push_back(std::uniform_int_distribution<int>(2, 4)(rng));
        }
    }
    std::vector<IntMatrix> d;
    for (int n = 0; n < levels; ++n)
        d.emplace_back(n == 0 ? 0 : static_cast<int>(orders[static_cast<std::size_t>(n - 1)].size()),
                       static_cast<int>(orders[static_cast<std::size_t>(n)].size()));
    for (const auto& e : edges) d[static_cast<std::size_t>(e.degree)](e.row, e.col) = e.a;
    // unimodular scrambling of the free generators: d_n -> P_{n-1} d_n P_n^{-1}
    std::vector<IntMatrix> P, Pinv;
    for (int n = 0; n < levels; ++n) {
        const auto& o = orders[static_cast<std::size_t>(n)];
        const int r = static_cast<int>(o.size());
        IntMatrix p = IntMatrix::identity(r), q = IntMatrix::identity(r);
        for (int step = 0; step < 6 && r > 1; ++step) {
            const int i = static_cast<int>(rng() % static_cast<unsigned>(r)), j = static_cast<int>(rng() % static_cast<unsigned>(r));
            if (i == j || o[static_cast<std::size_t>(i)] != 0 || o[static_cast<std::size_t>(j)] != 0) continue;
            const int c = (rng() % 2) ? 1 : -1;
            for (int t = 0; t < r; ++t) p(i, t) += c * p(j, t);  // row_i += c row_j
            for (int t = 0; t < r; ++t) q(t, j) -= c * q(t, i);  // inverse: col_j -= c col_i
        }
        P.push_back(std::move(p));
        Pinv.push_back(std::move(q));
    }
    for (int n = 1; n < levels; ++n)
        d[static_cast<std::size_t>(n)] = P[static_cast<std::size_t>(n - 1)] * d[static_cast<std::size_t>(n)] * Pinv[static_cast<std::size_t>(n)];
    return ChainComplex(Ring::integers(), 0, std::move(orders), std::move(d));
}

inline bool is_module_iso(const IntMatrix& f, const IntVector& src, const IntVector& tgt) {
    return module_kernel(f, src, tgt).trivial() && module_cokernel(f, tgt).trivial();
}

/// C -> N(Gamma(C)): each generator goes to its identity summand.
inline bool gamma_roundtrip_holds(const ChainComplex& C) {
    const int D = C.hi() + 1;
    const auto G = dold_kan_gamma(C, D);
    const auto N = normalized_chains_data(G);
    std::vector<IntMatrix> phi;
    for (int n = 0; n <= D; ++n) {
        const auto basis = gamma_basis(C, n);
        const auto& P = N.presentation[static_cast<std::size_t>(n)];
        IntMatrix f(P.generator_count(), C.rank(n));
        for (int g = 0; g < C.rank(n); ++g) {
            IntVector v(basis.size());
            for (std::size_t p = 0; p < basis.size(); ++p)
                if (basis[p].mask == 0 && basis[p].generator == g) v[p] = 1;
            const auto c = P.coordinates(v);
            for (int i = 0; i < P.generator_count(); ++i) f(i, g) = c[static_cast<std::size_t>(i)];
        }
        if (!is_module_iso(f, C.group_orders(n), N.complex.group_orders(n))) return false;
        phi.push_back(std::move(f));
    }
    for (int n = 1; n <= D; ++n)
        if (!zero_modulo(phi[static_cast<std::size_t>(n - 1)] * C.differential(n) -
                             N.complex.differential(n) * phi[static_cast<std::size_t>(n)],
                         N.complex.group_orders(n - 1)))
            return false;
    return true;
}

}  // namespace nwtest
