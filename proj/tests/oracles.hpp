#pragma once

// Brute-force re-implementations used as independent oracles.

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nerveworks/chain_model.hpp"
#include "nerveworks/error.hpp"
#include "nerveworks/fibrations.hpp"
#include "support.hpp"

namespace nwtest {

using namespace nw;

inline std::size_t sz(int v) { return static_cast<std::size_t>(v); }


using Vec = std::vector<int>;

inline std::vector<Vec> all_vectors(int p, int r) {
    std::vector<Vec> out{Vec(static_cast<std::size_t>(r))};
    for (int i = 0; i < r; ++i) {
        std::vector<Vec> next;
        for (const auto& v : out)
            for (int a = 0; a < p; ++a) {
                auto w = v;
                w[static_cast<std::size_t>(i)] = a;
                next.push_back(w);
            }
        out = next;
    }
    return out;
}

inline Vec apply(const IntMatrix& m, const Vec& v, int p) {
    Vec out(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        long s = 0;
        for (int j = 0; j < m.cols(); ++j) s += static_cast<long>(m(i, j)) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = static_cast<int>(((s % p) + p) % p);
    }
    return out;
}

struct BruteHomology {
    std::set<Vec> cycles, boundaries;
};

inline BruteHomology brute(const ChainComplex& C, int n, int p) {
    BruteHomology h;
    for (const auto& v : all_vectors(p, C.rank(n)))
        if (C.rank(n - 1) == 0 || apply(C.differential(n), v, p) == Vec(static_cast<std::size_t>(C.rank(n - 1))))
            h.cycles.insert(v);
    for (const auto& v : all_vectors(p, C.rank(n + 1))) h.boundaries.insert(apply(C.differential(n + 1), v, p));
    if (C.rank(n + 1) == 0) h.boundaries = {Vec(static_cast<std::size_t>(C.rank(n)))};
    return h;
}

/// Whether f induces an isomorphism on homology in every degree, by enumeration.
inline bool brute_quasi_iso(const ChainMap& f, int p) {
    const auto& X = f.source();
    const auto& Y = f.target();
    for (int n = std::min(X.lo(), Y.lo()); n <= std::max(X.hi(), Y.hi()); ++n) {
        const auto hx = brute(X, n, p), hy = brute(Y, n, p);
        if (hx.cycles.size() * hy.boundaries.size() != hy.cycles.size() * hx.boundaries.size()) return false;
        for (const auto& z : hx.cycles)
            if (hy.boundaries.count(apply(f.at(n), z, p)) && !hx.boundaries.count(z)) return false;
    }
    return true;
}

inline ChainComplex random_fp_complex(std::mt19937_64& rng, int p, int max_rank = 2) {
    // three degrees with ranks <= max_rank (the top one below it); d2 is sampled inside ker d1
    const auto r = static_cast<unsigned>(max_rank);
    const int r0 = static_cast<int>(rng() % (r + 1)), r1 = static_cast<int>(rng() % (r + 1)), r2 = static_cast<int>(rng() % r);
    IntMatrix d1(r0, r1), d2(r1, r2);
    for (int i = 0; i < r0; ++i)
        for (int j = 0; j < r1; ++j) d1(i, j) = static_cast<int>(rng() % static_cast<unsigned>(p));
    // pick d2 inside ker d1 by trying random columns
    for (int j = 0; j < r2; ++j)
        for (int tries = 0; tries < 20; ++tries) {
            Vec c(static_cast<std::size_t>(r1));
            for (auto& x : c) x = static_cast<int>(rng() % static_cast<unsigned>(p));
            if (apply(d1, c, p) != Vec(static_cast<std::size_t>(r0))) continue;
            for (int i = 0; i < r1; ++i) d2(i, j) = c[static_cast<std::size_t>(i)];
            break;
        }
    return ChainComplex::free(Ring::prime_field(p), 0, {r0, r1, r2}, {IntMatrix(0, r0), d1, d2});
}

/// A random chain map over F_p found by sampling and keeping the first commuting candidate.
inline ChainMap random_fp_map(std::mt19937_64& rng, const ChainComplex& X, const ChainComplex& Y, int p) {
    for (int tries = 0; tries < 200; ++tries) {
        std::vector<IntMatrix> m;
        for (int n = 0; n <= 2; ++n) {
            IntMatrix a(Y.rank(n), X.rank(n));
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j) a(i, j) = static_cast<int>(rng() % static_cast<unsigned>(p));
            m.push_back(a);
        }
        try {
            return ChainMap(X, Y, m);
        } catch (const ArgumentError&) {
        }
    }
    return ChainMap::zero(X, Y);
}


/// Cartesianness of the Hom square of alpha, listing the fiber product explicitly.
inline bool oracle_cocartesian(const Functor& F, int alpha) {
    const auto& C = F.source();
    const auto& D = F.target();
    const int x = C.source(alpha), y = C.target(alpha);
    for (int z = 0; z < C.object_count(); ++z) {
        std::set<std::pair<int, int>> pullback;
        for (int beta = 0; beta < C.arrow_count(); ++beta) {
            if (C.source(beta) != x || C.target(beta) != z) continue;
            for (int g = 0; g < D.arrow_count(); ++g)
                if (D.source(g) == F.object(y) && D.target(g) == F.object(z) && D.try_compose(g, F.arrow(alpha)) == F.arrow(beta))
                    pullback.insert({beta, g});
        }
        std::multiset<std::pair<int, int>> image;
        for (int gamma = 0; gamma < C.arrow_count(); ++gamma)
            if (C.source(gamma) == y && C.target(gamma) == z) image.insert({C.try_compose(gamma, alpha), F.arrow(gamma)});
        if (image.size() != pullback.size()) return false;
        for (const auto& p : pullback)
            if (image.count(p) != 1) return false;
    }
    return true;
}

/// Cocartesianness of alpha after literally forming C x_D [1] along F(alpha).
inline bool oracle_locally_cocartesian(const Functor& F, int alpha) {
    const auto& C = F.source();
    const auto& D = F.target();
    const int abar = F.arrow(alpha);
    const int ends[2] = {D.source(abar), D.target(abar)};
    std::vector<std::string> objs;
    std::vector<std::pair<int, int>> obj_key;
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < C.object_count(); ++c)
            if (F.object(c) == ends[i]) {
                obj_key.push_back({c, i});
                objs.push_back(C.object_name(c) + "@" + std::to_string(i));
            }
    auto obj_index = [&](int c, int i) {
        for (std::size_t k = 0; k < obj_key.size(); ++k)
            if (obj_key[k] == std::make_pair(c, i)) return static_cast<int>(k);
        return -1;
    };
    std::vector<ArrowSpec> arrows;
    std::vector<std::pair<int, int>> arrow_key;  // (gamma, kind) kind 0: 0->0, 1: 1->1, 2: 0->1
    for (int g = 0; g < C.arrow_count(); ++g)
        for (int kind = 0; kind < 3; ++kind) {
            const int i = kind == 1 ? 1 : 0, j = kind == 0 ? 0 : 1;
            const int over = kind == 2 ? abar : D.identity(ends[i]);
            if (F.arrow(g) != over) continue;
            const int s = obj_index(C.source(g), i), t = obj_index(C.target(g), j);
            if (s < 0 || t < 0) continue;
            arrow_key.push_back({g, kind});
            arrows.push_back({C.arrow_name(g) + "#" + std::to_string(kind), s, t});
        }
    auto arrow_index = [&](int g, int kind) {
        for (std::size_t k = 0; k < arrow_key.size(); ++k)
            if (arrow_key[k] == std::make_pair(g, kind)) return static_cast<int>(k);
        return -1;
    };
    std::vector<int> ids;
    for (const auto& [c, i] : obj_key) ids.push_back(arrow_index(C.identity(c), i));
    const int A = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) {
            if (arrows[sz(f)].target != arrows[sz(g)].source) continue;
            const auto [gg, gk] = arrow_key[sz(g)];
            const auto [ff, fk] = arrow_key[sz(f)];
            const int kind = fk == gk ? fk : 2;
            table[sz(g)][sz(f)] = arrow_index(C.compose(gg, ff), kind);
        }
    const FinCategory Cp(objs, arrows, ids, table);
    const auto I = poset_category(1);
    std::vector<int> omap, amap;
    for (const auto& k : obj_key) omap.push_back(k.second);
    for (const auto& k : arrow_key) amap.push_back(I.hom(k.second == 1 ? 1 : 0, k.second == 0 ? 0 : 1).front());
    return oracle_cocartesian(Functor(Cp, I, omap, amap), arrow_index(alpha, 2));
}

inline std::vector<FinCategory> small_fibers() {
    return {terminal_category(), discrete_category(2), poset_category(1), bg(cyclic_group_table(2)),
            contractible_pair(), poset_category(2)};
}

/// Base categories with at most three objects in which parallel paths do not occur.
inline std::vector<FinCategory> small_bases() {
    return {poset_category(0),
            poset_category(1),
            poset_category(2),
            discrete_category(2),
            preorder_category({"a", "b", "c"}, {{true, true, true}, {false, true, false}, {false, false, true}}),
            preorder_category({"a", "b", "c"}, {{true, false, true}, {false, true, true}, {false, false, true}})};
}

/// Random split data: generating transports are random functors, the rest are composites.
inline SplitFunctorToCat random_split(std::mt19937_64& rng, const FinCategory& B, bool groupoid_fibers) {
    SplitFunctorToCat S;
    S.base = B;
    auto pool = small_fibers();
    for (int d = 0; d < B.object_count(); ++d) {
        FinCategory c;
        do c = pool[rng() % pool.size()];
        while (groupoid_fibers && !c.is_groupoid());
        S.fibers.push_back(c);
    }
    S.transports.resize(sz(B.arrow_count()));
    std::vector<bool> done(sz(B.arrow_count()));
    for (int a = 0; a < B.arrow_count(); ++a)
        if (B.is_identity(a)) {
            S.transports[sz(a)] = identity_functor(S.fibers[sz(B.source(a))]);
            done[sz(a)] = true;
        }
    // indecomposable arrows first, then composites in order of path length
    for (int a = 0; a < B.arrow_count(); ++a) {
        if (done[sz(a)]) continue;
        bool decomposable = false;
        for (int f = 0; f < B.arrow_count(); ++f)
            for (int g = 0; g < B.arrow_count(); ++g)
                if (!B.is_identity(f) && !B.is_identity(g) && B.try_compose(g, f) == a) decomposable = true;
        if (decomposable) continue;
        auto all = all_functors(S.fibers[sz(B.source(a))], S.fibers[sz(B.target(a))]);
        S.transports[sz(a)] = all[rng() % all.size()];
        done[sz(a)] = true;
    }
    for (int round = 0; round < 3; ++round)
        for (int f = 0; f < B.arrow_count(); ++f)
            for (int g = 0; g < B.arrow_count(); ++g) {
                const int h = B.try_compose(g, f);
                if (h >= 0 && !done[sz(h)] && done[sz(f)] && done[sz(g)]) {
                    S.transports[sz(h)] = compose(S.transports[sz(g)], S.transports[sz(f)]);
                    done[sz(h)] = true;
                }
            }
    return S;
}

/// Reads back the split data of grothendieck_build(S): fibers match in size and every read
/// transport is the original one conjugated by the chosen lifts.
inline bool split_roundtrip_holds(const SplitFunctorToCat& S, const Functor& P, const GrothendieckReading& R) {
    const auto& B = S.base;
    const auto& T = P.source();
    // total arrows over phi are (phi, c, alpha) in build order; recover alpha for each
    std::vector<int> offset;
    int total_objects = 0;
    for (const auto& Fd : S.fibers) {
        offset.push_back(total_objects);
        total_objects += Fd.object_count();
    }
    std::vector<int> alpha_of(sz(T.arrow_count()));
    int k = 0;
    for (int phi = 0; phi < B.arrow_count(); ++phi) {
        const auto& Fd = S.fibers[sz(B.source(phi))];
        const auto& Fe = S.fibers[sz(B.target(phi))];
        for (int c = 0; c < Fd.object_count(); ++c)
            for (int alpha = 0; alpha < Fe.arrow_count(); ++alpha)
                if (Fe.source(alpha) == S.transports[sz(phi)].object(c)) {
                    if (k >= T.arrow_count()) return false;
                    alpha_of[sz(k++)] = alpha;
                }
    }
    if (k != T.arrow_count()) return false;
    for (int d = 0; d < B.object_count(); ++d)
        if (!find_isomorphism(R.fibers[sz(d)], S.fibers[sz(d)])) return false;
    // read transport = alpha_{c2} o F(phi)(u) o alpha_{c1}^{-1}, with alpha the chosen lift's fiber part
    for (int phi = 0; phi < B.arrow_count(); ++phi) {
        const int d = B.source(phi), e = B.target(phi);
        const auto& Fd = S.fibers[sz(d)];
        const auto& Fe = S.fibers[sz(e)];
        const auto& Tphi = S.transports[sz(phi)];
        const auto& L = R.chosen_lifts[sz(phi)];
        for (int c = 0; c < Fd.object_count(); ++c) {
            if (!Fe.is_iso(alpha_of[sz(L[sz(c)])])) return false;
            if (R.transports[sz(phi)].object(c) != T.target(L[sz(c)]) - offset[sz(e)]) return false;
        }
        for (int u = 0; u < Fd.arrow_count(); ++u) {
            const int a1 = alpha_of[sz(L[sz(Fd.source(u))])], a2 = alpha_of[sz(L[sz(Fd.target(u))])];
            const int expected = Fe.compose(a2, Fe.compose(Tphi.arrow(u), *Fe.inverse(a1)));
            // the reading's fiber arrows are total arrows (id_d, c, u)
            const auto& fa = R.fiber_arrows[sz(d)];
            int local = -1;
            for (std::size_t i = 0; i < fa.size(); ++i)
                if (alpha_of[sz(fa[i])] == u && T.source(fa[i]) - offset[sz(d)] == Fd.source(u)) local = static_cast<int>(i);
            if (local < 0) return false;
            const int read_total = R.fiber_arrows[sz(e)][sz(R.transports[sz(phi)].arrow(local))];
            if (alpha_of[sz(read_total)] != expected) return false;
        }
    }
    return true;
}

/// The homotopy relation on edges computed from the expanded face tables, closed by Warshall's
/// algorithm. `closure[a][b]` uses the indexing of X.simplices(1).
struct BruteEdgeRelation {
    std::vector<std::vector<bool>> closure;
    bool raw_is_equivalence = false;
};

inline BruteEdgeRelation brute_homotopy_relation(const SimplicialSet& X, bool degenerate_first_edge = true) {
    const auto E = expand(X, 2);
    const std::size_t n = E.sizes[1];
    std::vector<bool> degenerate(n, false);
    for (std::size_t v = 0; v < E.sizes[0]; ++v) degenerate[E.degeneracies[0][v][0]] = true;
    std::vector<std::vector<bool>> raw(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < E.sizes[2]; ++u) {
        const auto& f = E.faces[2][u];
        if (degenerate_first_edge) {
            if (degenerate[f[2]]) raw[f[0]][f[1]] = true;
        } else if (degenerate[f[0]]) {
            raw[f[2]][f[1]] = true;
        }
    }
    BruteEdgeRelation out;
    auto& c = out.closure;
    c = raw;
    for (std::size_t a = 0; a < n; ++a) {
        c[a][a] = true;
        for (std::size_t b = 0; b < n; ++b)
            if (raw[a][b]) c[b][a] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a)
            if (c[a][k])
                for (std::size_t b = 0; b < n; ++b)
                    if (c[k][b]) c[a][b] = true;
    out.raw_is_equivalence = raw == c;
    return out;
}

}  // namespace nwtest
