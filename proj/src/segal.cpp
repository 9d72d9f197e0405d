#include "nerveworks/segal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "nerveworks/error.hpp"
#include "nerveworks/quasicat.hpp"

namespace nw {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

using Face = std::function<std::size_t(int level, int other, std::size_t x, int i)>;
using Count = std::function<std::size_t(int level, int other)>;

/// Simplicial identities in one direction, levels 0..top, other index 0..other_top.
void check_direction(const char* which, int top, int other_top, const Count& count, const Face& d, const Face& s) {
    auto fail = [&](const std::string& what, int level, int other) {
        throw ArgumentError(std::string("bisimplicial set: ") + which + " " + what + " fails at level " +
                            std::to_string(level) + " (other index " + std::to_string(other) + ")");
    };
    for (int o = 0; o <= other_top; ++o)
        for (int n = 0; n <= top; ++n)
            for (std::size_t x = 0; x < count(n, o); ++x) {
                for (int j = 0; j <= n && n >= 1; ++j)
                    if (d(n, o, x, j) >= count(n - 1, o)) fail("face index", n, o);
                for (int j = 0; j <= n && n < top; ++j)
                    if (s(n, o, x, j) >= count(n + 1, o)) fail("degeneracy index", n, o);
                if (n >= 2)
                    for (int j = 1; j <= n; ++j)
                        for (int i = 0; i < j; ++i)
                            if (d(n - 1, o, d(n, o, x, j), i) != d(n - 1, o, d(n, o, x, i), j - 1)) fail("d_i d_j", n, o);
                if (n < top)
                    for (int j = 0; j <= n; ++j) {
                        const std::size_t y = s(n, o, x, j);
                        if (d(n + 1, o, y, j) != x || d(n + 1, o, y, j + 1) != x) fail("d_j s_j", n, o);
                        for (int i = 0; i < j; ++i)
                            if (n >= 1 && d(n + 1, o, y, i) != s(n - 1, o, d(n, o, x, i), j - 1)) fail("d_i s_j", n, o);
                        for (int i = j + 2; i <= n + 1; ++i)
                            if (n >= 1 && d(n + 1, o, y, i) != s(n - 1, o, d(n, o, x, i - 1), j)) fail("d_i s_j", n, o);
                    }
                if (n + 1 < top)
                    for (int j = 0; j <= n; ++j)
                        for (int i = 0; i <= j; ++i)
                            if (s(n + 1, o, s(n, o, x, j), i) != s(n + 1, o, s(n, o, x, i), j + 1)) fail("s_i s_j", n, o);
            }
}

}  // namespace

BisimplicialSet::BisimplicialSet(int M, int N, std::vector<std::vector<std::vector<std::string>>> names, Table hfaces,
                                 Table hdegens, Table vfaces, Table vdegens)
    : M_(M), N_(N), names_(std::move(names)), hf_(std::move(hfaces)), hs_(std::move(hdegens)), vf_(std::move(vfaces)),
      vs_(std::move(vdegens)) {
    if (M < 0 || N < 0) throw ArgumentError("bisimplicial set: negative truncation");
    auto shaped = [&](const auto& t) {
        if (t.size() != sz(M + 1)) return false;
        for (const auto& r : t)
            if (r.size() != sz(N + 1)) return false;
        return true;
    };
    if (!shaped(names_) || !shaped(hf_) || !shaped(hs_) || !shaped(vf_) || !shaped(vs_))
        throw ArgumentError("bisimplicial set: tables must cover bidegrees (0..M, 0..N)");
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
            const std::size_t c = size(m, n);
            const auto ok = [&](const Table& t, std::size_t arity) {
                if (t[sz(m)][sz(n)].size() != c) return false;
                for (const auto& row : t[sz(m)][sz(n)])
                    if (row.size() != arity) return false;
                return true;
            };
            if (!ok(hf_, m == 0 ? 0 : sz(m + 1)) || !ok(hs_, m == M ? 0 : sz(m + 1)) || !ok(vf_, n == 0 ? 0 : sz(n + 1)) ||
                !ok(vs_, n == N ? 0 : sz(n + 1)))
                throw ArgumentError("bisimplicial set: structure tables have the wrong arity at (" + std::to_string(m) + "," +
                                    std::to_string(n) + ")");
        }
    check_direction(
        "horizontal", M, N, [&](int l, int o) { return size(l, o); },
        [&](int l, int o, std::size_t x, int i) { return hface(l, o, x, i); },
        [&](int l, int o, std::size_t x, int i) { return hdegen(l, o, x, i); });
    check_direction(
        "vertical", N, M, [&](int l, int o) { return size(o, l); },
        [&](int l, int o, std::size_t x, int i) { return vface(o, l, x, i); },
        [&](int l, int o, std::size_t x, int i) { return vdegen(o, l, x, i); });
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n)
            for (std::size_t x = 0; x < size(m, n); ++x) {
                for (int i = 0; i <= m; ++i)
                    for (int j = 0; j <= n; ++j) {
                        if (m >= 1 && n >= 1 && hface(m, n - 1, vface(m, n, x, j), i) != vface(m - 1, n, hface(m, n, x, i), j))
                            throw ArgumentError("bisimplicial set: horizontal and vertical faces do not commute");
                        if (m < M && n >= 1 && hdegen(m, n - 1, vface(m, n, x, j), i) != vface(m + 1, n, hdegen(m, n, x, i), j))
                            throw ArgumentError("bisimplicial set: horizontal degeneracies and vertical faces do not commute");
                        if (m >= 1 && n < N && vdegen(m - 1, n, hface(m, n, x, i), j) != hface(m, n + 1, vdegen(m, n, x, j), i))
                            throw ArgumentError("bisimplicial set: vertical degeneracies and horizontal faces do not commute");
                        if (m < M && n < N && vdegen(m + 1, n, hdegen(m, n, x, i), j) != hdegen(m, n + 1, vdegen(m, n, x, j), i))
                            throw ArgumentError("bisimplicial set: degeneracies do not commute");
                    }
            }
}

ExplicitSimplicialSet BisimplicialSet::row(int m) const {
    ExplicitSimplicialSet e;
    e.top = N_;
    for (int n = 0; n <= N_; ++n) {
        e.sizes.push_back(size(m, n));
        e.faces.push_back(vf_[sz(m)][sz(n)]);
        e.degeneracies.push_back(vs_[sz(m)][sz(n)]);
        e.names.push_back(names_[sz(m)][sz(n)]);
    }
    return e;
}

namespace {

/// Restriction of a cell in the m direction to the sorted vertex list `keep`.
std::size_t restrict_h(const BisimplicialSet& X, int m, int n, std::size_t x, const std::vector<int>& keep) {
    int level = m;
    for (int j = m; j >= 0; --j) {
        if (std::find(keep.begin(), keep.end(), j) != keep.end()) continue;
        x = X.hface(level, n, x, j);
        --level;
    }
    return x;
}

}  // namespace

std::size_t BisimplicialSet::hvertex(int m, int n, std::size_t x, int k) const { return restrict_h(*this, m, n, x, {k}); }

std::size_t BisimplicialSet::hedge(int m, int n, std::size_t x, int a, int b) const {
    return restrict_h(*this, m, n, x, {a, b});
}

BisimplicialSet embed(EmbedKind kind, const SimplicialSet& X, int N) {
    if (N < 0) throw ArgumentError("embed: negative truncation");
    const ExplicitSimplicialSet E = expand(X, N);
    auto label = [&](int k, std::size_t x) {
        if (sz(k) < E.names.size() && x < E.names[sz(k)].size() && !E.names[sz(k)][x].empty()) return E.names[sz(k)][x];
        return X.describe(X.simplices(k)[x]);
    };
    const bool discrete = kind == EmbedKind::discrete;
    std::vector<std::vector<std::vector<std::string>>> names(sz(N + 1), std::vector<std::vector<std::string>>(sz(N + 1)));
    BisimplicialSet::Table hf = {}, hs = {}, vf = {}, vs = {};
    for (auto* t : {&hf, &hs, &vf, &vs}) t->assign(sz(N + 1), std::vector<std::vector<std::vector<std::size_t>>>(sz(N + 1)));
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n) {
            const int level = discrete ? m : n;  // the level of X carried by cell (m, n)
            const std::size_t count = E.sizes[sz(level)];
            for (std::size_t x = 0; x < count; ++x) {
                names[sz(m)][sz(n)].push_back(label(level, x));
                auto identity_maps = [&](int arity) { return std::vector<std::size_t>(sz(arity), x); };
                const auto faces = level == 0 ? std::vector<std::size_t>{} : E.faces[sz(level)][x];
                const auto degens = level == N ? std::vector<std::size_t>{} : E.degeneracies[sz(level)][x];
                if (discrete) {
                    hf[sz(m)][sz(n)].push_back(faces);
                    hs[sz(m)][sz(n)].push_back(degens);
                    vf[sz(m)][sz(n)].push_back(identity_maps(n == 0 ? 0 : n + 1));
                    vs[sz(m)][sz(n)].push_back(identity_maps(n == N ? 0 : n + 1));
                } else {
                    hf[sz(m)][sz(n)].push_back(identity_maps(m == 0 ? 0 : m + 1));
                    hs[sz(m)][sz(n)].push_back(identity_maps(m == N ? 0 : m + 1));
                    vf[sz(m)][sz(n)].push_back(faces);
                    vs[sz(m)][sz(n)].push_back(degens);
                }
            }
        }
    return BisimplicialSet(N, N, std::move(names), std::move(hf), std::move(hs), std::move(vf), std::move(vs));
}

namespace {

BisimplicialSet truncate(const BisimplicialSet& X, int M, int N) {
    std::vector<std::vector<std::vector<std::string>>> names(sz(M + 1));
    BisimplicialSet::Table hf(sz(M + 1)), hs(sz(M + 1)), vf(sz(M + 1)), vs(sz(M + 1));
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
            names[sz(m)].push_back(X.names()[sz(m)][sz(n)]);
            hf[sz(m)].push_back(X.hface_table()[sz(m)][sz(n)]);
            vf[sz(m)].push_back(X.vface_table()[sz(m)][sz(n)]);
            auto h = X.hdegen_table()[sz(m)][sz(n)];
            if (m == M)
                for (auto& r : h) r.clear();
            hs[sz(m)].push_back(h);
            auto v = X.vdegen_table()[sz(m)][sz(n)];
            if (n == N)
                for (auto& r : v) r.clear();
            vs[sz(m)].push_back(v);
        }
    return BisimplicialSet(M, N, std::move(names), std::move(hf), std::move(hs), std::move(vf), std::move(vs));
}

}  // namespace

BisimplicialSet product(const BisimplicialSet& X, const BisimplicialSet& Y) {
    const BisimplicialSet A = truncate(X, std::min(X.M(), Y.M()), std::min(X.N(), Y.N()));
    const BisimplicialSet B = truncate(Y, A.M(), A.N());
    const int M = A.M(), N = A.N();
    std::vector<std::vector<std::vector<std::string>>> names(sz(M + 1), std::vector<std::vector<std::string>>(sz(N + 1)));
    BisimplicialSet::Table hf, hs, vf, vs;
    for (auto* t : {&hf, &hs, &vf, &vs}) t->assign(sz(M + 1), std::vector<std::vector<std::vector<std::size_t>>>(sz(N + 1)));
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
            const std::size_t nb = B.size(m, n);
            for (std::size_t a = 0; a < A.size(m, n); ++a)
                for (std::size_t b = 0; b < nb; ++b) {
                    names[sz(m)][sz(n)].push_back("(" + A.name(m, n, a) + "," + B.name(m, n, b) + ")");
                    auto pair_maps = [&](const BisimplicialSet::Table& ta, const BisimplicialSet::Table& tb, std::size_t size_of_target) {
                        const auto& ra = ta[sz(m)][sz(n)][a];
                        const auto& rb = tb[sz(m)][sz(n)][b];
                        std::vector<std::size_t> out;
                        for (std::size_t i = 0; i < ra.size(); ++i) out.push_back(ra[i] * size_of_target + rb[i]);
                        return out;
                    };
                    hf[sz(m)][sz(n)].push_back(pair_maps(A.hface_table(), B.hface_table(), m == 0 ? 0 : B.size(m - 1, n)));
                    hs[sz(m)][sz(n)].push_back(pair_maps(A.hdegen_table(), B.hdegen_table(), m == M ? 0 : B.size(m + 1, n)));
                    vf[sz(m)][sz(n)].push_back(pair_maps(A.vface_table(), B.vface_table(), n == 0 ? 0 : B.size(m, n - 1)));
                    vs[sz(m)][sz(n)].push_back(pair_maps(A.vdegen_table(), B.vdegen_table(), n == N ? 0 : B.size(m, n + 1)));
                }
        }
    return BisimplicialSet(M, N, std::move(names), std::move(hf), std::move(hs), std::move(vf), std::move(vs));
}

BisimplicialSet bisimplex(int m, int n, int M, int N) {
    const int K = std::max(M, N);
    return truncate(product(embed(EmbedKind::discrete, standard_simplex(m), K), embed(EmbedKind::constant, standard_simplex(n), K)),
                    M, N);
}

std::string SegalVerdict::describe() const {
    if (holds) return "strict Segal condition holds";
    std::string out = "strict Segal condition fails";
    for (const auto& f : failures)
        out += "; level " + std::to_string(f.m) + " row degree " + std::to_string(f.n) + ": " + std::to_string(f.cells) +
               " cells vs " + std::to_string(f.spine_tuples) + " spine tuples" + (f.injective ? "" : ", not injective");
    return out;
}

SegalVerdict strict_segal_check(const BisimplicialSet& X) {
    if (X.M() < 2) throw ArgumentError("strict_segal_check: needs M >= 2");
    SegalVerdict v;
    for (int n = 0; n <= X.N(); ++n) {
        const std::size_t edges = X.size(1, n);
        // chains[e] = number of spine tuples of the current length ending in edge e
        std::vector<std::size_t> chains(edges, 1);
        for (int m = 2; m <= X.M(); ++m) {
            std::vector<std::size_t> next(edges, 0);
            for (std::size_t e = 0; e < edges; ++e)
                for (std::size_t f = 0; f < edges; ++f)
                    if (X.hface(1, n, f, 1) == X.hface(1, n, e, 0)) next[f] += chains[e];
            chains = next;
            const std::size_t tuples = std::accumulate(chains.begin(), chains.end(), std::size_t{0});
            std::set<std::vector<std::size_t>> images;
            for (std::size_t x = 0; x < X.size(m, n); ++x) {
                std::vector<std::size_t> spine;
                for (int i = 1; i <= m; ++i) spine.push_back(X.hedge(m, n, x, i - 1, i));
                images.insert(spine);
            }
            const bool injective = images.size() == X.size(m, n);
            if (!injective || tuples != X.size(m, n)) v.failures.push_back({m, n, X.size(m, n), tuples, injective});
        }
    }
    v.holds = v.failures.empty();
    return v;
}

namespace {

/// A commutative grid: k + 1 rows of m horizontal arrows joined by k rows of m + 1 vertical weak arrows.
struct Grid {
    int m = 0, k = 0;
    std::vector<int> obj;  // (k + 1) x (m + 1)
    std::vector<int> h;    // (k + 1) x m, arrow i + 1 of row j at j * m + i
    std::vector<int> v;    // k x (m + 1), transition j -> j + 1 at column i: j * (m + 1) + i
    int& o(int j, int i) { return obj[sz(j * (m + 1) + i)]; }
    int o(int j, int i) const { return obj[sz(j * (m + 1) + i)]; }
    int hor(int j, int i) const { return h[sz(j * m + i - 1)]; }  // arrow (i - 1) -> i of row j
    int ver(int j, int i) const { return v[sz((j - 1) * (m + 1) + i)]; }  // arrow row j - 1 -> row j
    std::vector<int> key() const {
        std::vector<int> out{m, k};
        out.insert(out.end(), obj.begin(), obj.end());
        out.insert(out.end(), h.begin(), h.end());
        out.insert(out.end(), v.begin(), v.end());
        return out;
    }
};

/// Composite of the arrows of a path, or the identity at `start` when empty.
int path_composite(const FinCategory& C, int start, const std::vector<int>& path) {
    int out = C.identity(start);
    for (int a : path) out = C.compose(a, out);
    return out;
}

Grid restrict_horizontal(const FinCategory& C, const Grid& g, const std::vector<int>& theta) {
    Grid r;
    r.m = static_cast<int>(theta.size()) - 1;
    r.k = g.k;
    for (int j = 0; j <= g.k; ++j) {
        for (int i = 0; i <= r.m; ++i) r.obj.push_back(g.o(j, theta[sz(i)]));
        for (int i = 1; i <= r.m; ++i) {
            std::vector<int> path;
            for (int t = theta[sz(i - 1)] + 1; t <= theta[sz(i)]; ++t) path.push_back(g.hor(j, t));
            r.h.push_back(path_composite(C, g.o(j, theta[sz(i - 1)]), path));
        }
    }
    for (int j = 1; j <= g.k; ++j)
        for (int i = 0; i <= r.m; ++i) r.v.push_back(g.ver(j, theta[sz(i)]));
    return r;
}

Grid restrict_vertical(const FinCategory& C, const Grid& g, const std::vector<int>& theta) {
    Grid r;
    r.m = g.m;
    r.k = static_cast<int>(theta.size()) - 1;
    for (int j = 0; j <= r.k; ++j)
        for (int i = 0; i <= g.m; ++i) r.obj.push_back(g.o(theta[sz(j)], i));
    for (int j = 0; j <= r.k; ++j)
        for (int i = 1; i <= g.m; ++i) r.h.push_back(g.hor(theta[sz(j)], i));
    for (int j = 1; j <= r.k; ++j)
        for (int i = 0; i <= g.m; ++i) {
            std::vector<int> path;
            for (int t = theta[sz(j - 1)] + 1; t <= theta[sz(j)]; ++t) path.push_back(g.ver(t, i));
            r.v.push_back(path_composite(C, g.o(theta[sz(j - 1)], i), path));
        }
    return r;
}

std::vector<int> coface(int n, int t) {  // [n - 1] -> [n] skipping t
    std::vector<int> th;
    for (int i = 0; i < n; ++i) th.push_back(i < t ? i : i + 1);
    return th;
}

std::vector<int> codegeneracy(int n, int t) {  // [n + 1] -> [n] repeating t
    std::vector<int> th;
    for (int i = 0; i <= n + 1; ++i) th.push_back(i <= t ? i : i - 1);
    return th;
}

/// Every grid of shape (m, k).
std::vector<Grid> all_grids(const RelativeCategory& R, int m, int k) {
    const auto& C = R.category;
    std::vector<Grid> rows;  // single rows first
    std::function<void(Grid&)> extend_row = [&](Grid& g) {
        const int i = static_cast<int>(g.obj.size()) - 1;
        if (i == m) {
            rows.push_back(g);
            return;
        }
        for (int a = 0; a < C.arrow_count(); ++a) {
            if (C.source(a) != g.obj.back()) continue;
            g.h.push_back(a);
            g.obj.push_back(C.target(a));
            extend_row(g);
            g.h.pop_back();
            g.obj.pop_back();
        }
    };
    for (int x = 0; x < C.object_count(); ++x) {
        Grid g;
        g.m = m;
        g.obj = {x};
        extend_row(g);
    }
    std::vector<Grid> out = rows;
    for (int level = 1; level <= k; ++level) {
        std::vector<Grid> next;
        for (const auto& base : out) {
            // the next row: vertical components w_i and horizontal arrows b_i with b_i w_{i-1} = w_i a_i
            std::vector<int> w, b, objs;
            std::function<void(int)> go = [&](int i) {
                if (i > m) {
                    Grid g = base;
                    g.k = level;
                    g.obj.insert(g.obj.end(), objs.begin(), objs.end());
                    g.h.insert(g.h.end(), b.begin(), b.end());
                    g.v.insert(g.v.end(), w.begin(), w.end());
                    next.push_back(std::move(g));
                    return;
                }
                const int above = base.o(level - 1, i);
                for (int wi = 0; wi < C.arrow_count(); ++wi) {
                    if (C.source(wi) != above || !R.weak[sz(wi)]) continue;
                    if (i == 0) {
                        w.push_back(wi);
                        objs.push_back(C.target(wi));
                        go(1);
                        w.pop_back();
                        objs.pop_back();
                        continue;
                    }
                    const int lhs_target = C.compose(wi, base.hor(level - 1, i));
                    for (int bi : C.hom(objs.back(), C.target(wi))) {
                        if (C.compose(bi, w.back()) != lhs_target) continue;
                        w.push_back(wi);
                        b.push_back(bi);
                        objs.push_back(C.target(wi));
                        go(i + 1);
                        w.pop_back();
                        b.pop_back();
                        objs.pop_back();
                    }
                }
            };
            go(0);
        }
        out = std::move(next);
    }
    return out;
}

std::string grid_name(const FinCategory& C, const Grid& g) {
    std::string out;
    for (int j = 0; j <= g.k; ++j) {
        if (j > 0) {
            out += "|";
            for (int i = 0; i <= g.m; ++i) out += (i ? "," : "") + C.arrow_name(g.ver(j, i));
            out += "|";
        }
        if (g.m == 0) out += C.object_name(g.o(j, 0));
        for (int i = 1; i <= g.m; ++i) out += (i > 1 ? "," : "") + C.arrow_name(g.hor(j, i));
    }
    return out;
}

}  // namespace

BisimplicialSet rezk_nerve(const RelativeCategory& R, int M, int N) {
    if (M < 0 || N < 0) throw ArgumentError("rezk_nerve: negative truncation");
    R.validate();
    const auto& C = R.category;
    std::vector<std::vector<std::vector<Grid>>> cells(sz(M + 1), std::vector<std::vector<Grid>>(sz(N + 1)));
    std::vector<std::vector<std::map<std::vector<int>, std::size_t>>> index(sz(M + 1),
                                                                           std::vector<std::map<std::vector<int>, std::size_t>>(sz(N + 1)));
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n) {
            cells[sz(m)][sz(n)] = all_grids(R, m, n);
            for (std::size_t x = 0; x < cells[sz(m)][sz(n)].size(); ++x) index[sz(m)][sz(n)][cells[sz(m)][sz(n)][x].key()] = x;
        }
    std::vector<std::vector<std::vector<std::string>>> names(sz(M + 1), std::vector<std::vector<std::string>>(sz(N + 1)));
    BisimplicialSet::Table hf, hs, vf, vs;
    for (auto* t : {&hf, &hs, &vf, &vs}) t->assign(sz(M + 1), std::vector<std::vector<std::vector<std::size_t>>>(sz(N + 1)));
    auto find = [&](const Grid& g) { return index[sz(g.m)][sz(g.k)].at(g.key()); };
    for (int m = 0; m <= M; ++m)
        for (int n = 0; n <= N; ++n)
            for (const auto& g : cells[sz(m)][sz(n)]) {
                names[sz(m)][sz(n)].push_back(grid_name(C, g));
                std::vector<std::size_t> a, b, c, d;
                for (int t = 0; m >= 1 && t <= m; ++t) a.push_back(find(restrict_horizontal(C, g, coface(m, t))));
                for (int t = 0; m < M && t <= m; ++t) b.push_back(find(restrict_horizontal(C, g, codegeneracy(m, t))));
                for (int t = 0; n >= 1 && t <= n; ++t) c.push_back(find(restrict_vertical(C, g, coface(n, t))));
                for (int t = 0; n < N && t <= n; ++t) d.push_back(find(restrict_vertical(C, g, codegeneracy(n, t))));
                hf[sz(m)][sz(n)].push_back(a);
                hs[sz(m)][sz(n)].push_back(b);
                vf[sz(m)][sz(n)].push_back(c);
                vs[sz(m)][sz(n)].push_back(d);
            }
    return BisimplicialSet(M, N, std::move(names), std::move(hf), std::move(hs), std::move(vf), std::move(vs));
}

std::string CompletenessVerdict::describe() const {
    std::string out = complete ? "complete" : "not complete";
    out += ": " + std::to_string(objects) + " objects, " + std::to_string(equivalence_vertices) +
           " vertices in the equivalence subobject, " + std::to_string(equivalence_classes) + " invertible classes";
    if (!essentially_surjective) out += "; degeneracy not essentially surjective";
    if (!fully_faithful) out += "; degeneracy not fully faithful";
    return out;
}

namespace {

/// Whether a truncated explicit simplicial set is the nerve of a finite groupoid (checked through its truncation).
std::optional<std::string> groupoid_nerve_problem(const ExplicitSimplicialSet& E) {
    const SimplicialSet S = normalize(E);
    const int d = std::min(E.top, 3);
    if (d >= 2 && !classify(S, d, HornMode::inner).unique_fillers()) return "inner horns do not fill uniquely";
    if (!homotopy_category(S).is_groupoid()) return "some arrow is not invertible";
    return std::nullopt;
}

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace

std::variant<CompletenessVerdict, NotDecidable> completeness_check(const BisimplicialSet& X) {
    if (X.M() < 2 || X.N() < 3) return NotDecidable{"needs truncation at least (2, 3)"};
    if (!strict_segal_check(X).holds) return NotDecidable{"the strict Segal condition fails"};
    if (auto p = groupoid_nerve_problem(X.row(0))) return NotDecidable{"row 0 is not a groupoid nerve: " + *p};

    // Ho: objects X_{0,0}; arrows are classes of X_{1,0} under the edges of the mapping spaces
    const std::size_t objects = X.size(0, 0), arrows = X.size(1, 0);
    auto src = [&](std::size_t f) { return X.hface(1, 0, f, 1); };
    auto tgt = [&](std::size_t f) { return X.hface(1, 0, f, 0); };
    UnionFind uf(arrows);
    for (std::size_t c = 0; c < X.size(1, 1); ++c) {
        bool in_fiber = true;
        for (int k = 0; k < 2; ++k) {
            const std::size_t e = X.hvertex(1, 1, c, k);  // an edge of row 0
            in_fiber = in_fiber && e == X.vdegen(0, 0, X.vface(0, 1, e, 0), 0);
        }
        if (in_fiber) uf.unite(X.vface(1, 1, c, 0), X.vface(1, 1, c, 1));
    }
    // composites through the unique 2-cell over each composable pair
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> composite;  // (g, f) -> g o f on classes
    for (std::size_t s = 0; s < X.size(2, 0); ++s) {
        const std::size_t f = uf.find(X.hedge(2, 0, s, 0, 1)), g = uf.find(X.hedge(2, 0, s, 1, 2));
        const std::size_t h = uf.find(X.hedge(2, 0, s, 0, 2));
        auto [it, fresh] = composite.emplace(std::make_pair(g, f), h);
        if (!fresh && it->second != h) return NotDecidable{"composition in Ho is not well defined"};
    }
    auto identity_class = [&](std::size_t x) { return uf.find(X.hdegen(0, 0, x, 0)); };
    std::vector<bool> invertible(arrows, false);
    std::set<std::size_t> invertible_classes;
    for (std::size_t f = 0; f < arrows; ++f)
        for (std::size_t g = 0; g < arrows && !invertible[f]; ++g) {
            if (src(g) != tgt(f) || tgt(g) != src(f)) continue;
            auto gf = composite.find({uf.find(g), uf.find(f)}), fg = composite.find({uf.find(f), uf.find(g)});
            if (gf != composite.end() && fg != composite.end() && gf->second == identity_class(src(f)) &&
                fg->second == identity_class(tgt(f)))
                invertible[f] = true;
        }
    for (std::size_t f = 0; f < arrows; ++f)
        if (invertible[f]) invertible_classes.insert(uf.find(f));

    // X^eq: cells of row 1 all of whose vertices are invertible
    ExplicitSimplicialSet R1 = X.row(1);
    std::vector<std::vector<long>> new_index(sz(X.N() + 1));
    ExplicitSimplicialSet Eq;
    Eq.top = X.N();
    for (int n = 0; n <= X.N(); ++n) {
        new_index[sz(n)].assign(X.size(1, n), -1);
        std::size_t kept = 0;
        for (std::size_t c = 0; c < X.size(1, n); ++c) {
            bool ok = true;
            for (int k = 0; k <= n && ok; ++k) {
                std::size_t y = c;
                int level = n;
                for (int j = n; j >= 0; --j)
                    if (j != k) y = X.vface(1, level--, y, j);
                ok = invertible[y];
            }
            if (ok) new_index[sz(n)][c] = static_cast<long>(kept++);
        }
        Eq.sizes.push_back(kept);
        Eq.faces.emplace_back();
        Eq.degeneracies.emplace_back();
        Eq.names.emplace_back();
    }
    for (int n = 0; n <= X.N(); ++n)
        for (std::size_t c = 0; c < X.size(1, n); ++c) {
            if (new_index[sz(n)][c] < 0) continue;
            std::vector<std::size_t> f, s;
            for (std::size_t y : R1.faces[sz(n)][c]) f.push_back(static_cast<std::size_t>(new_index[sz(n - 1)][y]));
            for (std::size_t y : R1.degeneracies[sz(n)][c]) s.push_back(static_cast<std::size_t>(new_index[sz(n + 1)][y]));
            Eq.faces[sz(n)].push_back(f);
            Eq.degeneracies[sz(n)].push_back(s);
            Eq.names[sz(n)].push_back(X.name(1, n, c));
        }
    if (auto p = groupoid_nerve_problem(Eq)) return NotDecidable{"the equivalence subobject is not a groupoid nerve: " + *p};

    // s : X_0 -> X^eq as a functor of groupoids (edges of a groupoid nerve are its arrows)
    CompletenessVerdict v;
    v.objects = objects;
    v.equivalence_vertices = Eq.sizes[0];
    v.equivalence_classes = invertible_classes.size();
    auto s0 = [&](std::size_t x) { return X.hdegen(0, 0, x, 0); };
    v.fully_faithful = true;
    for (std::size_t x = 0; x < objects; ++x)
        for (std::size_t y = 0; y < objects; ++y) {
            std::set<std::size_t> image;
            std::size_t domain = 0;
            for (std::size_t e = 0; e < X.size(0, 1); ++e)
                if (X.vface(0, 1, e, 1) == x && X.vface(0, 1, e, 0) == y) {
                    ++domain;
                    image.insert(X.hdegen(0, 1, e, 0));
                }
            std::size_t target = 0;
            for (std::size_t c = 0; c < X.size(1, 1); ++c)
                if (new_index[1][c] >= 0 && X.vface(1, 1, c, 1) == s0(x) && X.vface(1, 1, c, 0) == s0(y)) ++target;
            if (image.size() != domain || domain != target) v.fully_faithful = false;
        }
    std::set<std::size_t> in_image;
    for (std::size_t x = 0; x < objects; ++x) in_image.insert(s0(x));
    v.essentially_surjective = true;
    for (std::size_t u = 0; u < X.size(1, 0); ++u) {
        if (new_index[0][u] < 0) continue;
        bool reached = in_image.count(u) > 0;
        for (std::size_t c = 0; c < X.size(1, 1) && !reached; ++c)
            if (new_index[1][c] >= 0 && X.vface(1, 1, c, 0) == u && in_image.count(X.vface(1, 1, c, 1))) reached = true;
        v.essentially_surjective = v.essentially_surjective && reached;
    }
    v.complete = v.essentially_surjective && v.fully_faithful;
    return v;
}

}  // namespace nw
