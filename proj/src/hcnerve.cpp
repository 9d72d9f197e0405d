#include "nerveworks/hcnerve.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

int sval(std::uint32_t mask, int v) { return v - std::popcount(mask & ((1u << v) - 1u)); }

std::uint32_t remove_positions(std::uint32_t mask, std::uint32_t drop) {
    std::uint32_t out = 0;
    int w = 0;
    for (int p = 0; p < 32; ++p) {
        if (drop & (1u << p)) continue;
        if (mask & (1u << p)) out |= (1u << w);
        ++w;
    }
    return out;
}

std::uint32_t insert_degeneracy(std::uint32_t mask, int i) {
    const std::uint32_t low = mask & ((1u << i) - 1u);
    const std::uint32_t high = (mask >> i) << (i + 1);
    return low | (1u << i) | high;
}

std::string subset_label(std::uint32_t s) {
    std::string out = "{";
    bool first = true;
    for (int b = 0; b < 32; ++b) {
        if (!(s & (1u << b))) continue;
        if (!first) out += ",";
        out += std::to_string(b);
        first = false;
    }
    return out + "}";
}

std::uint32_t parse_subset(const std::string& label) {
    std::uint32_t s = 0;
    int cur = -1;
    for (char c : label) {
        if (c >= '0' && c <= '9') {
            cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
        } else if (cur >= 0) {
            s |= 1u << cur;
            cur = -1;
        }
    }
    return s;
}

/// Nerve of the poset of subsets of {i..j} containing i and j, ordered by inclusion.
struct PosetNerve {
    SimplicialSet N;
    std::vector<std::vector<std::vector<std::uint32_t>>> chains;  // [dim][cell]
    std::map<std::vector<std::uint32_t>, int> index;

    PosetNerve() = default;
    PosetNerve(int i, int j) {
        std::vector<std::uint32_t> elems;
        const std::uint32_t ends = (1u << i) | (1u << j);
        const int inner = std::max(0, j - i - 1);
        for (std::uint32_t t = 0; t < (1u << inner); ++t) elems.push_back(ends | (t << (i + 1)));
        std::sort(elems.begin(), elems.end(), [](std::uint32_t a, std::uint32_t b) {
            return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
        });
        SimplicialSet::Builder b;
        std::vector<std::vector<std::uint32_t>> level;
        for (auto e : elems) level.push_back({e});
        int k = 0;
        while (!level.empty()) {
            chains.emplace_back();
            for (auto& c : level) {
                std::vector<Simplex> faces;
                if (k > 0) {
                    for (int l = 0; l <= k; ++l) {
                        auto f = c;
                        f.erase(f.begin() + l);
                        faces.push_back(Simplex{k - 1, 0, index.at(f)});
                    }
                }
                std::string name;
                for (std::size_t p = 0; p < c.size(); ++p) name += (p ? "<" : "") + subset_label(c[p]);
                index[c] = b.add_cell(k, name, std::move(faces));
                chains.back().push_back(c);
            }
            std::vector<std::vector<std::uint32_t>> next;
            for (const auto& c : level)
                for (auto e : elems)
                    if ((c.back() & e) == c.back() && c.back() != e) {
                        auto d = c;
                        d.push_back(e);
                        next.push_back(std::move(d));
                    }
            level = std::move(next);
            ++k;
        }
        N = b.build();
    }

    /// The simplex spanned by a weakly increasing chain.
    Simplex from_weak(const std::vector<std::uint32_t>& v) const {
        std::vector<std::uint32_t> strict;
        std::uint32_t mask = 0;
        for (std::size_t p = 0; p < v.size(); ++p) {
            if (p > 0 && v[p] == v[p - 1]) {
                mask |= 1u << (p - 1);
                continue;
            }
            strict.push_back(v[p]);
        }
        return Simplex{static_cast<int>(v.size()) - 1, mask, index.at(strict)};
    }

    std::vector<std::uint32_t> chain_of(const Simplex& s) const {
        const auto& c = chains[idx(s.cell_dim())][idx(s.cell)];
        std::vector<std::uint32_t> out;
        for (int p = 0; p <= s.dim; ++p) out.push_back(c[idx(sval(s.degen, p))]);
        return out;
    }
};

int known_bound(const SimplicialSet& X) {
    auto t = X.truncation();
    return t ? *t : X.top_dimension();
}

}  // namespace

int composition_bound(const SimplicialSet& a, const SimplicialSet& b) {
    if (a.empty() || b.empty()) return -1;
    const auto ta = a.truncation();
    const auto tb = b.truncation();
    if (!ta && !tb) return a.top_dimension() + b.top_dimension();
    if (ta && tb) return std::min(*ta, *tb);
    return ta ? *ta : *tb;
}

SimplicialCategory::SimplicialCategory(std::vector<std::string> objects, std::vector<SimplicialSet> maps,
                                       std::vector<int> identities, const ComposeFn& compose)
    : objects_(std::move(objects)), maps_(std::move(maps)), identities_(std::move(identities)) {
    const int n = object_count();
    if (maps_.size() != idx(n * n) || identities_.size() != idx(n))
        throw ArgumentError("SimplicialCategory: expected n*n mapping spaces and n identities");
    tables_.assign(idx(n * n * n), {});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const auto& a = map(y, z);
                const auto& b = map(x, y);
                auto& t = tables_[idx((x * n + y) * n + z)];
                const int bound = composition_bound(a, b);
                for (int k = 0; k <= bound; ++k)
                    for (const auto& g : a.simplices(k))
                        for (const auto& f : b.simplices(k))
                            if ((g.degen & f.degen) == 0u) t.emplace(std::make_pair(g, f), compose(x, y, z, g, f));
            }
    validate();
}

SimplicialCategory::SimplicialCategory(std::vector<std::string> objects, std::vector<SimplicialSet> maps,
                                       std::vector<int> identities, std::vector<CompositionTable> tables)
    : objects_(std::move(objects)), maps_(std::move(maps)), identities_(std::move(identities)), tables_(std::move(tables)) {
    const int n = object_count();
    if (maps_.size() != idx(n * n) || identities_.size() != idx(n) || tables_.size() != idx(n * n * n))
        throw ArgumentError("SimplicialCategory: expected n*n mapping spaces, n identities and n^3 tables");
    validate();
}

std::optional<int> SimplicialCategory::truncation() const {
    std::optional<int> t;
    for (const auto& m : maps_)
        if (auto mt = m.truncation()) t = t ? std::min(*t, *mt) : *mt;
    return t;
}

Simplex SimplicialCategory::compose(int x, int y, int z, const Simplex& g, const Simplex& f) const {
    if (g.dim != f.dim) throw ArgumentError("compose: simplices of different dimensions");
    const std::uint32_t common = g.degen & f.degen;
    const int k = g.dim - std::popcount(common);
    const Simplex g0{k, remove_positions(g.degen, common), g.cell};
    const Simplex f0{k, remove_positions(f.degen, common), f.cell};
    const auto& t = table(x, y, z);
    auto it = t.find({g0, f0});
    if (it == t.end())
        throw ArgumentError("compose: no composite recorded for " + map(y, z).describe(g) + " o " + map(x, y).describe(f));
    return degenerate_by(it->second, common, g.dim);
}

void SimplicialCategory::validate() const {
    const int n = object_count();
    for (int x = 0; x < n; ++x) {
        const int id = identity(x);
        if (id < 0 || id >= map(x, x).cell_count(0))
            throw ArgumentError("SimplicialCategory: identity of '" + object_name(x) + "' is not a vertex of its endomorphisms");
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const auto& target = map(x, z);
                const int bound = composition_bound(map(y, z), map(x, y));
                for (int k = 0; k <= bound; ++k)
                    for (const auto& g : map(y, z).simplices(k))
                        for (const auto& f : map(x, y).simplices(k)) {
                            if ((g.degen & f.degen) != 0u) continue;
                            auto it = table(x, y, z).find({g, f});
                            if (it == table(x, y, z).end())
                                throw ArgumentError("SimplicialCategory: composition table is missing a pair");
                            const Simplex& r = it->second;
                            if (r.dim != k || (r.degen >> std::max(k, 0)) != 0u || r.cell < 0 ||
                                r.cell >= target.cell_count(r.cell_dim()))
                                throw ArgumentError("SimplicialCategory: composite is not a simplex of the target");
                            for (int l = 0; k > 0 && l <= k; ++l)
                                if (target.face(r, l) != compose(x, y, z, map(y, z).face(g, l), map(x, y).face(f, l)))
                                    throw ArgumentError("SimplicialCategory: composition does not commute with faces");
                        }
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto& M = map(x, y);
            const int top = std::min(known_bound(M), std::min(known_bound(map(x, x)), known_bound(map(y, y))));
            for (int k = 0; k <= top; ++k)
                for (int c = 0; c < M.cell_count(k); ++c) {
                    const Simplex f = SimplicialSet::cell(k, c);
                    if (compose(x, y, y, SimplicialSet::constant(identity(y), k), f) != f ||
                        compose(x, x, y, f, SimplicialSet::constant(identity(x), k)) != f)
                        throw ArgumentError("SimplicialCategory: unit law fails at '" + M.name(k, c) + "'");
                }
        }
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    const auto& H = map(y, z);
                    const auto& G = map(x, y);
                    const auto& F = map(w, x);
                    if (H.empty() || G.empty() || F.empty()) continue;
                    int bound = composition_bound(H, G);
                    const auto tf = F.truncation();
                    if (!H.truncation() && !G.truncation() && !tf) bound += F.top_dimension();
                    else bound = std::min(bound, tf ? *tf : bound);
                    for (int k = 0; k <= bound; ++k)
                        for (const auto& h : H.simplices(k))
                            for (const auto& g : G.simplices(k)) {
                                const Simplex hg = compose(x, y, z, h, g);
                                for (const auto& f : F.simplices(k)) {
                                    if ((h.degen & g.degen & f.degen) != 0u) continue;
                                    if (compose(w, x, z, hg, f) != compose(w, y, z, h, compose(w, x, y, g, f)))
                                        throw ArgumentError("SimplicialCategory: composition is not associative");
                                }
                            }
                }
}

SimplicialCategory SimplicialCategory::from_category(const FinCategory& C) {
    const int n = C.object_count();
    std::vector<SimplicialSet> maps;
    std::vector<int> ids;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            SimplicialSet::Builder b;
            for (int a : C.hom(x, y)) b.add_cell(0, C.arrow_name(a));
            maps.push_back(b.build());
        }
    for (int x = 0; x < n; ++x) {
        const auto& h = C.hom(x, x);
        ids.push_back(static_cast<int>(std::find(h.begin(), h.end(), C.identity(x)) - h.begin()));
    }
    auto fn = [&C](int x, int y, int z, const Simplex& g, const Simplex& f) {
        const int a = C.compose(C.hom(y, z)[idx(g.cell)], C.hom(x, y)[idx(f.cell)]);
        const auto& h = C.hom(x, z);
        return Simplex{0, 0, static_cast<int>(std::find(h.begin(), h.end(), a) - h.begin())};
    };
    return SimplicialCategory(C.object_names(), std::move(maps), std::move(ids), fn);
}

SimplicialCategory frak_c(int n) {
    if (n < 0 || n > 8) throw ArgumentError("frak_c: n must lie in 0..8");
    const int m = n + 1;
    std::vector<PosetNerve> posets(idx(m * m));
    std::vector<SimplicialSet> maps;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i <= j) posets[idx(i * m + j)] = PosetNerve(i, j);
            maps.push_back(i <= j ? posets[idx(i * m + j)].N : empty_simplicial_set());
        }
    std::vector<std::string> objects;
    for (int i = 0; i < m; ++i) objects.push_back(std::to_string(i));
    auto fn = [&posets, m](int x, int y, int z, const Simplex& g, const Simplex& f) {
        const auto upper = posets[idx(y * m + z)].chain_of(g);
        const auto lower = posets[idx(x * m + y)].chain_of(f);
        std::vector<std::uint32_t> u(upper.size());
        for (std::size_t p = 0; p < u.size(); ++p) u[p] = upper[p] | lower[p];
        return posets[idx(x * m + z)].from_weak(u);
    };
    return SimplicialCategory(std::move(objects), std::move(maps), std::vector<int>(idx(m), 0), fn);
}

std::vector<std::uint32_t> frak_c_chain(const SimplicialCategory& cn, int i, int j, const Simplex& s) {
    const auto& M = cn.map(i, j);
    std::vector<std::uint32_t> out;
    for (int v : M.vertices(s)) out.push_back(parse_subset(M.name(0, v)));
    return out;
}

HornMapspace horn_mapspace(int n, int i) {
    if (n < 2 || i <= 0 || i >= n) throw ArgumentError("horn_mapspace: need 0 < i < n");
    PosetNerve P(0, n);
    std::vector<std::vector<bool>> keep(P.chains.size());
    for (std::size_t k = 0; k < P.chains.size(); ++k)
        for (const auto& c : P.chains[k]) {
            std::uint32_t all = ~0u, any = 0;
            for (auto s : c) {
                all &= s;
                any |= s;
            }
            bool ok = !(any & (1u << i));
            for (int j = 1; j < n && !ok; ++j)
                if (j != i && (((all >> j) & 1u) || !((any >> j) & 1u))) ok = true;
            keep[k].push_back(ok);
        }
    auto sub = subobject(P.N, keep);
    return HornMapspace{sub.object, P.N, sub.inclusion};
}

namespace {

/// The shape data of c[m] used to enumerate and restrict simplicial functors out of it.
struct CubeShape {
    int m = 0;
    std::vector<PosetNerve> posets;  // [i * (m+1) + k], i < k
    struct Split {
        bool indecomposable = true;
        int j = 0;
        Simplex upper, lower;
    };
    std::vector<std::vector<std::vector<Split>>> splits;  // [pair][dim][cell]
    std::vector<std::pair<int, int>> pairs;               // in order of increasing gap

    explicit CubeShape(int m_) : m(m_) {
        const int w = m + 1;
        posets.resize(idx(w * w));
        splits.resize(idx(w * w));
        for (int g = 1; g <= m; ++g)
            for (int i = 0; i + g <= m; ++i) pairs.emplace_back(i, i + g);
        for (int i = 0; i < w; ++i)
            for (int k = i + 1; k < w; ++k) posets[idx(i * w + k)] = PosetNerve(i, k);
        for (auto [i, k] : pairs) {
            const auto& P = posets[idx(i * w + k)];
            auto& sp = splits[idx(i * w + k)];
            sp.resize(P.chains.size());
            for (std::size_t d = 0; d < P.chains.size(); ++d)
                for (const auto& c : P.chains[d]) {
                    Split s;
                    const std::uint32_t middle = c.front() & ~((1u << i) | (1u << k));
                    if (middle != 0u) {
                        s.indecomposable = false;
                        s.j = std::countr_zero(middle);
                        const std::uint32_t hi = ~((1u << s.j) - 1u);
                        const std::uint32_t lo = (1u << (s.j + 1)) - 1u;
                        std::vector<std::uint32_t> up, down;
                        for (auto e : c) {
                            up.push_back(e & hi);
                            down.push_back(e & lo);
                        }
                        s.upper = posets[idx(s.j * w + k)].from_weak(up);
                        s.lower = posets[idx(i * w + s.j)].from_weak(down);
                    }
                    sp[d].push_back(s);
                }
        }
    }
    const PosetNerve& poset(int i, int k) const { return posets[idx(i * (m + 1) + k)]; }
};

struct Fun {
    std::vector<int> obj;
    std::vector<std::vector<std::vector<Simplex>>> img;  // [pair index i*(m+1)+k][dim][cell]

    Simplex eval(int m, int i, int k, const Simplex& s) const {
        const auto& v = img[idx(i * (m + 1) + k)][idx(s.cell_dim())][idx(s.cell)];
        return degenerate_by(v, s.degen, s.dim);
    }
    std::vector<int> key() const {
        std::vector<int> out = obj;
        for (const auto& p : img)
            for (const auto& lvl : p)
                for (const auto& s : lvl) {
                    out.push_back(s.dim);
                    out.push_back(static_cast<int>(s.degen));
                    out.push_back(s.cell);
                }
        return out;
    }
};

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
        return h;
    }
};

void enumerate_functors(const SimplicialCategory& C, const CubeShape& S, std::vector<Fun>& out) {
    const int m = S.m;
    const int w = m + 1;
    const int nobj = C.object_count();
    Fun F;
    F.obj.assign(idx(w), 0);
    F.img.resize(idx(w * w));
    for (auto [i, k] : S.pairs) {
        const auto& P = S.poset(i, k);
        F.img[idx(i * w + k)].resize(P.chains.size());
        for (std::size_t d = 0; d < P.chains.size(); ++d) F.img[idx(i * w + k)][d].assign(P.chains[d].size(), Simplex{});
    }
    struct Slot {
        int i, k, d, c;
    };
    std::vector<Slot> slots;
    for (auto [i, k] : S.pairs) {
        const auto& P = S.poset(i, k);
        for (std::size_t d = 0; d < P.chains.size(); ++d)
            for (std::size_t c = 0; c < P.chains[d].size(); ++c)
                slots.push_back({i, k, static_cast<int>(d), static_cast<int>(c)});
    }

    std::function<void(std::size_t)> fill = [&](std::size_t s) {
        if (s == slots.size()) {
            out.push_back(F);
            return;
        }
        const auto [i, k, d, c] = slots[s];
        const auto& M = C.map(F.obj[idx(i)], F.obj[idx(k)]);
        if (M.empty()) return;
        if (!M.known_through(d)) throw ArgumentError("coherent_nerve: mapping spaces are not known in high enough dimension");
        const auto& P = S.poset(i, k);
        std::vector<Simplex> bd;
        if (d > 0)
            for (const auto& f : P.N.faces(d, c)) bd.push_back(F.eval(m, i, k, f));
        Simplex& slot = F.img[idx(i * w + k)][idx(d)][idx(c)];
        const auto& sp = S.splits[idx(i * w + k)][idx(d)][idx(c)];
        if (!sp.indecomposable) {
            const int j = sp.j;
            const Simplex v = C.compose(F.obj[idx(i)], F.obj[idx(j)], F.obj[idx(k)], F.eval(m, j, k, sp.upper),
                                        F.eval(m, i, j, sp.lower));
            if (d > 0 && M.boundary(v) != bd) return;
            slot = v;
            fill(s + 1);
            return;
        }
        const auto& cands = d == 0 ? M.simplices(0) : M.with_boundary(d, bd);
        for (const auto& v : cands) {
            slot = v;
            fill(s + 1);
        }
    };

    std::function<void(int)> choose = [&](int p) {
        if (p == w) {
            fill(0);
            return;
        }
        for (int x = 0; x < nobj; ++x) {
            F.obj[idx(p)] = x;
            choose(p + 1);
        }
    };
    choose(0);
}

/// F o c[theta] for a monotone theta : [target.m] -> [source.m].
Fun restrict_functor(const SimplicialCategory& C, const CubeShape& source, const Fun& F, const CubeShape& target,
                     const std::vector<int>& theta) {
    const int w = target.m + 1;
    Fun G;
    for (int a = 0; a < w; ++a) G.obj.push_back(F.obj[idx(theta[idx(a)])]);
    G.img.resize(idx(w * w));
    for (auto [a, b] : target.pairs) {
        const auto& P = target.poset(a, b);
        auto& out = G.img[idx(a * w + b)];
        out.resize(P.chains.size());
        const int ta = theta[idx(a)], tb = theta[idx(b)];
        for (std::size_t d = 0; d < P.chains.size(); ++d)
            for (const auto& c : P.chains[d]) {
                if (ta == tb) {
                    out[d].push_back(SimplicialSet::constant(C.identity(F.obj[idx(ta)]), static_cast<int>(d)));
                    continue;
                }
                std::vector<std::uint32_t> imgs;
                for (auto e : c) {
                    std::uint32_t t = 0;
                    for (int q = 0; q < w; ++q)
                        if (e & (1u << q)) t |= 1u << theta[idx(q)];
                    imgs.push_back(t);
                }
                out[d].push_back(F.eval(source.m, ta, tb, source.poset(ta, tb).from_weak(imgs)));
            }
    }
    return G;
}

std::vector<int> coface(int m, int l) {  // [m-1] -> [m] skipping l
    std::vector<int> t;
    for (int a = 0; a < m; ++a) t.push_back(a < l ? a : a + 1);
    return t;
}

std::vector<int> codegeneracy(int m, int l) {  // [m] -> [m-1] repeating l
    std::vector<int> t;
    for (int a = 0; a <= m; ++a) t.push_back(a <= l ? a : a - 1);
    return t;
}

}  // namespace

SimplicialSet coherent_nerve(const SimplicialCategory& C, int d) {
    if (d < 0 || d > 6) throw ArgumentError("coherent_nerve: d must lie in 0..6");
    if (auto t = C.truncation(); t && *t < d - 1)
        throw ArgumentError("coherent_nerve: mapping spaces must be known through dimension d - 1");
    SimplicialSet::Builder b(d);
    std::vector<CubeShape> shapes;
    std::vector<std::unordered_map<std::vector<int>, Simplex, VectorHash>> ez(idx(d + 1));
    std::vector<std::set<std::string>> used(idx(d + 1));
    for (int m = 0; m <= d; ++m) {
        shapes.emplace_back(m);
        std::vector<Fun> funs;
        enumerate_functors(C, shapes.back(), funs);
        int counter = 0;
        for (const auto& F : funs) {
            std::optional<Simplex> found;
            for (int l = 0; l < m && !found; ++l) {
                const Fun G = restrict_functor(C, shapes[idx(m)], F, shapes[idx(m - 1)], coface(m, l));
                const Fun H = restrict_functor(C, shapes[idx(m - 1)], G, shapes[idx(m)], codegeneracy(m, l));
                if (H.key() == F.key()) {
                    const Simplex g = ez[idx(m - 1)].at(G.key());
                    found = Simplex{m, insert_degeneracy(g.degen, l), g.cell};
                }
            }
            if (!found) {
                std::vector<Simplex> faces;
                for (int l = 0; m > 0 && l <= m; ++l)
                    faces.push_back(
                        ez[idx(m - 1)].at(restrict_functor(C, shapes[idx(m)], F, shapes[idx(m - 1)], coface(m, l)).key()));
                std::string name;
                if (m == 0) {
                    name = C.object_name(F.obj[0]);
                } else if (m == 1) {
                    name = C.map(F.obj[0], F.obj[1]).describe(F.img[1][0][0]);
                    if (used[1].count(name)) name = C.object_name(F.obj[0]) + "->" + C.object_name(F.obj[1]) + ":" + name;
                } else {
                    name = "F" + std::to_string(m) + "_" + std::to_string(counter);
                }
                while (used[idx(m)].count(name)) name += "'";
                used[idx(m)].insert(name);
                ++counter;
                found = Simplex{m, 0, b.add_cell(m, name, std::move(faces))};
            }
            ez[idx(m)].emplace(F.key(), *found);
        }
    }
    return b.build();
}

FinCategory pi0_category(const SimplicialCategory& C) {
    const int n = C.object_count();
    // Path components of every mapping space.
    std::vector<std::vector<int>> comp(idx(n * n));
    std::vector<int> count(idx(n * n), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto& M = C.map(x, y);
            std::vector<int> parent(idx(M.cell_count(0)));
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> root = [&](int v) { return parent[idx(v)] == v ? v : parent[idx(v)] = root(parent[idx(v)]); };
            for (int e = 0; M.known_through(1) && e < M.cell_count(1); ++e) {
                const auto vs = M.vertices(SimplicialSet::cell(1, e));
                parent[idx(root(vs[0]))] = root(vs[1]);
            }
            auto& c = comp[idx(x * n + y)];
            c.assign(parent.size(), -1);
            std::vector<int> label(parent.size(), -1);
            for (std::size_t v = 0; v < parent.size(); ++v) {
                const int r = root(static_cast<int>(v));
                if (label[idx(r)] < 0) label[idx(r)] = count[idx(x * n + y)]++;
                c[v] = label[idx(r)];
            }
        }
    // Arrows numbered consecutively per (x, y); the representative is the first vertex of the component.
    std::vector<int> offset(idx(n * n) + 1, 0);
    for (int p = 0; p < n * n; ++p) offset[idx(p + 1)] = offset[idx(p)] + count[idx(p)];
    std::vector<ArrowSpec> arrows(idx(offset.back()));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto& c = comp[idx(x * n + y)];
            for (int v = static_cast<int>(c.size()) - 1; v >= 0; --v)
                arrows[idx(offset[idx(x * n + y)] + c[idx(v)])] = ArrowSpec{"[" + C.map(x, y).name(0, v) + "]", x, y};
        }
    std::set<std::string> seen;
    for (auto& a : arrows) {
        if (seen.count(a.name)) a.name = C.object_name(a.source) + "->" + C.object_name(a.target) + ":" + a.name;
        while (seen.count(a.name)) a.name += "'";
        seen.insert(a.name);
    }
    std::vector<int> ids;
    for (int x = 0; x < n; ++x) ids.push_back(offset[idx(x * n + x)] + comp[idx(x * n + x)][idx(C.identity(x))]);
    const int A = offset.back();
    std::vector<std::vector<int>> table(idx(A), std::vector<int>(idx(A), -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const auto& G = C.map(y, z);
                const auto& F = C.map(x, y);
                for (int g = 0; g < G.cell_count(0); ++g)
                    for (int f = 0; f < F.cell_count(0); ++f) {
                        const Simplex r = C.compose(x, y, z, SimplicialSet::cell(0, g), SimplicialSet::cell(0, f));
                        const int ga = offset[idx(y * n + z)] + comp[idx(y * n + z)][idx(g)];
                        const int fa = offset[idx(x * n + y)] + comp[idx(x * n + y)][idx(f)];
                        const int ra = offset[idx(x * n + z)] + comp[idx(x * n + z)][idx(r.cell)];
                        int& slot = table[idx(ga)][idx(fa)];
                        if (slot >= 0 && slot != ra)
                            throw InconsistencyError("pi0_category: composition is not constant on path components");
                        slot = ra;
                    }
            }
    return FinCategory(C.object_names(), std::move(arrows), std::move(ids), std::move(table));
}

}  // namespace nw
