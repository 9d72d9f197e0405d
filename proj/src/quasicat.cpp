#include "nerveworks/quasicat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[sz(a)] != a) a = parent[sz(a)] = parent[sz(parent[sz(a)])];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[sz(std::max(a, b))] = std::min(a, b);
    }
    /// Dense class labels in order of first appearance.
    std::vector<int> labels(int& count) {
        std::vector<int> out(parent.size());
        std::unordered_map<int, int> label;
        count = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            auto [it, fresh] = label.emplace(find(static_cast<int>(i)), count);
            if (fresh) ++count;
            out[i] = it->second;
        }
        return out;
    }
};

std::unordered_map<Simplex, int, SimplexHash> positions(const std::vector<Simplex>& v) {
    std::unordered_map<Simplex, int, SimplexHash> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace(v[i], static_cast<int>(i));
    return out;
}

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

bool horn_in_mode(HornMode mode, int n, int k) {
    switch (mode) {
        case HornMode::inner: return 0 < k && k < n;
        case HornMode::kan: return true;
        case HornMode::left: return k < n;
        case HornMode::right: return k > 0;
    }
    return false;
}

HornWitness make_witness(int n, int k, const SimplicialMap& f) {
    HornWitness w{n, k, f, {}};
    const SimplicialSet& H = f.source();
    for (int d = 0; d <= H.top_dimension(); ++d)
        for (int i = 0; i < H.cell_count(d); ++i)
            w.assignments.emplace_back(H.name(d, i), f.target().describe(f.image(d, i)));
    return w;
}

void require_kan_through(const SimplicialSet& X, int d, HornMode mode, const std::string& what) {
    const HornReport r = classify(X, d, mode);
    if (!r.all_fillable())
        throw LiftingFailure(what + ": an unfillable " + to_string(mode) + " horn exists through dimension " +
                                 std::to_string(d),
                             *r.witness);
}

}  // namespace

std::string to_string(HornMode mode) {
    switch (mode) {
        case HornMode::inner: return "inner";
        case HornMode::kan: return "kan";
        case HornMode::left: return "left";
        case HornMode::right: return "right";
    }
    return "?";
}

bool HornReport::all_fillable() const {
    return std::all_of(counts.begin(), counts.end(), [](const HornCount& c) { return c.unfillable == 0; });
}

bool HornReport::unique_fillers() const {
    return std::all_of(counts.begin(), counts.end(), [](const HornCount& c) {
        return !(0 < c.k && c.k < c.n) || (c.unfillable == 0 && c.non_unique == 0);
    });
}

std::string HornReport::describe() const {
    std::ostringstream os;
    os << "horn filling (" << to_string(mode) << ") through dimension " << bound << ": "
       << (all_fillable() ? "all horns fill" : "unfillable horns found") << "\n";
    for (const auto& c : counts)
        os << "  Lambda[" << c.n << "," << c.k << "]: tested " << c.tested << ", unfillable " << c.unfillable
           << ", non-unique " << c.non_unique << "\n";
    if (witness) {
        os << "  witness Lambda[" << witness->n << "," << witness->k << "]:";
        for (const auto& [cell, img] : witness->assignments) os << " " << cell << "->" << img;
        os << "\n";
    }
    return os.str();
}

HornReport classify(const SimplicialSet& X, int d, HornMode mode) {
    if (d < 0) throw ArgumentError("classify: negative dimension bound");
    if (!X.known_through(d))
        throw ArgumentError("classify: truncation " + std::to_string(*X.truncation()) + " is below the bound " +
                            std::to_string(d));
    HornReport report;
    report.bound = d;
    report.mode = mode;
    for (int n = 1; n <= d; ++n)
        for (int k = 0; k <= n; ++k) {
            if (!horn_in_mode(mode, n, k)) continue;
            const SimplicialSet horn = standard_object(StandardKind::horn, n, k);
            const SimplicialMap inc = standard_inclusion(horn, n);
            HornCount count{n, k, 0, 0, 0};
            for_each_extension(map_from_empty(horn), map_from_empty(X), [&](const std::vector<std::vector<Simplex>>& images) {
                SimplicialMap f(SimplicialMap::Unchecked{}, horn, X, images);
                const std::size_t fillers = count_extensions(inc, f, 2);
                ++count.tested;
                if (fillers == 0) {
                    ++count.unfillable;
                    if (!report.witness) report.witness = make_witness(n, k, f);
                } else if (fillers > 1) {
                    ++count.non_unique;
                }
                return true;
            });
            report.counts.push_back(count);
        }
    return report;
}

EdgePartition homotopy_relation(const SimplicialSet& X, HomotopyConvention convention) {
    if (!X.known_through(2)) throw ArgumentError("homotopy_relation: needs simplices through dimension 2");
    const auto& edges = X.simplices(1);
    const auto pos = positions(edges);
    std::set<std::pair<int, int>> rel;
    for (const auto& u : X.simplices(2)) {
        const Simplex d0 = X.face(u, 0), d1 = X.face(u, 1), d2 = X.face(u, 2);
        if (convention == HomotopyConvention::degenerate_first_edge) {
            if (d2 == SimplicialSet::constant(d2.cell, 1) && d2.degenerate()) rel.emplace(pos.at(d0), pos.at(d1));
        } else {
            if (d0 == SimplicialSet::constant(d0.cell, 1) && d0.degenerate()) rel.emplace(pos.at(d2), pos.at(d1));
        }
    }
    UnionFind uf(edges.size());
    for (const auto& [a, b] : rel) uf.unite(a, b);
    EdgePartition out;
    out.class_of = uf.labels(out.class_count);
    std::vector<std::size_t> sizes(sz(out.class_count), 0);
    for (int c : out.class_of) ++sizes[sz(c)];
    std::size_t closure = 0;
    for (auto s : sizes) closure += s * s;
    out.relation_is_equivalence = closure == rel.size();
    return out;
}

HomotopyCategory homotopy_category_data(const SimplicialSet& X) {
    if (!X.known_through(3)) throw ArgumentError("homotopy_category: needs simplices through dimension 3");
    require_kan_through(X, 3, HornMode::inner, "homotopy_category");
    const EdgePartition P = homotopy_relation(X);
    if (!P.relation_is_equivalence)
        throw InconsistencyError("homotopy_category: the homotopy relation on edges is not an equivalence relation");
    const auto& edges = X.simplices(1);
    const auto pos = positions(edges);
    const int m = P.class_count;
    std::vector<int> rep(sz(m), -1);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (rep[sz(P.class_of[e])] < 0) rep[sz(P.class_of[e])] = static_cast<int>(e);

    std::vector<std::string> objects;
    for (int v = 0; v < X.cell_count(0); ++v) objects.push_back(X.name(0, v));
    std::vector<ArrowSpec> arrows;
    std::set<std::string> used;
    for (int c = 0; c < m; ++c) {
        const Simplex& e = edges[sz(rep[sz(c)])];
        std::string name = e.degenerate() ? "id_" + X.name(0, e.cell) : X.describe(e);
        while (!used.insert(name).second) name += "'";
        arrows.push_back({name, X.vertex(e, 0), X.vertex(e, 1)});
    }
    std::vector<int> ids;
    for (int v = 0; v < X.cell_count(0); ++v) ids.push_back(P.class_of[sz(pos.at(SimplicialSet::constant(v, 1)))]);

    std::vector<std::vector<int>> table(sz(m), std::vector<int>(sz(m), -1));
    for (const auto& u : X.simplices(2)) {
        const int f = P.class_of[sz(pos.at(X.face(u, 2)))];
        const int g = P.class_of[sz(pos.at(X.face(u, 0)))];
        const int h = P.class_of[sz(pos.at(X.face(u, 1)))];
        int& slot = table[sz(g)][sz(f)];
        if (slot >= 0 && slot != h)
            throw InconsistencyError("homotopy_category: composite of " + arrows[sz(g)].name + " and " +
                                     arrows[sz(f)].name + " depends on the chosen filler");
        slot = h;
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (arrows[sz(f)].target == arrows[sz(g)].source && table[sz(g)][sz(f)] < 0)
                throw InconsistencyError("homotopy_category: no filler composes " + arrows[sz(g)].name + " after " +
                                         arrows[sz(f)].name);
    HomotopyCategory out{FinCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(table)), P.class_of};
    return out;
}

FinCategory homotopy_category(const SimplicialSet& X) { return homotopy_category_data(X).category; }

std::vector<Simplex> equivalences(const SimplicialSet& X) {
    const HomotopyCategory H = homotopy_category_data(X);
    const auto& edges = X.simplices(1);
    std::vector<Simplex> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (H.category.is_iso(H.arrow_of_edge[e])) out.push_back(edges[e]);
    return out;
}

Subobject max_kan_subset(const SimplicialSet& X) {
    const auto eq = equivalences(X);
    const std::set<Simplex> eqset(eq.begin(), eq.end());
    std::vector<std::vector<bool>> keep(sz(std::max(X.top_dimension() + 1, 0)));
    for (int k = 0; k <= X.top_dimension(); ++k)
        for (int i = 0; i < X.cell_count(k); ++i) {
            bool ok = true;
            const Simplex c = SimplicialSet::cell(k, i);
            for (int p = 0; p < k && ok; ++p)
                for (int q = p + 1; q <= k && ok; ++q)
                    ok = eqset.count(X.restrict_to(c, (1u << p) | (1u << q))) > 0;
            keep[sz(k)].push_back(ok);
        }
    return subobject(X, keep);
}

SimplicialSet hom_space(const SimplicialSet& X, int x, int y, HomSide side, int d) {
    if (side == HomSide::left) return opposite(hom_space(opposite(X), y, x, HomSide::right, d));
    if (d < 0) throw ArgumentError("hom_space: negative dimension");
    if (!X.known_through(d + 1))
        throw ArgumentError("hom_space: needs simplices of X through dimension " + std::to_string(d + 1));
    if (x < 0 || y < 0 || x >= X.cell_count(0) || y >= X.cell_count(0)) throw ArgumentError("hom_space: unknown vertex");
    SimplicialSet::Builder b(d);
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index(sz(d) + 1);
    for (int n = 0; n <= d; ++n) {
        const std::uint32_t low_bits = (1u << n) - 1u;
        const Simplex base = SimplicialSet::constant(x, n);
        for (const auto& h : X.simplices(n + 1)) {
            if (h.degen & low_bits) continue;
            if (X.vertex(h, n + 1) != y) continue;
            if (X.face(h, n + 1) != base) continue;
            std::vector<Simplex> faces;
            for (int i = 0; n > 0 && i <= n; ++i) {
                const Simplex f = X.face(h, i);
                const std::uint32_t low = f.degen & ((1u << (n - 1)) - 1u);
                const Simplex core{f.dim - std::popcount(low), remove_positions(f.degen, low), f.cell};
                const int hom_dim = n - 1 - std::popcount(low);
                faces.push_back(Simplex{n - 1, low, index[sz(hom_dim)].at(core)});
            }
            index[sz(n)][h] = b.add_cell(n, X.describe(h), std::move(faces));
        }
    }
    return b.build();
}

std::string GroupPresentation::describe() const {
    std::ostringstream os;
    switch (tag) {
        case Tag::trivial: os << "trivial group"; break;
        case Tag::cyclic: os << "cyclic of order " << cyclic_order; break;
        case Tag::symmetric3: os << "symmetric group on 3 letters (order 6, nonabelian)"; break;
        case Tag::unrecognized:
            os << "group of order " << order << (abelian ? ", abelian" : ", nonabelian") << " (unrecognized)";
            break;
    }
    return os.str();
}

GroupPresentation group_from_table(std::vector<std::vector<int>> table, std::vector<std::string> names, int identity) {
    const int m = static_cast<int>(table.size());
    if (m == 0 || static_cast<int>(names.size()) != m) throw ArgumentError("group_from_table: empty or mislabeled table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != m) throw InconsistencyError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= m) throw InconsistencyError("group table has an undefined product");
    }
    for (int a = 0; a < m; ++a)
        if (table[sz(identity)][sz(a)] != a || table[sz(a)][sz(identity)] != a)
            throw InconsistencyError("group table: identity law fails");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (table[sz(table[sz(a)][sz(b)])][sz(c)] != table[sz(a)][sz(table[sz(b)][sz(c)])])
                    throw InconsistencyError("group table: multiplication is not associative");
    for (int a = 0; a < m; ++a) {
        bool inv = false;
        for (int b = 0; b < m && !inv; ++b) inv = table[sz(a)][sz(b)] == identity && table[sz(b)][sz(a)] == identity;
        if (!inv) throw InconsistencyError("group table: element " + names[sz(a)] + " has no inverse");
    }
    GroupPresentation g;
    g.generators = std::move(names);
    g.identity = identity;
    g.order = m;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (table[sz(a)][sz(b)] != table[sz(b)][sz(a)]) g.abelian = false;
            g.relations.push_back({{a, 1}, {b, 1}, {table[sz(a)][sz(b)], -1}});
        }
    int max_order = 1;
    for (int a = 0; a < m; ++a) {
        int o = 1;
        for (int p = a; p != identity; p = table[sz(p)][sz(a)]) ++o;
        max_order = std::max(max_order, a == identity ? 1 : o);
    }
    if (m == 1) {
        g.tag = GroupPresentation::Tag::trivial;
        g.cyclic_order = 1;
    } else if (max_order == m) {
        g.tag = GroupPresentation::Tag::cyclic;
        g.cyclic_order = m;
    } else if (m == 6 && !g.abelian) {
        g.tag = GroupPresentation::Tag::symmetric3;
    }
    g.table = std::move(table);
    return g;
}

std::variant<SetReport, GroupPresentation> homotopy_group(const SimplicialSet& X, int x, int n,
                                                          const HomotopyGroupOptions& options) {
    if (n < 0) throw ArgumentError("homotopy_group: negative degree");
    if (x < 0 || x >= X.cell_count(0)) throw ArgumentError("homotopy_group: unknown base vertex");
    if (!X.known_through(n + 2))
        throw ArgumentError("homotopy_group: needs simplices through dimension " + std::to_string(n + 2));
    require_kan_through(X, n + 2, HornMode::kan, "homotopy_group");

    if (n == 0) {
        UnionFind uf(sz(X.cell_count(0)));
        for (int e = 0; e < X.cell_count(1); ++e) {
            const auto& f = X.faces(1, e);
            uf.unite(f[0].cell, f[1].cell);
        }
        int count = 0;
        const auto labels = uf.labels(count);
        SetReport r;
        r.classes.resize(sz(count));
        for (int v = 0; v < X.cell_count(0); ++v) r.classes[sz(labels[sz(v)])].push_back(v);
        r.class_of_basepoint = labels[sz(x)];
        return r;
    }

    const Simplex point_n = SimplicialSet::constant(x, n);
    const Simplex point_low = SimplicialSet::constant(x, n - 1);
    std::vector<Simplex> loops;
    for (const auto& s : X.simplices(n)) {
        bool ok = true;
        for (int i = 0; i <= n && ok; ++i) ok = X.face(s, i) == point_low;
        if (ok) loops.push_back(s);
    }
    const auto pos = positions(loops);
    const auto& candidates = X.simplices(n + 1);
    if (candidates.size() > options.budget)
        throw UnsupportedInput("homotopy_group: " + std::to_string(candidates.size()) +
                               " candidate simplices exceed the budget of " + std::to_string(options.budget));
    std::vector<const Simplex*> at_x;
    for (const auto& w : candidates) {
        bool ok = true;
        for (int v = 0; v <= n + 1 && ok; ++v) ok = X.vertex(w, v) == x;
        if (ok) at_x.push_back(&w);
    }
    UnionFind uf(loops.size());
    for (const Simplex* w : at_x) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = X.face(*w, i) == point_n;
        if (!ok) continue;
        auto a = pos.find(X.face(*w, n));
        auto b = pos.find(X.face(*w, n + 1));
        if (a != pos.end() && b != pos.end()) uf.unite(a->second, b->second);
    }
    int m = 0;
    const auto labels = uf.labels(m);
    std::vector<std::vector<int>> table(sz(m), std::vector<int>(sz(m), -1));
    // n = 1: a . b = d1 w with d2 w = a, d0 w = b. n >= 2: d_{n-1} w = a, d_{n+1} w = b, product d_n w.
    const int ia = n == 1 ? 2 : n - 1;
    const int ib = n == 1 ? 0 : n + 1;
    const int ip = n == 1 ? 1 : n;
    for (const Simplex* w : at_x) {
        bool ok = true;
        for (int i = 0; i < n - 1 && ok; ++i) ok = X.face(*w, i) == point_n;
        if (!ok) continue;
        auto a = pos.find(X.face(*w, ia));
        auto b = pos.find(X.face(*w, ib));
        auto p = pos.find(X.face(*w, ip));
        if (a == pos.end() || b == pos.end() || p == pos.end()) continue;
        int& slot = table[sz(labels[sz(a->second)])][sz(labels[sz(b->second)])];
        const int val = labels[sz(p->second)];
        if (slot >= 0 && slot != val) throw InconsistencyError("homotopy_group: product depends on the chosen filler");
        slot = val;
    }
    std::vector<std::string> names(sz(m));
    for (std::size_t i = loops.size(); i-- > 0;) names[sz(labels[i])] = X.describe(loops[i]);
    return group_from_table(std::move(table), std::move(names), labels[sz(pos.at(point_n))]);
}

}  // namespace nw
