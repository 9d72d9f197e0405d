#include "nerveworks/category.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows, std::vector<int> identities,
                         std::vector<std::vector<int>> table)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), identities_(std::move(identities)), table_(std::move(table)) {
    const int n = object_count();
    const int A = arrow_count();
    if (static_cast<int>(identities_.size()) != n) throw ArgumentError("category: one identity per object required");
    if (static_cast<int>(table_.size()) != A) throw ArgumentError("category: composition table has the wrong size");
    for (const auto& a : arrows_)
        if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
            throw ArgumentError("category: arrow '" + a.name + "' has an unknown endpoint");
    {
        std::set<std::string> seen;
        for (const auto& o : objects_)
            if (!seen.insert(o).second) throw ArgumentError("category: duplicate object '" + o + "'");
        seen.clear();
        for (const auto& a : arrows_)
            if (!seen.insert(a.name).second) throw ArgumentError("category: duplicate arrow '" + a.name + "'");
    }
    for (int x = 0; x < n; ++x) {
        const int i = identities_[sz(x)];
        if (i < 0 || i >= A || source(i) != x || target(i) != x)
            throw ArgumentError("category: identity of '" + objects_[sz(x)] + "' is not an endomorphism of it");
    }
    for (int g = 0; g < A; ++g) {
        if (static_cast<int>(table_[sz(g)].size()) != A) throw ArgumentError("category: composition table has the wrong size");
        for (int f = 0; f < A; ++f) {
            const int h = table_[sz(g)][sz(f)];
            if (target(f) != source(g)) {
                if (h != -1) throw ArgumentError("category: composite given for non-composable pair");
                continue;
            }
            if (h < 0 || h >= A)
                throw ArgumentError("category: missing composite " + arrow_name(g) + " o " + arrow_name(f));
            if (source(h) != source(f) || target(h) != target(g))
                throw ArgumentError("category: composite " + arrow_name(g) + " o " + arrow_name(f) + " has wrong endpoints");
        }
    }
    for (int f = 0; f < A; ++f) {
        if (table_[sz(identity(target(f)))][sz(f)] != f || table_[sz(f)][sz(identity(source(f)))] != f)
            throw ArgumentError("category: unit law fails for '" + arrow_name(f) + "'");
    }
    homs_.assign(sz(n * n), {});
    for (int a = 0; a < A; ++a) homs_[sz(source(a) * n + target(a))].push_back(a);
    // Associativity over composable triples.
    for (int f = 0; f < A; ++f)
        for (int y = 0; y < n; ++y)
            for (int g : homs_[sz(target(f) * n + y)])
                for (int z = 0; z < n; ++z)
                    for (int h : homs_[sz(y * n + z)]) {
                        const int gf = table_[sz(g)][sz(f)];
                        const int hg = table_[sz(h)][sz(g)];
                        if (table_[sz(h)][sz(gf)] != table_[sz(hg)][sz(f)])
                            throw ArgumentError("category: associativity fails on (" + arrow_name(h) + ", " +
                                                arrow_name(g) + ", " + arrow_name(f) + ")");
                    }
}

int FinCategory::compose(int g, int f) const {
    if (g < 0 || f < 0 || g >= arrow_count() || f >= arrow_count()) throw ArgumentError("compose: unknown arrow");
    const int h = try_compose(g, f);
    if (h < 0) throw ArgumentError("compose: " + arrow_name(g) + " o " + arrow_name(f) + " is not composable");
    return h;
}

const std::vector<int>& FinCategory::hom(int x, int y) const { return homs_[sz(x * object_count() + y)]; }

std::optional<int> FinCategory::find_object(const std::string& name) const {
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) return std::nullopt;
    return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCategory::find_arrow(const std::string& name) const {
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows_[sz(a)].name == name) return a;
    return std::nullopt;
}

std::optional<int> FinCategory::inverse(int a) const {
    for (int b : hom(target(a), source(a)))
        if (try_compose(b, a) == identity(source(a)) && try_compose(a, b) == identity(target(a))) return b;
    return std::nullopt;
}

bool FinCategory::is_groupoid() const {
    for (int a = 0; a < arrow_count(); ++a)
        if (!is_iso(a)) return false;
    return true;
}

FinCategory CategoryBuilder::build() const {
    const int n = static_cast<int>(objects.size());
    std::vector<ArrowSpec> all;
    std::vector<int> ids;
    for (int x = 0; x < n; ++x) {
        ids.push_back(x);
        all.push_back({"id_" + objects[sz(x)], x, x});
    }
    for (const auto& a : arrows) all.push_back(a);
    const int A = static_cast<int>(all.size());
    std::unordered_map<std::string, int> by_name;
    for (int a = 0; a < A; ++a)
        if (!by_name.emplace(all[sz(a)].name, a).second)
            throw ArgumentError("category: duplicate arrow '" + all[sz(a)].name + "'");
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int f = 0; f < A; ++f) {
        table[sz(ids[sz(all[sz(f)].target)])][sz(f)] = f;
        table[sz(f)][sz(ids[sz(all[sz(f)].source)])] = f;
    }
    auto lookup = [&](const std::string& nm) {
        auto it = by_name.find(nm);
        if (it == by_name.end()) throw ArgumentError("category: unknown arrow '" + nm + "' in composition table");
        return it->second;
    };
    for (const auto& c : compose) {
        const int g = lookup(c.g), f = lookup(c.f), h = lookup(c.result);
        if (all[sz(f)].target != all[sz(g)].source)
            throw ArgumentError("category: " + c.g + " o " + c.f + " is not composable");
        int& slot = table[sz(g)][sz(f)];
        if (slot != -1 && slot != h) throw ArgumentError("category: conflicting composites for " + c.g + " o " + c.f);
        slot = h;
    }
    return FinCategory(objects, std::move(all), std::move(ids), std::move(table));
}

// ---------------------------------------------------------------------------

Functor::Functor(FinCategory source, FinCategory target, std::vector<int> objects, std::vector<int> arrows)
    : source_(std::move(source)), target_(std::move(target)), objects_(std::move(objects)), arrows_(std::move(arrows)) {
    if (static_cast<int>(objects_.size()) != source_.object_count() ||
        static_cast<int>(arrows_.size()) != source_.arrow_count())
        throw ArgumentError("functor: map sizes do not match the source");
    for (int o : objects_)
        if (o < 0 || o >= target_.object_count()) throw ArgumentError("functor: object image out of range");
    for (int a = 0; a < source_.arrow_count(); ++a) {
        const int b = arrows_[sz(a)];
        if (b < 0 || b >= target_.arrow_count()) throw ArgumentError("functor: arrow image out of range");
        if (target_.source(b) != object(source_.source(a)) || target_.target(b) != object(source_.target(a)))
            throw ArgumentError("functor: '" + source_.arrow_name(a) + "' is sent to an arrow with wrong endpoints");
    }
    for (int x = 0; x < source_.object_count(); ++x)
        if (arrow(source_.identity(x)) != target_.identity(object(x)))
            throw ArgumentError("functor: identity of '" + source_.object_name(x) + "' not preserved");
    for (int g = 0; g < source_.arrow_count(); ++g)
        for (int f = 0; f < source_.arrow_count(); ++f) {
            const int h = source_.try_compose(g, f);
            if (h >= 0 && target_.try_compose(arrow(g), arrow(f)) != arrow(h))
                throw ArgumentError("functor: composite " + source_.arrow_name(g) + " o " + source_.arrow_name(f) +
                                    " not preserved");
        }
}

Functor compose(const Functor& g, const Functor& f) {
    std::vector<int> objs, arrs;
    for (int o : f.object_map()) objs.push_back(g.object(o));
    for (int a : f.arrow_map()) arrs.push_back(g.arrow(a));
    return Functor(Functor::Unchecked{}, f.source(), g.target(), std::move(objs), std::move(arrs));
}

Functor identity_functor(const FinCategory& C) {
    std::vector<int> objs(sz(C.object_count())), arrs(sz(C.arrow_count()));
    for (int x = 0; x < C.object_count(); ++x) objs[sz(x)] = x;
    for (int a = 0; a < C.arrow_count(); ++a) arrs[sz(a)] = a;
    return Functor(Functor::Unchecked{}, C, C, std::move(objs), std::move(arrs));
}

void RelativeCategory::validate(bool require_subcategory) const {
    if (static_cast<int>(weak.size()) != category.arrow_count())
        throw ArgumentError("relative category: weak flags do not match the arrows");
    for (int x = 0; x < category.object_count(); ++x)
        if (!weak[sz(category.identity(x))])
            throw ArgumentError("relative category: identity of '" + category.object_name(x) + "' is not weak");
    if (!require_subcategory) return;
    for (int g = 0; g < category.arrow_count(); ++g)
        for (int f = 0; f < category.arrow_count(); ++f) {
            const int h = category.try_compose(g, f);
            if (h >= 0 && weak[sz(g)] && weak[sz(f)] && !weak[sz(h)])
                throw ArgumentError("relative category: weak arrows not closed under composition");
        }
}

RelativeCategory RelativeCategory::with_weak(FinCategory C, const std::vector<int>& weak_arrows) {
    std::vector<bool> w(sz(C.arrow_count()), false);
    for (int x = 0; x < C.object_count(); ++x) w[sz(C.identity(x))] = true;
    for (int a : weak_arrows) {
        if (a < 0 || a >= C.arrow_count()) throw ArgumentError("relative category: unknown weak arrow");
        w[sz(a)] = true;
    }
    return {std::move(C), std::move(w)};
}

RelativeCategory RelativeCategory::minimal(FinCategory C) { return with_weak(std::move(C), {}); }

RelativeCategory RelativeCategory::isomorphisms(FinCategory C) {
    std::vector<int> isos;
    for (int a = 0; a < C.arrow_count(); ++a)
        if (C.is_iso(a)) isos.push_back(a);
    return with_weak(std::move(C), isos);
}

// ---------------------------------------------------------------------------

FinCategory preorder_category(const std::vector<std::string>& objects, const std::vector<std::vector<bool>>& leq) {
    const int n = static_cast<int>(objects.size());
    if (static_cast<int>(leq.size()) != n) throw ArgumentError("preorder: relation has the wrong size");
    for (int x = 0; x < n; ++x) {
        if (!leq[sz(x)][sz(x)]) throw ArgumentError("preorder: relation is not reflexive");
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (leq[sz(x)][sz(y)] && leq[sz(y)][sz(z)] && !leq[sz(x)][sz(z)])
                    throw ArgumentError("preorder: relation is not transitive");
    }
    std::vector<ArrowSpec> arrows;
    std::vector<int> ids(sz(n));
    std::vector<std::vector<int>> index(sz(n), std::vector<int>(sz(n), -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (leq[sz(x)][sz(y)]) {
                index[sz(x)][sz(y)] = static_cast<int>(arrows.size());
                arrows.push_back({x == y ? "id_" + objects[sz(x)] : objects[sz(x)] + "->" + objects[sz(y)], x, y});
                if (x == y) ids[sz(x)] = index[sz(x)][sz(y)];
            }
    const int A = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f)
            if (arrows[sz(f)].target == arrows[sz(g)].source)
                table[sz(g)][sz(f)] = index[sz(arrows[sz(f)].source)][sz(arrows[sz(g)].target)];
    return FinCategory(objects, std::move(arrows), std::move(ids), std::move(table));
}

FinCategory poset_category(int n) {
    if (n < 0) throw ArgumentError("poset_category: negative size");
    std::vector<std::string> objs;
    std::vector<std::vector<bool>> leq(sz(n + 1), std::vector<bool>(sz(n + 1)));
    for (int x = 0; x <= n; ++x) {
        objs.push_back(std::to_string(x));
        for (int y = 0; y <= n; ++y) leq[sz(x)][sz(y)] = x <= y;
    }
    return preorder_category(objs, leq);
}

FinCategory discrete_category(int n) {
    std::vector<std::string> objs;
    std::vector<std::vector<bool>> leq(sz(n), std::vector<bool>(sz(n)));
    for (int x = 0; x < n; ++x) {
        objs.push_back(std::to_string(x));
        leq[sz(x)][sz(x)] = true;
    }
    return preorder_category(objs, leq);
}

FinCategory terminal_category() { return poset_category(0); }

FinCategory bg(const std::vector<std::vector<int>>& table, std::vector<std::string> names) {
    const int m = static_cast<int>(table.size());
    if (m == 0) throw ArgumentError("bg: empty multiplication table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != m) throw ArgumentError("bg: table is not square");
        for (int v : row)
            if (v < 0 || v >= m) throw ArgumentError("bg: table entry out of range");
    }
    for (int a = 0; a < m; ++a)
        if (table[0][sz(a)] != a || table[sz(a)][0] != a) throw ArgumentError("bg: element 0 is not a unit");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (table[sz(table[sz(a)][sz(b)])][sz(c)] != table[sz(a)][sz(table[sz(b)][sz(c)])])
                    throw ArgumentError("bg: multiplication is not associative");
    if (names.empty()) {
        names.push_back("e");
        for (int a = 1; a < m; ++a) names.push_back("g" + std::to_string(a));
    }
    if (static_cast<int>(names.size()) != m) throw ArgumentError("bg: wrong number of element names");
    std::vector<ArrowSpec> arrows;
    for (int a = 0; a < m; ++a) arrows.push_back({names[sz(a)], 0, 0});
    return FinCategory({"*"}, std::move(arrows), {0}, table);
}

std::vector<std::vector<int>> cyclic_group_table(int n) {
    if (n < 1) throw ArgumentError("cyclic_group_table: order must be positive");
    std::vector<std::vector<int>> t(sz(n), std::vector<int>(sz(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[sz(a)][sz(b)] = (a + b) % n;
    return t;
}

std::vector<std::vector<int>> symmetric3_table() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (std::size_t x = 0; x < 3; ++x) c[x] = perms[a][sz(perms[b][x])];
            t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

FinCategory product(const FinCategory& C, const FinCategory& D) {
    const int nC = C.object_count(), nD = D.object_count(), aC = C.arrow_count(), aD = D.arrow_count();
    std::vector<std::string> objs;
    for (int x = 0; x < nC; ++x)
        for (int y = 0; y < nD; ++y) objs.push_back("(" + C.object_name(x) + "," + D.object_name(y) + ")");
    std::vector<ArrowSpec> arrows;
    for (int a = 0; a < aC; ++a)
        for (int b = 0; b < aD; ++b)
            arrows.push_back({"(" + C.arrow_name(a) + "," + D.arrow_name(b) + ")", C.source(a) * nD + D.source(b),
                              C.target(a) * nD + D.target(b)});
    std::vector<int> ids;
    for (int x = 0; x < nC; ++x)
        for (int y = 0; y < nD; ++y) ids.push_back(C.identity(x) * aD + D.identity(y));
    const int A = aC * aD;
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) {
            const int c = C.try_compose(g / aD, f / aD);
            const int d = D.try_compose(g % aD, f % aD);
            if (c >= 0 && d >= 0) table[sz(g)][sz(f)] = c * aD + d;
        }
    return FinCategory(std::move(objs), std::move(arrows), std::move(ids), std::move(table));
}

FinCategory opposite(const FinCategory& C) {
    std::vector<ArrowSpec> arrows;
    for (const auto& a : C.arrows()) arrows.push_back({a.name, a.target, a.source});
    std::vector<int> ids;
    for (int x = 0; x < C.object_count(); ++x) ids.push_back(C.identity(x));
    const int A = C.arrow_count();
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) table[sz(g)][sz(f)] = C.try_compose(f, g);
    return FinCategory(C.object_names(), std::move(arrows), std::move(ids), std::move(table));
}

FinCategory subcategory(const FinCategory& C, const std::vector<bool>& keep) {
    if (static_cast<int>(keep.size()) != C.arrow_count()) throw ArgumentError("subcategory: flags do not match arrows");
    std::vector<int> obj_new(sz(C.object_count()), -1);
    std::vector<std::string> objs;
    std::vector<int> ids;
    for (int x = 0; x < C.object_count(); ++x)
        if (keep[sz(C.identity(x))]) {
            obj_new[sz(x)] = static_cast<int>(objs.size());
            objs.push_back(C.object_name(x));
        }
    std::vector<int> arr_new(sz(C.arrow_count()), -1);
    std::vector<ArrowSpec> arrows;
    for (int a = 0; a < C.arrow_count(); ++a) {
        if (!keep[sz(a)]) continue;
        if (obj_new[sz(C.source(a))] < 0 || obj_new[sz(C.target(a))] < 0)
            throw ArgumentError("subcategory: arrow '" + C.arrow_name(a) + "' has an endpoint outside");
        arr_new[sz(a)] = static_cast<int>(arrows.size());
        arrows.push_back({C.arrow_name(a), obj_new[sz(C.source(a))], obj_new[sz(C.target(a))]});
    }
    for (int x = 0; x < C.object_count(); ++x)
        if (obj_new[sz(x)] >= 0) ids.push_back(arr_new[sz(C.identity(x))]);
    const int A = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < C.arrow_count(); ++g)
        for (int f = 0; f < C.arrow_count(); ++f) {
            if (arr_new[sz(g)] < 0 || arr_new[sz(f)] < 0) continue;
            const int h = C.try_compose(g, f);
            if (h < 0) continue;
            if (arr_new[sz(h)] < 0) throw ArgumentError("subcategory: kept arrows are not closed under composition");
            table[sz(arr_new[sz(g)])][sz(arr_new[sz(f)])] = arr_new[sz(h)];
        }
    return FinCategory(std::move(objs), std::move(arrows), std::move(ids), std::move(table));
}

FinCategory max_subgroupoid(const FinCategory& C) {
    std::vector<bool> keep(sz(C.arrow_count()));
    for (int a = 0; a < C.arrow_count(); ++a) keep[sz(a)] = C.is_iso(a);
    return subcategory(C, keep);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> non_identity_arrows(const FinCategory& C) {
    std::vector<int> out;
    for (int a = 0; a < C.arrow_count(); ++a)
        if (!C.is_identity(a)) out.push_back(a);
    return out;
}

}  // namespace

SimplicialSet nerve(const FinCategory& C, int d) {
    if (d < 0) throw ArgumentError("nerve: negative truncation");
    SimplicialSet::Builder b(d);
    const auto nonid = non_identity_arrows(C);
    std::vector<int> edge_of(sz(C.arrow_count()), -1);
    for (std::size_t j = 0; j < nonid.size(); ++j) edge_of[sz(nonid[j])] = static_cast<int>(j);
    std::vector<std::map<std::vector<int>, int>> index(sz(d) + 1);
    for (int x = 0; x < C.object_count(); ++x) b.add_cell(0, C.object_name(x));

    // A composable chain with identity links, as a simplex in normal form.
    auto simplex_of = [&](int start, const std::vector<int>& chain) {
        const int k = static_cast<int>(chain.size());
        std::uint32_t mask = 0;
        std::vector<int> core;
        for (int p = 0; p < k; ++p) {
            if (C.is_identity(chain[sz(p)])) mask |= (1u << p);
            else core.push_back(chain[sz(p)]);
        }
        if (core.empty()) return SimplicialSet::constant(start, k);
        return Simplex{k, mask, index[core.size()].at(core)};
    };

    std::vector<std::vector<int>> level;
    for (int a : nonid) level.push_back({a});
    for (int k = 1; k <= d && !level.empty(); ++k) {
        for (const auto& chain : level) {
            std::vector<Simplex> faces;
            if (k == 1) {
                faces = {SimplicialSet::cell(0, C.target(chain[0])), SimplicialSet::cell(0, C.source(chain[0]))};
            } else {
                for (int i = 0; i <= k; ++i) {
                    std::vector<int> f;
                    int start = C.source(chain[0]);
                    if (i == 0) {
                        f.assign(chain.begin() + 1, chain.end());
                        start = C.target(chain[0]);
                    } else if (i == k) {
                        f.assign(chain.begin(), chain.end() - 1);
                    } else {
                        for (int p = 0; p < k; ++p) {
                            if (p == i - 1) f.push_back(C.compose(chain[sz(i)], chain[sz(i - 1)]));
                            else if (p != i) f.push_back(chain[sz(p)]);
                        }
                    }
                    faces.push_back(simplex_of(start, f));
                }
            }
            std::string name;
            for (std::size_t p = 0; p < chain.size(); ++p) name += (p ? "|" : "") + C.arrow_name(chain[p]);
            index[sz(k)][chain] = b.add_cell(k, name, std::move(faces));
        }
        if (k == d) break;
        std::vector<std::vector<int>> next;
        for (const auto& chain : level)
            for (int a : nonid)
                if (C.source(a) == C.target(chain.back())) {
                    auto c = chain;
                    c.push_back(a);
                    next.push_back(std::move(c));
                }
        level = std::move(next);
    }
    return b.build();
}

std::vector<int> nerve_chain(const FinCategory& C, const SimplicialSet& N, const Simplex& s) {
    const auto nonid = non_identity_arrows(C);
    if (s.dim == 0) return {C.identity(s.cell)};
    std::vector<int> chain;
    for (int p = 0; p < s.dim; ++p) {
        const Simplex e = N.restrict_to(s, (1u << p) | (1u << (p + 1)));
        chain.push_back(e.degenerate() ? C.identity(e.cell) : nonid[sz(e.cell)]);
    }
    return chain;
}

Simplex nerve_simplex(const FinCategory& C, const SimplicialSet& N, const std::vector<int>& chain) {
    if (chain.empty()) throw ArgumentError("nerve_simplex: empty chain");
    for (std::size_t p = 1; p < chain.size(); ++p)
        if (C.target(chain[p - 1]) != C.source(chain[p])) throw ArgumentError("nerve_simplex: chain is not composable");
    const int k = static_cast<int>(chain.size());
    if (k == 1 && C.is_identity(chain[0])) {
        // A lone identity names either a vertex (as a 0-chain) or a degenerate edge; callers use dimension 1.
        return SimplicialSet::constant(C.source(chain[0]), 1);
    }
    std::uint32_t mask = 0;
    std::vector<int> core;
    for (int p = 0; p < k; ++p) {
        if (C.is_identity(chain[sz(p)])) mask |= (1u << p);
        else core.push_back(chain[sz(p)]);
    }
    if (core.empty()) return SimplicialSet::constant(C.source(chain[0]), k);
    const int m = static_cast<int>(core.size());
    if (!N.known_through(m)) throw ArgumentError("nerve_simplex: chain longer than the truncation");
    Simplex cell;
    if (m == 1) {
        const auto nonid = non_identity_arrows(C);
        cell = Simplex{1, 0, static_cast<int>(std::find(nonid.begin(), nonid.end(), core[0]) - nonid.begin())};
    } else {
        std::vector<int> first(core.begin(), core.end() - 1), last(core.begin() + 1, core.end());
        std::vector<Simplex> bd;
        for (int i = 0; i <= m; ++i) {
            std::vector<int> f;
            if (i == 0) f = last;
            else if (i == m) f = first;
            else
                for (int p = 0; p < m; ++p) {
                    if (p == i - 1) f.push_back(C.compose(core[sz(i)], core[sz(i - 1)]));
                    else if (p != i) f.push_back(core[sz(p)]);
                }
            bd.push_back(nerve_simplex(C, N, f));
        }
        bool found = false;
        for (const auto& s : N.with_boundary(m, bd))
            if (!s.degenerate()) {
                cell = s;
                found = true;
                break;
            }
        if (!found) throw InconsistencyError("nerve_simplex: simplicial set is not the nerve of this category");
    }
    return Simplex{k, mask, cell.cell};
}

SimplicialMap nerve_map(const Functor& F, const SimplicialSet& NC, const SimplicialSet& ND) {
    const FinCategory& C = F.source();
    const FinCategory& D = F.target();
    std::vector<std::vector<Simplex>> images(sz(std::max(NC.top_dimension() + 1, 0)));
    for (int k = 0; k <= NC.top_dimension(); ++k)
        for (int i = 0; i < NC.cell_count(k); ++i) {
            if (k == 0) {
                images[0].push_back(SimplicialSet::cell(0, F.object(i)));
                continue;
            }
            std::vector<int> chain;
            for (int a : nerve_chain(C, NC, SimplicialSet::cell(k, i))) chain.push_back(F.arrow(a));
            images[sz(k)].push_back(nerve_simplex(D, ND, chain));
        }
    return SimplicialMap(NC, ND, std::move(images));
}

// ---------------------------------------------------------------------------

namespace {

void search_functors(const FinCategory& C, const FinCategory& D, bool bijective,
                     const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& visit) {
    const int nC = C.object_count(), nD = D.object_count();
    if (bijective && (nC != nD || C.arrow_count() != D.arrow_count())) return;
    const auto nonid = non_identity_arrows(C);
    // Composition constraints, bucketed by the position of their last assigned arrow.
    std::vector<int> pos(sz(C.arrow_count()), -1);
    for (std::size_t j = 0; j < nonid.size(); ++j) pos[sz(nonid[j])] = static_cast<int>(j);
    std::vector<std::vector<std::array<int, 3>>> checks(nonid.size());
    for (int g : nonid)
        for (int f : nonid) {
            const int h = C.try_compose(g, f);
            if (h < 0) continue;
            const int last = std::max({pos[sz(g)], pos[sz(f)], pos[sz(h)]});
            checks[sz(last)].push_back({g, f, h});
        }
    std::vector<int> objs(sz(nC), -1), arrs(sz(C.arrow_count()), -1);
    std::vector<bool> used_obj(sz(nD), false), used_arr(sz(D.arrow_count()), false);
    bool stop = false;

    std::function<void(std::size_t)> arrow_step = [&](std::size_t j) {
        if (stop) return;
        if (j == nonid.size()) {
            if (!visit(objs, arrs)) stop = true;
            return;
        }
        const int a = nonid[j];
        for (int b : D.hom(objs[sz(C.source(a))], objs[sz(C.target(a))])) {
            if (bijective && (used_arr[sz(b)] || D.is_identity(b))) continue;
            arrs[sz(a)] = b;
            bool ok = true;
            for (const auto& [g, f, h] : checks[j])
                if (D.try_compose(arrs[sz(g)], arrs[sz(f)]) != arrs[sz(h)]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            if (bijective) used_arr[sz(b)] = true;
            arrow_step(j + 1);
            if (bijective) used_arr[sz(b)] = false;
            if (stop) return;
        }
        arrs[sz(a)] = -1;
    };
    std::function<void(int)> object_step = [&](int x) {
        if (stop) return;
        if (x == nC) {
            for (int y = 0; y < nC; ++y) arrs[sz(C.identity(y))] = D.identity(objs[sz(y)]);
            // Identity composites with non-identities are automatic; endomorphism images are checked in arrow_step.
            arrow_step(0);
            return;
        }
        for (int y = 0; y < nD; ++y) {
            if (bijective && used_obj[sz(y)]) continue;
            objs[sz(x)] = y;
            used_obj[sz(y)] = true;
            object_step(x + 1);
            used_obj[sz(y)] = false;
            if (stop) return;
        }
    };
    object_step(0);
}

}  // namespace

std::vector<Functor> all_functors(const FinCategory& C, const FinCategory& D, std::size_t limit) {
    std::vector<Functor> out;
    if (limit == 0) throw ArgumentError("all_functors: limit must be positive");
    search_functors(C, D, false, [&](const std::vector<int>& o, const std::vector<int>& a) {
        out.emplace_back(Functor::Unchecked{}, C, D, o, a);
        return out.size() < limit;
    });
    return out;
}

std::optional<Functor> find_isomorphism(const FinCategory& C, const FinCategory& D) {
    std::optional<Functor> out;
    search_functors(C, D, true, [&](const std::vector<int>& o, const std::vector<int>& a) {
        out.emplace(Functor::Unchecked{}, C, D, o, a);
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Localization by Knuth-Bendix completion on composable words.

namespace {

using Word = std::vector<int>;

struct Rule {
    Word lhs, rhs;
};

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

struct RewriteSystem {
    std::vector<Rule> rules;

    std::optional<std::size_t> match_at(const Word& w, std::size_t pos, const Word& l) const {
        if (pos + l.size() > w.size()) return std::nullopt;
        for (std::size_t i = 0; i < l.size(); ++i)
            if (w[pos + i] != l[i]) return std::nullopt;
        return pos;
    }

    Word reduce(Word w) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t pos = 0; pos < w.size() && !changed; ++pos)
                for (const auto& r : rules)
                    if (match_at(w, pos, r.lhs)) {
                        Word out(w.begin(), w.begin() + static_cast<long>(pos));
                        out.insert(out.end(), r.rhs.begin(), r.rhs.end());
                        out.insert(out.end(), w.begin() + static_cast<long>(pos + r.lhs.size()), w.end());
                        w = std::move(out);
                        changed = true;
                        break;
                    }
        }
        return w;
    }

    bool has_suffix_redex(const Word& w) const {
        for (const auto& r : rules)
            if (r.lhs.size() <= w.size() && std::equal(r.lhs.begin(), r.lhs.end(), w.end() - static_cast<long>(r.lhs.size())))
                return true;
        return false;
    }

    /// Adds a == b (after reduction) as an oriented rule; returns whether something new was learned.
    bool add_equation(const Word& a0, const Word& b0) {
        Word a = reduce(a0), b = reduce(b0);
        if (a == b) return false;
        if (shortlex_less(a, b)) std::swap(a, b);
        rules.push_back({std::move(a), std::move(b)});
        return true;
    }

    void interreduce() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < rules.size(); ++i) {
                RewriteSystem others;
                for (std::size_t j = 0; j < rules.size(); ++j)
                    if (j != i) others.rules.push_back(rules[j]);
                const Word l = others.reduce(rules[i].lhs);
                if (l != rules[i].lhs) {
                    const Word r = others.reduce(rules[i].rhs);
                    rules.erase(rules.begin() + static_cast<long>(i));
                    if (l != r) {
                        Word a = l, b = r;
                        if (shortlex_less(a, b)) std::swap(a, b);
                        rules.push_back({a, b});
                    }
                    changed = true;
                    break;
                }
                rules[i].rhs = others.reduce(rules[i].rhs);
            }
        }
    }
};

constexpr std::size_t kMaxRules = 4000;
constexpr std::size_t kMaxNormalForms = 20000;

}  // namespace

std::variant<Localization, FuelExhausted> localize(const RelativeCategory& R, int fuel) {
    if (fuel <= 0) throw ArgumentError("localize: fuel must be positive");
    R.validate();
    const FinCategory& C = R.category;
    const int A = C.arrow_count();
    // Letters: non-identity arrows of C, then formal inverses of non-identity weak arrows.
    std::vector<int> letter_of(sz(A), -1), inverse_letter(sz(A), -1);
    struct Letter {
        int src, dst;
        std::string name;
    };
    std::vector<Letter> letters;
    for (int a = 0; a < A; ++a)
        if (!C.is_identity(a)) {
            letter_of[sz(a)] = static_cast<int>(letters.size());
            letters.push_back({C.source(a), C.target(a), C.arrow_name(a)});
        }
    std::vector<int> arrow_of_letter(letters.size());
    for (int a = 0; a < A; ++a)
        if (letter_of[sz(a)] >= 0) arrow_of_letter[sz(letter_of[sz(a)])] = a;
    for (int a = 0; a < A; ++a)
        if (R.weak[sz(a)] && !C.is_identity(a)) {
            inverse_letter[sz(a)] = static_cast<int>(letters.size());
            letters.push_back({C.target(a), C.source(a), C.arrow_name(a) + "^-1"});
        }

    RewriteSystem rs;
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) {
            if (letter_of[sz(g)] < 0 || letter_of[sz(f)] < 0) continue;
            const int h = C.try_compose(g, f);
            if (h < 0) continue;
            Word rhs = C.is_identity(h) ? Word{} : Word{letter_of[sz(h)]};
            rs.rules.push_back({{letter_of[sz(f)], letter_of[sz(g)]}, rhs});
        }
    for (int a = 0; a < A; ++a)
        if (inverse_letter[sz(a)] >= 0) {
            rs.rules.push_back({{letter_of[sz(a)], inverse_letter[sz(a)]}, {}});
            rs.rules.push_back({{inverse_letter[sz(a)], letter_of[sz(a)]}, {}});
        }
    rs.interreduce();

    int rounds = 0;
    for (;;) {
        if (rounds == fuel) return FuelExhausted{rounds, "rewriting system not confluent within the fuel"};
        ++rounds;
        const std::vector<Rule> snapshot = rs.rules;
        bool learned = false;
        for (std::size_t i = 0; i < snapshot.size(); ++i)
            for (std::size_t j = 0; j < snapshot.size(); ++j) {
                const Word& l1 = snapshot[i].lhs;
                const Word& l2 = snapshot[j].lhs;
                // Proper overlaps: suffix of l1 equals prefix of l2.
                for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
                    if (!std::equal(l1.end() - static_cast<long>(k), l1.end(), l2.begin())) continue;
                    Word a = snapshot[i].rhs;
                    a.insert(a.end(), l2.begin() + static_cast<long>(k), l2.end());
                    Word b(l1.begin(), l1.end() - static_cast<long>(k));
                    b.insert(b.end(), snapshot[j].rhs.begin(), snapshot[j].rhs.end());
                    learned |= rs.add_equation(a, b);
                }
                // Containment of l2 inside l1.
                if (i != j && l2.size() <= l1.size())
                    for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
                        if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(p))) continue;
                        Word b(l1.begin(), l1.begin() + static_cast<long>(p));
                        b.insert(b.end(), snapshot[j].rhs.begin(), snapshot[j].rhs.end());
                        b.insert(b.end(), l1.begin() + static_cast<long>(p + l2.size()), l1.end());
                        learned |= rs.add_equation(snapshot[i].rhs, b);
                    }
                if (rs.rules.size() > kMaxRules) return FuelExhausted{rounds, "rewriting system grew beyond the rule cap"};
            }
        rs.interreduce();
        if (!learned) break;
    }

    // Enumerate irreducible words; a long enough irreducible word can be pumped, so the quotient is infinite.
    std::size_t max_lhs = 2;
    for (const auto& r : rs.rules) max_lhs = std::max(max_lhs, r.lhs.size());
    const int n = C.object_count();
    struct Normal {
        int src, dst;
        Word w;
    };
    std::vector<Normal> normals;
    std::vector<Normal> frontier;
    for (int x = 0; x < n; ++x) frontier.push_back({x, x, {}});
    std::size_t windows = 0;
    for (std::size_t len = 0; !frontier.empty(); ++len) {
        if (len == max_lhs - 1) windows = frontier.size();
        if (len >= max_lhs - 1 && len > max_lhs - 1 + windows)
            return FuelExhausted{rounds, "localization is infinite (irreducible words can be pumped)"};
        std::vector<Normal> next;
        for (auto& nf : frontier) {
            for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
                if (letters[sz(l)].src != nf.dst) continue;
                Word w = nf.w;
                w.push_back(l);
                if (rs.has_suffix_redex(w)) continue;
                next.push_back({nf.src, letters[sz(l)].dst, std::move(w)});
            }
            normals.push_back(std::move(nf));
        }
        if (normals.size() + next.size() > kMaxNormalForms)
            return FuelExhausted{rounds, "too many normal forms"};
        frontier = std::move(next);
    }

    std::map<std::pair<int, Word>, int> index;
    std::vector<ArrowSpec> arrows;
    std::vector<int> ids(sz(n), -1);
    for (const auto& nf : normals) {
        std::string name;
        if (nf.w.empty()) name = "id_" + C.object_name(nf.src);
        else
            for (std::size_t p = 0; p < nf.w.size(); ++p) name += (p ? ";" : "") + letters[sz(nf.w[p])].name;
        index[{nf.src, nf.w}] = static_cast<int>(arrows.size());
        if (nf.w.empty()) ids[sz(nf.src)] = static_cast<int>(arrows.size());
        arrows.push_back({name, nf.src, nf.dst});
    }
    const int M = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(M), std::vector<int>(sz(M), -1));
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            if (arrows[sz(f)].target != arrows[sz(g)].source) continue;
            Word w = normals[sz(f)].w;
            w.insert(w.end(), normals[sz(g)].w.begin(), normals[sz(g)].w.end());
            table[sz(g)][sz(f)] = index.at({arrows[sz(f)].source, rs.reduce(w)});
        }
    FinCategory L(C.object_names(), std::move(arrows), std::move(ids), std::move(table));
    std::vector<int> objs(sz(n)), arrs(sz(A));
    for (int x = 0; x < n; ++x) objs[sz(x)] = x;
    for (int a = 0; a < A; ++a) {
        const Word w = C.is_identity(a) ? Word{} : rs.reduce(Word{letter_of[sz(a)]});
        arrs[sz(a)] = index.at({C.source(a), w});
    }
    Functor unit(C, L, std::move(objs), std::move(arrs));
    return Localization{std::move(L), std::move(unit), rounds};
}

std::string describe(const FinCategory& C) {
    std::ostringstream os;
    os << C.object_count() << " objects, " << C.arrow_count() << " arrows\n";
    for (int a = 0; a < C.arrow_count(); ++a)
        os << "  " << C.arrow_name(a) << ": " << C.object_name(C.source(a)) << " -> " << C.object_name(C.target(a)) << "\n";
    return os.str();
}

}  // namespace nw
