#include "nerveworks/fibrations.hpp"

#include <map>
#include <random>
#include <tuple>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

/// Arrows of D with the given source.
std::vector<int> arrows_from(const FinCategory& D, int x) {
    std::vector<int> out;
    for (int a = 0; a < D.arrow_count(); ++a)
        if (D.source(a) == x) out.push_back(a);
    return out;
}

/// Number of gamma : y -> z over g with gamma o alpha = beta.
int count_fillers(const Functor& F, int alpha, int beta, int g) {
    const auto& C = F.source();
    int n = 0;
    for (int gamma : C.hom(C.target(alpha), C.target(beta)))
        if (F.arrow(gamma) == g && C.compose(gamma, alpha) == beta) ++n;
    return n;
}

}  // namespace

LeftFibrationVerdict is_left_fibration(const Functor& F) {
    const auto& C = F.source();
    const auto& D = F.target();
    LeftFibrationVerdict v;
    for (int x = 0; x < C.object_count(); ++x)
        for (int a : arrows_from(D, F.object(x))) {
            bool found = false;
            for (int alpha : arrows_from(C, x)) found = found || F.arrow(alpha) == a;
            if (!found) v.missing_lifts.push_back({x, a});
        }
    for (int alpha = 0; alpha < C.arrow_count(); ++alpha)
        for (int beta : arrows_from(C, C.source(alpha)))
            for (int c : D.hom(F.object(C.target(alpha)), F.object(C.target(beta)))) {
                if (D.compose(c, F.arrow(alpha)) != F.arrow(beta)) continue;
                const int n = count_fillers(F, alpha, beta, c);
                if (n != 1) v.horn_failures.push_back({alpha, beta, c, n});
            }
    v.holds = v.missing_lifts.empty() && v.horn_failures.empty();
    return v;
}

bool is_cocartesian_arrow(const Functor& F, int alpha) {
    const auto& C = F.source();
    const auto& D = F.target();
    const int x = C.source(alpha), y = C.target(alpha);
    for (int z = 0; z < C.object_count(); ++z)
        for (int beta : C.hom(x, z))
            for (int g : D.hom(F.object(y), F.object(z)))
                if (D.compose(g, F.arrow(alpha)) == F.arrow(beta) && count_fillers(F, alpha, beta, g) != 1) return false;
    return true;
}

bool is_locally_cocartesian_arrow(const Functor& F, int alpha) {
    const auto& C = F.source();
    const auto& D = F.target();
    const int x = C.source(alpha), y = C.target(alpha);
    const int yb = F.object(y);
    for (int z = 0; z < C.object_count(); ++z) {
        if (F.object(z) != yb) continue;
        for (int beta : C.hom(x, z))
            if (F.arrow(beta) == F.arrow(alpha) && count_fillers(F, alpha, beta, D.identity(yb)) != 1) return false;
    }
    return true;
}

CocartAnalysis cocart_analyze(const Functor& F) {
    const auto& C = F.source();
    const auto& D = F.target();
    CocartAnalysis r;
    r.arrows.resize(sz(C.arrow_count()));
    bool all_cocartesian = true;
    for (int a = 0; a < C.arrow_count(); ++a) {
        auto& fl = r.arrows[sz(a)];
        fl.cocartesian = is_cocartesian_arrow(F, a);
        fl.locally_cocartesian = is_locally_cocartesian_arrow(F, a);
        if (fl.cocartesian && !fl.locally_cocartesian)
            throw InconsistencyError("cocart_analyze: cocartesian arrow '" + C.arrow_name(a) + "' is not locally cocartesian");
        all_cocartesian = all_cocartesian && fl.cocartesian;
    }
    for (int f = 0; f < C.arrow_count(); ++f)
        for (int g : arrows_from(C, C.target(f))) {
            if (!r.arrows[sz(f)].locally_cocartesian || !r.arrows[sz(g)].locally_cocartesian) continue;
            const int h = C.compose(g, f);
            r.pairs.push_back({f, g, h, r.arrows[sz(h)].locally_cocartesian});
        }
    bool all_lifts = true;
    for (int x = 0; x < C.object_count(); ++x)
        for (int a : arrows_from(D, F.object(x))) {
            bool any = false, cocart = false, local = false;
            for (int alpha : arrows_from(C, x)) {
                if (F.arrow(alpha) != a) continue;
                any = true;
                cocart = cocart || r.arrows[sz(alpha)].cocartesian;
                local = local || r.arrows[sz(alpha)].locally_cocartesian;
            }
            all_lifts = all_lifts && any;
            if (!cocart) r.missing_cocartesian_lifts.push_back({x, a});
            if (!local) r.missing_local_lifts.push_back({x, a});
        }
    r.is_cocartesian_fibration = r.missing_cocartesian_lifts.empty();
    r.is_locally_cocartesian_fibration = r.missing_local_lifts.empty();
    r.is_left_fibration = all_lifts && all_cocartesian;
    if (r.is_left_fibration != is_left_fibration(F).holds)
        throw InconsistencyError("cocart_analyze: left fibration verdicts disagree");
    return r;
}

std::string CocartAnalysis::report(const Functor& F) const {
    const auto& C = F.source();
    const auto& D = F.target();
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::string out;
    for (int a = 0; a < C.arrow_count(); ++a)
        out += "arrow " + C.arrow_name(a) + " over " + D.arrow_name(F.arrow(a)) + ": cocartesian=" +
               yn(arrows[sz(a)].cocartesian) + " locally_cocartesian=" + yn(arrows[sz(a)].locally_cocartesian) + "\n";
    for (const auto& p : pairs)
        out += "pair " + C.arrow_name(p.second) + " o " + C.arrow_name(p.first) + " = " + C.arrow_name(p.composite) +
               ": locally_cocartesian=" + yn(p.composite_locally_cocartesian) + "\n";
    for (const auto& m : missing_local_lifts)
        out += "missing_local_lift " + C.object_name(m.object) + " " + D.arrow_name(m.base_arrow) + "\n";
    for (const auto& m : missing_cocartesian_lifts)
        out += "missing_cocartesian_lift " + C.object_name(m.object) + " " + D.arrow_name(m.base_arrow) + "\n";
    out += std::string("cocartesian_fibration=") + yn(is_cocartesian_fibration) + "\n";
    out += std::string("locally_cocartesian_fibration=") + yn(is_locally_cocartesian_fibration) + "\n";
    out += std::string("left_fibration=") + yn(is_left_fibration) + "\n";
    return out;
}

FinCategory fiber(const Functor& F, int d, std::vector<int>* objects, std::vector<int>* arrows) {
    const auto& C = F.source();
    const int id = F.target().identity(d);
    std::vector<bool> keep(sz(C.arrow_count()));
    for (int a = 0; a < C.arrow_count(); ++a) {
        keep[sz(a)] = F.arrow(a) == id;
        if (keep[sz(a)] && arrows) arrows->push_back(a);
    }
    if (objects)
        for (int x = 0; x < C.object_count(); ++x)
            if (F.object(x) == d) objects->push_back(x);
    return subcategory(C, keep);
}

void SplitFunctorToCat::validate() const {
    if (static_cast<int>(fibers.size()) != base.object_count())
        throw ArgumentError("split functor: expected one fiber per base object");
    if (static_cast<int>(transports.size()) != base.arrow_count())
        throw ArgumentError("split functor: expected one transport per base arrow");
    for (int a = 0; a < base.arrow_count(); ++a) {
        const auto& T = transports[sz(a)];
        if (!(T.source() == fibers[sz(base.source(a))]) || !(T.target() == fibers[sz(base.target(a))]))
            throw ArgumentError("split functor: transport of '" + base.arrow_name(a) + "' has the wrong endpoints");
        if (base.is_identity(a) && !(T == identity_functor(fibers[sz(base.source(a))])))
            throw ArgumentError("split functor: identity '" + base.arrow_name(a) + "' is not sent to the identity");
    }
    for (int f = 0; f < base.arrow_count(); ++f)
        for (int g = 0; g < base.arrow_count(); ++g) {
            const int h = base.try_compose(g, f);
            if (h < 0) continue;
            if (!(transports[sz(h)] == compose(transports[sz(g)], transports[sz(f)])))
                throw ArgumentError("split functor: transports do not compose along " + base.arrow_name(g) + " o " +
                                    base.arrow_name(f));
        }
}

Functor grothendieck_build(const SplitFunctorToCat& F) {
    F.validate();
    const auto& B = F.base;
    std::vector<int> offset;
    std::vector<std::string> objects;
    std::vector<int> base_of;
    for (int d = 0; d < B.object_count(); ++d) {
        offset.push_back(static_cast<int>(objects.size()));
        const auto& Fd = F.fibers[sz(d)];
        for (int c = 0; c < Fd.object_count(); ++c) {
            objects.push_back("(" + B.object_name(d) + "," + Fd.object_name(c) + ")");
            base_of.push_back(d);
        }
    }
    std::vector<ArrowSpec> arrows;
    std::vector<int> arrow_base;
    std::map<std::tuple<int, int, int>, int> index;  // (phi, c, alpha)
    for (int phi = 0; phi < B.arrow_count(); ++phi) {
        const int d = B.source(phi), e = B.target(phi);
        const auto& Fd = F.fibers[sz(d)];
        const auto& Fe = F.fibers[sz(e)];
        const auto& T = F.transports[sz(phi)];
        for (int c = 0; c < Fd.object_count(); ++c)
            for (int alpha = 0; alpha < Fe.arrow_count(); ++alpha) {
                if (Fe.source(alpha) != T.object(c)) continue;
                index[{phi, c, alpha}] = static_cast<int>(arrows.size());
                arrows.push_back({"(" + B.arrow_name(phi) + "," + Fd.object_name(c) + "," + Fe.arrow_name(alpha) + ")",
                                  offset[sz(d)] + c, offset[sz(e)] + Fe.target(alpha)});
                arrow_base.push_back(phi);
            }
    }
    struct Key {
        int phi, c, alpha;
    };
    std::vector<Key> key(arrows.size());
    for (const auto& [k, i] : index) key[sz(i)] = {std::get<0>(k), std::get<1>(k), std::get<2>(k)};
    std::vector<int> ids;
    for (int d = 0; d < B.object_count(); ++d)
        for (int c = 0; c < F.fibers[sz(d)].object_count(); ++c)
            ids.push_back(index.at({B.identity(d), c, F.fibers[sz(d)].identity(c)}));
    const int A = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) {
            if (arrows[sz(f)].target != arrows[sz(g)].source) continue;
            const auto kf = key[sz(f)], kg = key[sz(g)];
            const int psi_phi = B.compose(kg.phi, kf.phi);
            const auto& Fe = F.fibers[sz(B.target(kg.phi))];
            const int moved = F.transports[sz(kg.phi)].arrow(kf.alpha);
            table[sz(g)][sz(f)] = index.at({psi_phi, kf.c, Fe.compose(kg.alpha, moved)});
        }
    FinCategory total(std::move(objects), std::move(arrows), std::move(ids), std::move(table));
    return Functor(total, B, base_of, arrow_base);
}

namespace {

/// The unique v : s -> t over the identity of d with v o first == rhs, or -1.
int solve_over_identity(const Functor& F, int s, int t, int first, int rhs) {
    const auto& C = F.source();
    const int id = F.target().identity(F.object(t));
    int found = -1;
    for (int v : C.hom(s, t))
        if (F.arrow(v) == id && C.compose(v, first) == rhs) {
            if (found >= 0) return -1;
            found = v;
        }
    return found;
}

struct ThetaContext {
    const Functor& F;
    const std::vector<std::vector<int>>& fiber_objects;
    std::vector<int> local_index;  // total object -> index within its fiber
};

/// Theta components for lifts[a][c]; throws InconsistencyError when a comparison map is missing.
std::vector<ThetaComponent> theta_maps(const ThetaContext& ctx, const std::vector<std::vector<int>>& lifts) {
    const auto& C = ctx.F.source();
    const auto& B = ctx.F.target();
    std::vector<ThetaComponent> out;
    for (int a = 0; a < B.arrow_count(); ++a)
        for (int b = 0; b < B.arrow_count(); ++b) {
            const int ba = B.try_compose(b, a);
            if (ba < 0) continue;
            const int d = B.source(a);
            for (std::size_t c = 0; c < ctx.fiber_objects[sz(d)].size(); ++c) {
                const int alpha = lifts[sz(a)][c];
                const int mid = ctx.local_index[sz(C.target(alpha))];
                const int beta = lifts[sz(b)][sz(mid)];
                const int gamma = lifts[sz(ba)][c];
                const int theta = solve_over_identity(ctx.F, C.target(gamma), C.target(beta), gamma, C.compose(beta, alpha));
                if (theta < 0) throw InconsistencyError("grothendieck_read: no comparison map for a locally cocartesian lift");
                out.push_back({a, b, ctx.fiber_objects[sz(d)][c], theta, C.is_iso(theta)});
            }
        }
    return out;
}

bool all_iso(const std::vector<ThetaComponent>& t) {
    for (const auto& x : t)
        if (!x.iso) return false;
    return true;
}

}  // namespace

GrothendieckReading grothendieck_read(const Functor& F, const CocartAnalysis& analysis) {
    const auto& C = F.source();
    const auto& B = F.target();
    if (static_cast<int>(analysis.arrows.size()) != C.arrow_count())
        throw ArgumentError("grothendieck_read: analysis does not match the functor");
    if (!analysis.is_locally_cocartesian_fibration) {
        const auto& m = analysis.missing_local_lifts.front();
        throw ArgumentError("grothendieck_read: no locally cocartesian lift of '" + B.arrow_name(m.base_arrow) + "' at '" +
                            C.object_name(m.object) + "'");
    }
    GrothendieckReading r;
    std::vector<int> local_index(sz(C.object_count()));
    for (int d = 0; d < B.object_count(); ++d) {
        std::vector<int> objs, arrs;
        r.fibers.push_back(fiber(F, d, &objs, &arrs));
        for (std::size_t i = 0; i < objs.size(); ++i) local_index[sz(objs[i])] = static_cast<int>(i);
        r.fiber_objects.push_back(objs);
        r.fiber_arrows.push_back(arrs);
    }
    std::vector<int> arrow_to_local(sz(C.arrow_count()), -1);
    for (const auto& arrs : r.fiber_arrows)
        for (std::size_t i = 0; i < arrs.size(); ++i) arrow_to_local[sz(arrs[i])] = static_cast<int>(i);

    // candidate lifts, preferred one first
    std::vector<std::vector<std::vector<int>>> candidates(sz(B.arrow_count()));
    for (int a = 0; a < B.arrow_count(); ++a)
        for (int x : r.fiber_objects[sz(B.source(a))]) {
            std::vector<int> cand;
            if (B.is_identity(a)) cand.push_back(C.identity(x));
            for (int alpha = 0; alpha < C.arrow_count(); ++alpha)
                if (C.source(alpha) == x && F.arrow(alpha) == a && analysis.arrows[sz(alpha)].locally_cocartesian &&
                    !(B.is_identity(a) && alpha == C.identity(x)))
                    cand.push_back(alpha);
            candidates[sz(a)].push_back(cand);
        }
    r.chosen_lifts.resize(sz(B.arrow_count()));
    for (int a = 0; a < B.arrow_count(); ++a)
        for (const auto& cand : candidates[sz(a)]) r.chosen_lifts[sz(a)].push_back(cand.front());

    for (int a = 0; a < B.arrow_count(); ++a) {
        const int d = B.source(a), e = B.target(a);
        const auto& L = r.chosen_lifts[sz(a)];
        std::vector<int> omap, amap;
        for (int alpha : L) omap.push_back(local_index[sz(C.target(alpha))]);
        for (int u : r.fiber_arrows[sz(d)]) {
            const int c1 = local_index[sz(C.source(u))], c2 = local_index[sz(C.target(u))];
            const int v = solve_over_identity(F, C.target(L[sz(c1)]), C.target(L[sz(c2)]), L[sz(c1)],
                                              C.compose(L[sz(c2)], u));
            if (v < 0) throw InconsistencyError("grothendieck_read: transport is not determined on an arrow");
            amap.push_back(arrow_to_local[sz(v)]);
        }
        r.transports.emplace_back(r.fibers[sz(d)], r.fibers[sz(e)], omap, amap);
    }

    const ThetaContext ctx{F, r.fiber_objects, local_index};
    r.theta = theta_maps(ctx, r.chosen_lifts);
    r.all_theta_iso = all_iso(r.theta);
    r.agrees_with_cocartesian = r.all_theta_iso == analysis.is_cocartesian_fibration;

    // every choice of lifts when there are at most 1000, otherwise a fixed-seed sample
    std::vector<std::pair<int, int>> slots;
    double total = 1;
    for (int a = 0; a < B.arrow_count(); ++a)
        for (std::size_t c = 0; c < candidates[sz(a)].size(); ++c) {
            slots.push_back({a, static_cast<int>(c)});
            total *= static_cast<double>(candidates[sz(a)][c].size());
        }
    auto choice = r.chosen_lifts;
    auto assign = [&](std::size_t code, bool random, std::mt19937_64& rng) {
        for (const auto& [a, c] : slots) {
            const auto& cand = candidates[sz(a)][sz(c)];
            const std::size_t k = random ? rng() % cand.size() : code % cand.size();
            if (!random) code /= cand.size();
            choice[sz(a)][sz(c)] = cand[k];
        }
    };
    std::mt19937_64 rng(1);
    r.choices_exhaustive = total <= 1000;
    const std::size_t runs = r.choices_exhaustive ? static_cast<std::size_t>(total) : 200;
    r.choice_independent = true;
    for (std::size_t k = 0; k < runs; ++k) {
        assign(k, !r.choices_exhaustive, rng);
        if (all_iso(theta_maps(ctx, choice)) != r.all_theta_iso) r.choice_independent = false;
    }
    r.choices_examined = runs;
    return r;
}

FinCategory join(const FinCategory& C, const FinCategory& D) {
    const int nC = C.object_count(), nD = D.object_count(), aC = C.arrow_count(), aD = D.arrow_count();
    bool clash = false;
    for (const auto& x : C.object_names())
        if (D.find_object(x)) clash = true;
    auto cname = [&](int x) { return clash ? "L." + C.object_name(x) : C.object_name(x); };
    auto dname = [&](int y) { return clash ? "R." + D.object_name(y) : D.object_name(y); };
    std::vector<std::string> objects;
    for (int x = 0; x < nC; ++x) objects.push_back(cname(x));
    for (int y = 0; y < nD; ++y) objects.push_back(dname(y));
    std::vector<ArrowSpec> arrows;
    for (const auto& a : C.arrows()) arrows.push_back({clash ? "L." + a.name : a.name, a.source, a.target});
    for (const auto& a : D.arrows()) arrows.push_back({clash ? "R." + a.name : a.name, nC + a.source, nC + a.target});
    auto cross = [&](int x, int y) { return aC + aD + x * nD + y; };
    for (int x = 0; x < nC; ++x)
        for (int y = 0; y < nD; ++y) arrows.push_back({cname(x) + "*" + dname(y), x, nC + y});
    std::vector<int> ids;
    for (int x = 0; x < nC; ++x) ids.push_back(C.identity(x));
    for (int y = 0; y < nD; ++y) ids.push_back(aC + D.identity(y));
    const int A = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(A), std::vector<int>(sz(A), -1));
    for (int g = 0; g < aC; ++g)
        for (int f = 0; f < aC; ++f) table[sz(g)][sz(f)] = C.try_compose(g, f);
    for (int g = 0; g < aD; ++g)
        for (int f = 0; f < aD; ++f) {
            const int h = D.try_compose(g, f);
            table[sz(aC + g)][sz(aC + f)] = h < 0 ? -1 : aC + h;
        }
    for (int x = 0; x < nC; ++x)
        for (int y = 0; y < nD; ++y) {
            for (int f = 0; f < aC; ++f)
                if (C.target(f) == x) table[sz(cross(x, y))][sz(f)] = cross(C.source(f), y);
            for (int g = 0; g < aD; ++g)
                if (D.source(g) == y) table[sz(aC + g)][sz(cross(x, y))] = cross(x, D.target(g));
        }
    return FinCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(table));
}

TwistedArrows twisted_arrows(const FinCategory& C) {
    const int A = C.arrow_count();
    std::vector<std::string> objects;
    for (int f = 0; f < A; ++f) objects.push_back(C.arrow_name(f));
    struct Key {
        int f, u, v;
    };
    std::vector<Key> keys;
    std::vector<ArrowSpec> arrows;
    std::map<std::tuple<int, int, int>, int> index;
    for (int f = 0; f < A; ++f)
        for (int u = 0; u < A; ++u) {
            if (C.target(u) != C.source(f)) continue;
            for (int v = 0; v < A; ++v) {
                if (C.source(v) != C.target(f)) continue;
                const int g = C.compose(v, C.compose(f, u));
                index[{f, u, v}] = static_cast<int>(arrows.size());
                keys.push_back({f, u, v});
                arrows.push_back({"(" + C.arrow_name(u) + "," + C.arrow_name(v) + "):" + C.arrow_name(f), f, g});
            }
        }
    std::vector<int> ids;
    for (int f = 0; f < A; ++f) ids.push_back(index.at({f, C.identity(C.source(f)), C.identity(C.target(f))}));
    const int T = static_cast<int>(arrows.size());
    std::vector<std::vector<int>> table(sz(T), std::vector<int>(sz(T), -1));
    for (int g = 0; g < T; ++g)
        for (int f = 0; f < T; ++f) {
            if (arrows[sz(f)].target != arrows[sz(g)].source) continue;
            const auto kf = keys[sz(f)], kg = keys[sz(g)];
            table[sz(g)][sz(f)] = index.at({kf.f, C.compose(kf.u, kg.u), C.compose(kg.v, kf.v)});
        }
    TwistedArrows r;
    r.category = FinCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(table));
    const FinCategory target = product(opposite(C), C);
    const int n = C.object_count();
    std::vector<int> omap, amap;
    for (int f = 0; f < A; ++f) omap.push_back(C.source(f) * n + C.target(f));
    for (const auto& k : keys) amap.push_back(k.u * A + k.v);
    r.projection = Functor(r.category, target, omap, amap);
    return r;
}

}  // namespace nw
