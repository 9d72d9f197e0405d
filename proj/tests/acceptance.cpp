// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nerveworks/category.hpp"
#include "nerveworks/chain_model.hpp"
#include "nerveworks/delta.hpp"
#include "nerveworks/doldkan.hpp"
#include "nerveworks/error.hpp"
#include "nerveworks/fibrations.hpp"
#include "nerveworks/hcnerve.hpp"
#include "nerveworks/quasicat.hpp"
#include "nerveworks/segal.hpp"
#include "nerveworks/sset.hpp"
#include "dk_support.hpp"
#include "hc_support.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace nw;
using namespace nwtest;

namespace {

/// Collects failed expectations for one criterion.
class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        failed_ += !ok;
    }
    bool passed() const { return failed_ == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << checks_ << " checks";
        if (failed_) {
            s << ", " << failed_ << " failed:";
            for (const auto& f : failures_) s << " [" << f << "]";
        }
        return s.str();
    }

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string str(int v) { return std::to_string(v); }

// ---- 1 ---------------------------------------------------------------------------------

/// Weakly increasing sequences of length m + 1 with values in [0, n], by recursion.
std::vector<std::vector<int>> monotone_tables(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int lo) {
        if (static_cast<int>(cur.size()) == m + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= n; ++v) {
            cur.push_back(v);
            go(v);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

void simplicial_identities(Tally& t) {
    const auto face = [](int n, int i) { return OrdinalMap::face(n, i); };
    const auto degen = [](int n, int i) { return OrdinalMap::degeneracy(n, i); };
    for (int n = 1; n <= 8; ++n) {
        for (int i = 0; i <= n; ++i) {
            std::vector<int> v;
            for (int k = 0; k < n; ++k) v.push_back(k < i ? k : k + 1);
            t.expect(face(n, i).values() == v, "delta_" + str(i) + " on [" + str(n - 1) + "]");
        }
        for (int i = 0; i < n; ++i) {
            std::vector<int> v;
            for (int k = 0; k <= n; ++k) v.push_back(k <= i ? k : k - 1);
            t.expect(degen(n, i).values() == v, "sigma_" + str(i) + " on [" + str(n) + "]");
        }
    }
    for (int n = 2; n <= 8; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                t.expect(compose(face(n, j), face(n - 1, i)) == compose(face(n, i), face(n - 1, j - 1)),
                         "dd n=" + str(n) + " i=" + str(i) + " j=" + str(j));
    for (int n = 1; n <= 7; ++n)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= j; ++i)
                t.expect(compose(degen(n, j), degen(n + 1, i)) == compose(degen(n, i), degen(n + 1, j + 1)),
                         "ss n=" + str(n) + " i=" + str(i) + " j=" + str(j));
    for (int n = 1; n <= 8; ++n)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= n; ++i) {
                const auto lhs = compose(degen(n, j), face(n, i));  // sigma_j delta_i on [n-1]
                OrdinalMap rhs;
                if (i < j) rhs = compose(face(n - 1, i), degen(n - 1, j - 1));
                else if (i == j || i == j + 1) rhs = OrdinalMap::identity(n - 1);
                else rhs = compose(face(n - 1, i - 1), degen(n - 1, j));
                t.expect(lhs == rhs, "sd n=" + str(n) + " i=" + str(i) + " j=" + str(j));
            }
    // unique epi-mono factorization, tallied over every (surjection, injection) pair
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            std::map<std::vector<int>, int> factorizations;
            for (int k = 0; k <= std::min(m, n); ++k)
                for (const auto& s : monotone_tables(m, k)) {
                    if (std::set<int>(s.begin(), s.end()).size() != static_cast<std::size_t>(k + 1)) continue;
                    for (const auto& i : monotone_tables(k, n)) {
                        if (std::adjacent_find(i.begin(), i.end()) != i.end()) continue;
                        std::vector<int> c;
                        for (int x : s) c.push_back(i[static_cast<std::size_t>(x)]);
                        ++factorizations[c];
                    }
                }
            const auto maps = monotone_tables(m, n);
            t.expect(factorizations.size() == maps.size(), "every map factors, m=" + str(m) + " n=" + str(n));
            for (const auto& values : maps) {
                t.expect(factorizations[values] == 1, "unique factorization");
                const OrdinalMap f(n, values);
                const auto em = epi_mono_factorize(f);
                t.expect(em.epi.is_surjective() && em.mono.is_injective() && compose(em.mono, em.epi) == f,
                         "epi_mono_factorize " + f.to_string());
                t.expect(evaluate_word(m, generator_word(f)) == f, "generator word " + f.to_string());
            }
        }
}

// ---- 2 ---------------------------------------------------------------------------------

void shuffle_counts(Tally& t) {
    for (int n = 0; n <= 7; ++n)
        for (int m = 0; n + m <= 7; ++m) {
            const auto P = product(standard_simplex(n), standard_simplex(m));
            t.expect(P.top_dimension() == n + m, "top dimension of D" + str(n) + " x D" + str(m));
            t.expect(P.cell_count(n + m) == binom(n + m, n), "shuffles of D" + str(n) + " x D" + str(m));
        }
    const auto sq = product(standard_simplex(1), standard_simplex(1));
    t.expect(sq.cell_count(2) == 2 && sq.cell_count(1) == 5 && sq.cell_count(0) == 4, "D1 x D1 is two triangles");
}

// ---- 3 ---------------------------------------------------------------------------------

/// Whether the spine inclusion induces a bijection X_n -> Hom(Spine(n), X) for n <= top.
bool spine_bijective(const SimplicialSet& X, int top) {
    for (int n = 1; n <= top; ++n) {
        const auto spine = standard_object(StandardKind::spine, n);
        const auto inc = standard_inclusion(spine, n);
        const auto maps = all_maps(spine, X);
        std::size_t total = 0;
        for (const auto& f : maps) {
            const auto c = count_extensions(inc, f, 2);
            if (c != 1) return false;
            total += c;
        }
        if (total != X.simplices(n).size()) return false;
    }
    return true;
}

/// Two triangles with the same boundary.
SimplicialSet doubled_triangle() {
    SimplicialSet::Builder b;
    for (const char* v : {"0", "1", "2"}) b.add_cell(0, v);
    b.add_cell(1, "01", {SimplicialSet::cell(0, 1), SimplicialSet::cell(0, 0)});
    b.add_cell(1, "12", {SimplicialSet::cell(0, 2), SimplicialSet::cell(0, 1)});
    b.add_cell(1, "02", {SimplicialSet::cell(0, 2), SimplicialSet::cell(0, 0)});
    for (const char* name : {"u", "v"}) b.add_cell(2, name, {SimplicialSet::cell(1, 1), SimplicialSet::cell(1, 2), SimplicialSet::cell(1, 0)});
    return b.build();
}

void nerve_characterization(Tally& t) {
    std::mt19937_64 rng(2024);
    int family = 0;
    for (int attempt = 0; attempt < 200 && family < 24; ++attempt) {
        const auto C = random_category(rng, 4);
        if (C.object_count() > 4 || C.arrow_count() > 10) continue;
        ++family;
        const auto N = nerve(C, 5);
        t.expect(spine_bijective(N, 5), "spine bijection, category #" + str(family));
        t.expect(classify(N, 4, HornMode::inner).unique_fillers(), "unique inner fillers, category #" + str(family));
    }
    t.expect(family >= 20, "at least 20 random categories");
    const auto bd = standard_object(StandardKind::boundary, 2);
    t.expect(!spine_bijective(bd, 2), "boundary of D2 fails the spine check");
    t.expect(!classify(bd, 4, HornMode::inner).unique_fillers(), "boundary of D2 fails unique filling");
    const auto twice = doubled_triangle();
    t.expect(!spine_bijective(twice, 2), "doubled triangle fails the spine check");
    t.expect(!classify(twice, 3, HornMode::inner).unique_fillers(), "doubled triangle fails unique filling");
}

// ---- 4 ---------------------------------------------------------------------------------

void kan_groupoids(Tally& t) {
    const std::vector<std::pair<std::string, std::vector<std::vector<int>>>> groups{
        {"Z/2", cyclic_group_table(2)}, {"Z/3", cyclic_group_table(3)}, {"S3", symmetric3_table()}};
    for (const auto& [name, table] : groups)
        t.expect(classify(nerve(bg(table), 3), 3, HornMode::kan).all_fillable(), "N(B" + name + ") is Kan through 3");
    const auto r = classify(nerve(poset_category(1), 3), 3, HornMode::kan);
    t.expect(!r.all_fillable(), "N([1]) is not Kan");
    t.expect(r.witness && r.witness->n == 2 && r.witness->k == 0, "witness is a (2,0)-horn");
    if (r.witness) {
        const auto inc = standard_inclusion(standard_object(StandardKind::horn, 2, r.witness->k), 2);
        t.expect(count_extensions(inc, r.witness->map) == 0, "witness horn has no filler");
    }
}

// ---- 5 ---------------------------------------------------------------------------------

void ho_roundtrip(Tally& t) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto C = random_category(rng, 3);
        const auto N = nerve(C, 3);
        const auto H = homotopy_category(N);
        t.expect(find_isomorphism(H, C).has_value(), "Ho(N C) = C, trial " + str(trial));
        t.expect(find_isomorphism(homotopy_category(opposite(N)), opposite(H)).has_value(), "Ho(X^op) = Ho(X)^op, trial " + str(trial));
    }
}

// ---- 6 ---------------------------------------------------------------------------------

/// Brute-force search for a bijection carrying one Cayley table onto the other.
bool isomorphic_tables(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y)
                ok = perm[static_cast<std::size_t>(a[x][y])] == b[static_cast<std::size_t>(perm[x])][static_cast<std::size_t>(perm[y])];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

void delooping_pi1(Tally& t) {
    const std::vector<std::pair<std::string, std::vector<std::vector<int>>>> groups{
        {"Z/2", cyclic_group_table(2)}, {"Z/3", cyclic_group_table(3)}, {"Z/4", cyclic_group_table(4)}, {"S3", symmetric3_table()}};
    for (const auto& [name, table] : groups) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = homotopy_group(nerve(bg(table), 4), 0, 1);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto* g = std::get_if<GroupPresentation>(&r);
        t.expect(g && isomorphic_tables(g->table, table), "pi1 of N(B" + name + ")");
        t.expect(secs < 300, "pi1 of N(B" + name + ") within 5 minutes");
    }
}

// ---- 7 ---------------------------------------------------------------------------------

void coherent_nerve_shadow(Tally& t) {
    const auto c2 = frak_c(2);
    const auto& m02 = c2.map(0, 2);
    t.expect(m02.cell_count(0) == 2 && m02.cell_count(1) == 1 && m02.top_dimension() == 1, "Map(0,2) of c[2] is an edge");
    t.expect(c2.map(0, 1).total_cells() == 1 && c2.map(1, 2).total_cells() == 1, "Map(0,1), Map(1,2) are points");
    t.expect(c2.map(1, 0).empty() && c2.map(2, 0).empty() && c2.map(2, 1).empty(), "no maps backwards");
    for (int n = 1; n <= 4; ++n) {
        const auto cn = frak_c(n);
        const std::vector<SimplicialSet> factors(static_cast<std::size_t>(n - 1), standard_simplex(1));
        const auto cube = n == 1 ? standard_simplex(0) : product(factors);
        t.expect(find_isomorphism(cn.map(0, n), cube).has_value(), "Map(0," + str(n) + ") is a cube");
    }
    const std::vector<std::pair<std::string, SimplicialCategory>> cats{
        {"B(Z/2) monoid", group_nerve_monoid(2, 3)},
        {"B(Z/3) monoid", group_nerve_monoid(3, 2)},
        {"contractible mapping space", arrow_space(nerve(contractible_pair(), 3))},
        {"discrete", SimplicialCategory::from_category(iso_pair_plus_arrow())},
    };
    for (const auto& [name, C] : cats)
        t.expect(classify(coherent_nerve(C, 3), 3, HornMode::inner).all_fillable(), "coherent nerve of " + name + " is inner Kan");
}

// ---- 8 ---------------------------------------------------------------------------------

void dold_kan(Tally& t) {
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        const auto C = random_complex(rng, 4, 3);
        t.expect(C.lo() >= 0 && C.hi() <= 4, "window inside [0,4]");
        t.expect(gamma_roundtrip_holds(C), "N(Gamma C) = C, trial " + str(trial));
    }
}

// ---- 9 ---------------------------------------------------------------------------------

bool degreewise_surjective(const ChainMap& p) {
    const auto& Y = p.target();
    for (int n = Y.lo(); n <= Y.hi(); ++n)
        if (!module_cokernel(p.at(n), Y.group_orders(n)).trivial()) return false;
    return true;
}

/// The middle term is X (+) T as complexes with X first; T must be acyclic.
bool added_summand_acyclic(const ChainMap& first) {
    const auto& X = first.source();
    const auto& M = first.target();
    const int lo = std::min(X.lo(), M.lo()), hi = std::max(X.hi(), M.hi());
    std::vector<IntVector> orders;
    std::vector<IntMatrix> ds;
    for (int n = lo; n <= hi; ++n) {
        const int x = X.rank(n), m = M.rank(n);
        const IntMatrix f = first.at(n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < x; ++j)
                if (f(i, j) != (i == j ? 1 : 0)) return false;
        orders.emplace_back(M.orders(n).begin() + x, M.orders(n).end());
        const IntMatrix d = M.differential(n);
        const int xb = X.rank(n - 1), mb = M.rank(n - 1);
        IntMatrix block(n == lo ? 0 : mb - xb, m - x);
        for (int i = 0; i < mb; ++i)
            for (int j = 0; j < m; ++j) {
                const bool added_row = i >= xb, added_col = j >= x;
                if (added_row != added_col && d(i, j) != 0) return false;
                if (added_row && added_col && n != lo) block(i - xb, j - x) = d(i, j);
            }
        ds.push_back(block);
    }
    const ChainComplex T(M.ring(), lo, orders, ds);
    const auto H = homology(T);
    for (const auto& g : H.groups)
        if (!g.trivial()) return false;
    return true;
}

void chain_factorizations(Tally& t) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        ChainMap f;
        if (trial % 2 == 0) {
            f = ChainMap::zero(random_complex(rng, 2, 2), random_complex(rng, 2, 2));
        } else {
            const int p = trial % 4 == 1 ? 2 : 3;
            const auto X = random_fp_complex(rng, p), Y = random_fp_complex(rng, p);
            f = random_fp_map(rng, X, Y, p);
        }
        const auto c = factor_trivcofib_fib(f);
        t.expect(compose(c.second, c.first).equals(f), "factorization composes to f, trial " + str(trial));
        t.expect(degreewise_surjective(c.second), "second leg surjective, trial " + str(trial));
        t.expect(added_summand_acyclic(c.first), "added summand acyclic, trial " + str(trial));
    }
    const auto Z2 = ChainComplex(Ring::integers(), 0, {{2}}, {IntMatrix(0, 1)});
    const auto r = factor_cofib_trivfib(ChainMap::zero(ChainComplex::zero(), Z2), 3);
    const auto* res = std::get_if<FactorizationCertificate>(&r);
    t.expect(res != nullptr, "resolution of Z/2 within 3 stages");
    if (res) {
        const auto& M = res->middle;
        bool shape = M.lo() >= 0 && M.rank(0) == 1 && M.rank(1) == 1;
        for (int n = 2; n <= M.hi(); ++n) shape = shape && M.rank(n) == 0;
        shape = shape && M.orders(0) == IntVector{0} && M.orders(1) == IntVector{0};
        shape = shape && abs(M.differential(1)(0, 0)) == 2;
        t.expect(shape, "middle term is Z -2-> Z");
        t.expect(res->second_is_trivial_fibration && is_quasi_iso(res->second).quasi_iso, "resolution maps quasi-isomorphically");
    }
    // X^n = Z/4, d = 2, on a window open at both ends
    const int lo = 0, hi = 5;
    std::vector<IntVector> orders(hi - lo + 1, IntVector{0});
    std::vector<IntMatrix> ds{IntMatrix(0, 1)};
    for (int n = lo + 1; n <= hi; ++n) ds.push_back(IntMatrix::from_rows({{2}}));
    const ChainComplex X(Ring::modular(4), lo, orders, ds, true, true);
    const auto H = homology(X);
    t.expect(H.vanishes_in_interior(), "Z/4 complex: interior homology vanishes");
    int kernel = 0, image = 0;
    for (int x = 0; x < 4; ++x) {
        kernel += (2 * x) % 4 == 0;
        image += x == 0 || x == 2;  // {2y mod 4}
    }
    for (int n = lo + 1; n < hi; ++n) t.expect(H.at(n).trivial() == (kernel == image), "Z/4 complex brute force, degree " + str(n));
}

// ---- 10 --------------------------------------------------------------------------------

void fibrations(Tally& t) {
    const auto Z4 = bg(cyclic_group_table(4)), Z2 = bg(cyclic_group_table(2));
    const Functor q(Z4, Z2, {0}, {0, 1, 0, 1});
    t.expect(is_left_fibration(q).holds, "BZ/4 -> BZ/2 is a left fibration");

    const auto F = square_over_two();
    const auto& C = F.source();
    const auto A = cocart_analyze(F);
    t.expect(A.is_locally_cocartesian_fibration && !A.is_cocartesian_fibration, "square over [2] is locally cocartesian only");
    std::set<std::pair<int, int>> flagged;
    for (int a = 0; a < C.arrow_count(); ++a)
        if (!C.is_identity(a) && A.arrows[sz(a)].locally_cocartesian) flagged.insert({C.source(a), C.target(a)});
    // objects (i,j) of [1] x [1] are numbered 2i + j
    t.expect(flagged == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}}, "exactly three arrows flagged");

    std::mt19937_64 rng(1010);
    int splits = 0;
    for (const auto& B : small_bases())
        for (int trial = 0; trial < 6; ++trial) {
            const auto S = random_split(rng, B, trial % 2 == 0);
            const auto P = grothendieck_build(S);
            const auto R = grothendieck_read(P, cocart_analyze(P));
            t.expect(R.all_theta_iso && split_roundtrip_holds(S, P, R), "Grothendieck round trip #" + str(splits));
            ++splits;
        }

    for (int trial = 0; trial < 20; ++trial) {
        const auto D = random_category(rng, 3);
        const auto Tw = twisted_arrows(D);
        t.expect(is_left_fibration(Tw.projection).holds, "Tw projection is a left fibration, trial " + str(trial));
        const int n = D.object_count();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                const auto Fib = fiber(Tw.projection, x * n + y);
                t.expect(Fib.object_count() == static_cast<int>(D.hom(x, y).size()) && Fib.arrow_count() == Fib.object_count(),
                         "Tw fiber is the discrete set Hom(x,y), trial " + str(trial));
            }
    }
}

// ---- 11 --------------------------------------------------------------------------------

bool complete(const BisimplicialSet& X) {
    const auto v = completeness_check(X);
    const auto* c = std::get_if<CompletenessVerdict>(&v);
    return c && c->complete;
}

bool not_complete(const BisimplicialSet& X) {
    const auto v = completeness_check(X);
    const auto* c = std::get_if<CompletenessVerdict>(&v);
    return c && !c->complete;
}

void segal_completeness(Tally& t) {
    std::mt19937_64 rng(1111);
    for (int trial = 0; trial < 20; ++trial) {
        const auto C = random_category(rng, 3);
        std::vector<int> weak;
        for (int a = 0; a < C.arrow_count(); ++a)
            if (C.is_identity(a) || rng() % 2) weak.push_back(a);
        const auto R = RelativeCategory::with_weak(C, weak);
        t.expect(strict_segal_check(rezk_nerve(R, 3, 2)).holds, "Rezk nerve is Segal, trial " + str(trial));
        t.expect(complete(rezk_nerve(RelativeCategory::isomorphisms(C), 2, 3)), "Rezk nerve of (C, iso) is complete, trial " + str(trial));
    }
    t.expect(not_complete(embed(EmbedKind::discrete, nerve(bg(cyclic_group_table(2)), 3), 3)), "d(N BZ/2) is not complete");
    t.expect(complete(embed(EmbedKind::discrete, nerve(poset_category(2), 3), 3)), "d(N [2]) is complete");
}

// ---- 12 --------------------------------------------------------------------------------

/// A complete simplicial set of dimension <= 2 with random edges and triangles.
SimplicialSet random_two_dimensional(std::mt19937_64& rng) {
    SimplicialSet::Builder b;
    const int V = 1 + static_cast<int>(rng() % 3);
    for (int v = 0; v < V; ++v) b.add_cell(0, "v" + str(v));
    std::vector<std::pair<int, int>> edges;
    const int E = static_cast<int>(rng() % 6);
    for (int e = 0; e < E; ++e) {
        const int s = static_cast<int>(rng() % static_cast<unsigned>(V)), d = static_cast<int>(rng() % static_cast<unsigned>(V));
        b.add_cell(1, "e" + str(e), {SimplicialSet::cell(0, d), SimplicialSet::cell(0, s)});
        edges.push_back({s, d});
    }
    const auto edge_between = [&](int s, int d) -> std::optional<Simplex> {
        std::vector<Simplex> options;
        if (s == d) options.push_back(SimplicialSet::constant(s, 1));
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e] == std::make_pair(s, d)) options.push_back(SimplicialSet::cell(1, static_cast<int>(e)));
        if (options.empty()) return std::nullopt;
        return options[rng() % options.size()];
    };
    const int T = static_cast<int>(rng() % 7);
    int made = 0;
    for (int tries = 0; tries < 4 * T && made < T; ++tries) {
        const int v0 = static_cast<int>(rng() % static_cast<unsigned>(V)), v1 = static_cast<int>(rng() % static_cast<unsigned>(V)),
                  v2 = static_cast<int>(rng() % static_cast<unsigned>(V));
        const auto d0 = edge_between(v1, v2), d1 = edge_between(v0, v2), d2 = edge_between(v0, v1);
        if (!d0 || !d1 || !d2) continue;
        b.add_cell(2, "t" + str(made++), {*d0, *d1, *d2});
    }
    return b.build();
}

std::size_t simplices_through_two(const SimplicialSet& X) {
    return X.simplices(0).size() + X.simplices(1).size() + X.simplices(2).size();
}

bool relation_agrees(const SimplicialSet& X, HomotopyConvention convention) {
    const auto lib = homotopy_relation(X, convention);
    const auto brute = brute_homotopy_relation(X, convention == HomotopyConvention::degenerate_first_edge);
    const std::size_t n = X.simplices(1).size();
    if (lib.class_of.size() != n || lib.relation_is_equivalence != brute.raw_is_equivalence) return false;
    std::set<int> classes(lib.class_of.begin(), lib.class_of.end());
    if (static_cast<int>(classes.size()) != lib.class_count) return false;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if ((lib.class_of[a] == lib.class_of[b]) != brute.closure[a][b]) return false;
    return true;
}

void oracle_equivalence(Tally& t) {
    std::mt19937_64 rng(1212);
    // cocartesian arrows and fibration verdicts
    int functors = 0;
    for (int trial = 0; trial < 80 && functors < 40; ++trial) {
        const auto C = random_category(rng, 3), D = random_category(rng, 3);
        if (C.arrow_count() > 8 || D.arrow_count() > 8) continue;
        const auto all = all_functors(C, D, 200);
        if (all.empty()) continue;
        const auto& F = all[rng() % all.size()];
        ++functors;
        const auto A = cocart_analyze(F);
        bool arrows_ok = true, every_cocart = true, cocart_lifts = true, local_lifts = true;
        for (int a = 0; a < C.arrow_count(); ++a) {
            const bool cc = oracle_cocartesian(F, a), lc = oracle_locally_cocartesian(F, a);
            arrows_ok = arrows_ok && A.arrows[sz(a)].cocartesian == cc && A.arrows[sz(a)].locally_cocartesian == lc;
            every_cocart = every_cocart && cc;
        }
        for (int x = 0; x < C.object_count(); ++x)
            for (int g = 0; g < D.arrow_count(); ++g) {
                if (D.source(g) != F.object(x)) continue;
                bool has_cc = false, has_lc = false;
                for (int a = 0; a < C.arrow_count(); ++a)
                    if (C.source(a) == x && F.arrow(a) == g) {
                        has_cc = has_cc || oracle_cocartesian(F, a);
                        has_lc = has_lc || oracle_locally_cocartesian(F, a);
                    }
                cocart_lifts = cocart_lifts && has_cc;
                local_lifts = local_lifts && has_lc;
            }
        t.expect(arrows_ok, "arrow flags, functor #" + str(functors));
        t.expect(A.is_cocartesian_fibration == cocart_lifts, "cocartesian fibration verdict, functor #" + str(functors));
        t.expect(A.is_locally_cocartesian_fibration == local_lifts, "locally cocartesian verdict, functor #" + str(functors));
        t.expect(A.is_left_fibration == (cocart_lifts && every_cocart), "left fibration verdict, functor #" + str(functors));
    }
    t.expect(functors >= 30, "enough functors examined");

    // quasi-isomorphisms over F_2 and F_3 with ranks <= 4
    int positive = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int p = trial % 2 ? 3 : 2;
        const auto X = random_fp_complex(rng, p, 4), Y = random_fp_complex(rng, p, 4);
        const auto f = trial % 5 == 0 ? ChainMap::identity(X) : random_fp_map(rng, X, Y, p);
        const bool q = is_quasi_iso(f).quasi_iso;
        positive += q;
        t.expect(q == brute_quasi_iso(f, p), "quasi-iso verdict, trial " + str(trial));
    }
    t.expect(positive > 0, "some quasi-isomorphisms examined");

    // homotopy relation on simplicial sets with <= 200 simplices through dimension 2
    int instances = 0, non_equivalence = 0;
    std::vector<SimplicialSet> pool;
    for (int trial = 0; trial < 60; ++trial) pool.push_back(random_two_dimensional(rng));
    for (int trial = 0; trial < 15; ++trial) pool.push_back(nerve(random_category(rng, 3), 2));
    pool.push_back(standard_object(StandardKind::boundary, 2));
    pool.push_back(doubled_triangle());
    for (const auto& X : pool) {
        if (simplices_through_two(X) > 200) continue;
        ++instances;
        non_equivalence += !homotopy_relation(X).relation_is_equivalence;
        for (auto conv : {HomotopyConvention::degenerate_first_edge, HomotopyConvention::degenerate_last_edge})
            t.expect(relation_agrees(X, conv) && relation_agrees(opposite(X), conv), "homotopy relation, instance " + str(instances));
    }
    t.expect(instances >= 50, "enough simplicial sets examined");
    t.expect(non_equivalence > 0, "some relations are not equivalences");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
        {"simplicial identities and epi-mono factorization", simplicial_identities},
        {"shuffle counts of products of simplices", shuffle_counts},
        {"nerves are characterized by spines and unique inner fillers", nerve_characterization},
        {"Kan exactly for groupoid nerves", kan_groupoids},
        {"homotopy category round trip", ho_roundtrip},
        {"fundamental groups of deloopings", delooping_pi1},
        {"coherent nerve shadow", coherent_nerve_shadow},
        {"Dold-Kan round trip", dold_kan},
        {"chain-model factorizations", chain_factorizations},
        {"fibration suite", fibrations},
        {"Segal and completeness suite", segal_completeness},
        {"agreement with brute-force oracles", oracle_equivalence},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !t.passed();
        std::printf("%s  criterion %2zu: %s (%s, %.1fs)\n", t.passed() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    t.summary().c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
