#include "nerveworks/chain_model.hpp"

#include <algorithm>
#include <map>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

IntMatrix negated(const IntMatrix& a) {
    IntMatrix b(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) b(i, j) = -a(i, j);
    return b;
}

IntVector unit(int size, int at) {
    IntVector v(idx(size));
    v[idx(at)] = 1;
    return v;
}

/// Generators (columns) of {x in C_n : dx = 0 modulo the relations of C_{n-1}}.
IntMatrix cycle_lattice(const ChainComplex& C, int n) {
    const IntMatrix K = kernel_basis(IntMatrix::hconcat(C.differential(n), negated(relation_matrix(C.group_orders(n - 1)))));
    IntMatrix Z(C.rank(n), K.cols());
    for (int i = 0; i < C.rank(n); ++i)
        for (int j = 0; j < K.cols(); ++j) Z(i, j) = K(i, j);
    return Z;
}

bool in_span(const IntMatrix& A, const IntVector& orders, const IntVector& v) {
    return solve(IntMatrix::hconcat(A, relation_matrix(orders)), v).has_value();
}

bool degree_surjective(const IntMatrix& P, const IntVector& target_orders) {
    return module_cokernel(P, target_orders).trivial();
}

}  // namespace

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<IntMatrix> matrices)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(matrices)) {
    if (!(source_.ring() == target_.ring())) throw ArgumentError("ChainMap: source and target rings differ");
    lo_ = std::min(source_.lo(), target_.lo());
    const int hi_ = std::max(source_.hi(), target_.hi());
    if (static_cast<int>(f_.size()) != std::max(0, hi_ - lo_ + 1))
        throw ArgumentError("ChainMap: expected one matrix per degree of the union window");
    for (int n = lo_; n <= hi_; ++n) {
        const auto& m = f_[idx(n - lo_)];
        if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n))
            throw ArgumentError("ChainMap: matrix in degree " + std::to_string(n) + " has the wrong shape");
        const IntVector so = source_.group_orders(n), to = target_.group_orders(n);
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; so[idx(j)] != 0 && i < m.rows(); ++i)
                if (reduce(m(i, j) * so[idx(j)], to[idx(i)]) != 0)
                    throw ArgumentError("ChainMap: not well defined in degree " + std::to_string(n));
    }
    for (int n = lo_; n <= hi_; ++n)
        if (!zero_modulo(target_.differential(n) * at(n) - at(n - 1) * source_.differential(n), target_.group_orders(n - 1)))
            throw ArgumentError("ChainMap: does not commute with the differentials in degree " + std::to_string(n));
}

ChainMap ChainMap::identity(const ChainComplex& C) {
    std::vector<IntMatrix> m;
    for (int n = C.lo(); n <= C.hi(); ++n) m.push_back(IntMatrix::identity(C.rank(n)));
    return ChainMap(C, C, std::move(m));
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
    const int lo = std::min(source.lo(), target.lo()), hi = std::max(source.hi(), target.hi());
    std::vector<IntMatrix> m;
    for (int n = lo; n <= hi; ++n) m.emplace_back(target.rank(n), source.rank(n));
    return ChainMap(source, target, std::move(m));
}

IntMatrix ChainMap::at(int n) const {
    if (n >= lo_ && n <= hi()) return f_[idx(n - lo_)];
    return IntMatrix(target_.rank(n), source_.rank(n));
}

bool ChainMap::equals(const ChainMap& other) const {
    const int lo = std::min(lo_, other.lo_), hi = std::max(this->hi(), other.hi());
    for (int n = lo; n <= hi; ++n) {
        const IntMatrix a = at(n), b = other.at(n);
        if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
        if (!zero_modulo(a - b, target_.group_orders(n))) return false;
    }
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source())) throw ArgumentError("compose: chain maps are not composable");
    const auto& X = f.source();
    const auto& Z = g.target();
    const int lo = std::min(X.lo(), Z.lo()), hi = std::max(X.hi(), Z.hi());
    std::vector<IntMatrix> m;
    for (int n = lo; n <= hi; ++n) m.push_back(g.at(n) * f.at(n));
    return ChainMap(X, Z, std::move(m));
}

ChainComplex cone(const ChainMap& f) {
    const auto& X = f.source();
    const auto& Y = f.target();
    const int lo = std::min(X.lo() + 1, Y.lo()), hi = std::max(X.hi() + 1, Y.hi());
    std::vector<IntVector> orders;
    std::vector<IntMatrix> d;
    for (int n = lo; n <= hi; ++n) {
        IntVector o = X.orders(n - 1);
        const auto& yo = Y.orders(n);
        o.insert(o.end(), yo.begin(), yo.end());
        orders.push_back(std::move(o));
        const int xr = X.rank(n - 1), yr = Y.rank(n);
        const int xr1 = n == lo ? 0 : X.rank(n - 2), yr1 = n == lo ? 0 : Y.rank(n - 1);
        IntMatrix m(xr1 + yr1, xr + yr);
        if (n > lo) {
            const IntMatrix dx = X.differential(n - 1), fx = f.at(n - 1), dy = Y.differential(n);
            for (int i = 0; i < xr1; ++i)
                for (int j = 0; j < xr; ++j) m(i, j) = -dx(i, j);
            for (int i = 0; i < yr1; ++i) {
                for (int j = 0; j < xr; ++j) m(xr1 + i, j) = fx(i, j);
                for (int j = 0; j < yr; ++j) m(xr1 + i, xr + j) = dy(i, j);
            }
        }
        d.push_back(std::move(m));
    }
    return ChainComplex(X.ring(), lo, std::move(orders), std::move(d), X.open_below() || Y.open_below(),
                        X.open_above() || Y.open_above());
}

std::string QuasiIsoVerdict::describe() const {
    std::string out = quasi_iso ? "quasi-isomorphism" : "not a quasi-isomorphism";
    if (!failing_degrees.empty()) {
        out += "; cone homology survives in degree";
        for (int n : failing_degrees) out += " " + std::to_string(n);
    }
    if (!inconclusive_degrees.empty()) {
        out += "; inconclusive at window edge in degree";
        for (int n : inconclusive_degrees) out += " " + std::to_string(n);
    }
    return out;
}

QuasiIsoVerdict is_quasi_iso(const ChainMap& f) {
    const auto& X = f.source();
    const auto& Y = f.target();
    if (!(X.ring() == Y.ring())) throw ArgumentError("is_quasi_iso: rings differ");
    const ChainComplex C = cone(f);
    QuasiIsoVerdict v;
    v.cone_homology = homology(C);
    for (int n = C.lo(); n <= C.hi(); ++n) {
        const bool cut = (X.open_above() && n > X.hi()) || (Y.open_above() && n >= Y.hi()) ||
                         (X.open_below() && n < X.lo() + 2) || (Y.open_below() && n < Y.lo() + 1);
        v.cone_homology.edge[idx(n - C.lo())] = cut;
        if (cut) v.inconclusive_degrees.push_back(n);
        else if (!v.cone_homology.at(n).trivial()) v.failing_degrees.push_back(n);
    }
    v.quasi_iso = v.failing_degrees.empty();
    return v;
}

JoinResult join_variable(const ChainComplex& X, const IntVector& z, int n) {
    if (static_cast<int>(z.size()) != X.rank(n)) throw ArgumentError("join_variable: z has the wrong length");
    if (!X.is_cycle(n, z)) throw ArgumentError("join_variable: z is not a cycle");
    const bool empty = X.hi() < X.lo();
    const int lo = empty ? n + 1 : std::min(X.lo(), n + 1);
    const int hi = empty ? n + 1 : std::max(X.hi(), n + 1);
    std::vector<IntVector> orders;
    std::vector<IntMatrix> d;
    auto new_rank = [&](int m) { return X.rank(m) + (m == n + 1 ? 1 : 0); };
    for (int m = lo; m <= hi; ++m) {
        IntVector o = X.orders(m);
        if (m == n + 1) o.push_back(0);
        orders.push_back(std::move(o));
        const IntMatrix old = X.differential(m);
        IntMatrix nd(m == lo ? 0 : new_rank(m - 1), new_rank(m));
        for (int i = 0; i < std::min(old.rows(), nd.rows()); ++i)
            for (int j = 0; j < old.cols(); ++j) nd(i, j) = old(i, j);
        if (m == n + 1 && m != lo)
            for (int i = 0; i < X.rank(n); ++i) nd(i, nd.cols() - 1) = z[idx(i)];
        d.push_back(std::move(nd));
    }
    JoinResult r;
    r.complex = ChainComplex(X.ring(), lo, std::move(orders), std::move(d), X.open_below(), X.open_above());
    r.degree = n + 1;
    r.index = X.rank(n + 1);
    std::vector<IntMatrix> inc;
    for (int m = lo; m <= hi; ++m) {
        IntMatrix e(r.complex.rank(m), X.rank(m));
        for (int j = 0; j < X.rank(m); ++j) e(j, j) = 1;
        inc.push_back(std::move(e));
    }
    r.inclusion = ChainMap(X, r.complex, std::move(inc));
    return r;
}

namespace {

/// Middle complex under construction with the maps i : X -> M and p : M -> Y.
struct Staging {
    ChainComplex Y;
    ChainComplex M;
    ChainMap i;
    std::map<int, std::vector<IntVector>> p;  // degree -> image of each generator of M

    explicit Staging(const ChainMap& f) : Y(f.target()), M(f.source()), i(ChainMap::identity(f.source())) {
        for (int n = M.lo(); n <= M.hi(); ++n) {
            const IntMatrix m = f.at(n);
            for (int j = 0; j < M.rank(n); ++j) p[n].push_back(m.column(j));
        }
    }

    IntMatrix p_at(int n) const {
        auto it = p.find(n);
        std::vector<IntVector> cols = it == p.end() ? std::vector<IntVector>{} : it->second;
        return IntMatrix::from_columns(cols, Y.rank(n));
    }

    ChainMap p_map() const {
        const int lo = std::min(M.lo(), Y.lo()), hi = std::max(M.hi(), Y.hi());
        std::vector<IntMatrix> m;
        for (int n = lo; n <= hi; ++n) m.push_back(p_at(n));
        return ChainMap(M, Y, std::move(m));
    }

    /// Adds u in degree n + 1 with du = z and p(u) = image; returns its index.
    int join(const IntVector& z, int n, const IntVector& image, AddedVariable::Kind kind, StageRecord& record) {
        auto r = join_variable(M, z, n);
        M = r.complex;
        i = compose(r.inclusion, i);
        p[n + 1].push_back(image);
        record.added.push_back({kind, n + 1, z, image});
        return r.index;
    }

    /// T_y for generator j of Y_n: b in degree n - 1 (a cycle), then a in degree n with da = b.
    IntVector add_pair(int n, int j, StageRecord& record) {
        const IntVector y = unit(Y.rank(n), j);
        const IntVector dy = Y.differential(n) * y;
        const int b = join(IntVector(idx(M.rank(n - 2))), n - 2, dy, AddedVariable::Kind::boundary_pair, record);
        const int a = join(unit(M.rank(n - 1), b), n - 1, y, AddedVariable::Kind::boundary_pair, record);
        return unit(M.rank(n), a);
    }

    bool surjective() const {
        for (int n = Y.lo(); n <= Y.hi(); ++n)
            if (!degree_surjective(p_at(n), Y.group_orders(n))) return false;
        return true;
    }

    bool surjective_on_cycles() const {
        for (int n = Y.lo(); n <= Y.hi(); ++n) {
            const IntMatrix images = p_at(n) * cycle_lattice(M, n);
            const IntMatrix Zy = cycle_lattice(Y, n);
            for (int c = 0; c < Zy.cols(); ++c)
                if (!in_span(images, Y.group_orders(n), Zy.column(c))) return false;
        }
        return true;
    }

    std::vector<std::pair<std::pair<int, int>, IntVector>> witnesses() const {
        std::vector<std::pair<std::pair<int, int>, IntVector>> out;
        for (int n = Y.lo(); n <= Y.hi(); ++n) {
            const IntMatrix P = p_at(n);
            for (int j = 0; j < Y.rank(n); ++j) {
                auto s = solve(IntMatrix::hconcat(P, relation_matrix(Y.group_orders(n))), unit(Y.rank(n), j));
                if (!s) continue;
                s->resize(idx(P.cols()));
                out.push_back({{n, j}, *s});
            }
        }
        return out;
    }
};

FactorizationCertificate finish(const ChainMap& f, const Staging& s) {
    FactorizationCertificate c;
    c.middle = s.M;
    c.first = s.i;
    c.second = s.p_map();
    if (!compose(c.second, c.first).equals(f)) throw InconsistencyError("factorization does not compose to the input map");
    c.first_is_standard_cofibration = true;
    c.second_is_fibration = s.surjective();
    c.surjectivity_witnesses = s.witnesses();
    return c;
}

/// The quotient of M by the image of X (the generators added after X's own).
ChainComplex added_part(const ChainComplex& X, const ChainComplex& M) {
    std::vector<IntVector> orders;
    std::vector<IntMatrix> d;
    for (int n = M.lo(); n <= M.hi(); ++n) {
        const auto& o = M.orders(n);
        orders.emplace_back(o.begin() + X.rank(n), o.end());
        const IntMatrix full = M.differential(n);
        const int r0 = n == M.lo() ? 0 : X.rank(n - 1);
        IntMatrix q(n == M.lo() ? 0 : M.rank(n - 1) - X.rank(n - 1), M.rank(n) - X.rank(n));
        for (int i = 0; i < q.rows(); ++i)
            for (int j = 0; j < q.cols(); ++j) q(i, j) = full(r0 + i, X.rank(n) + j);
        d.push_back(std::move(q));
    }
    return ChainComplex(M.ring(), M.lo(), std::move(orders), std::move(d));
}

}  // namespace

std::string FactorizationCertificate::describe() const {
    std::string out = "middle ranks:";
    for (int n = middle.lo(); n <= middle.hi(); ++n) out += " " + std::to_string(n) + ":" + std::to_string(middle.rank(n));
    out += "\nfirst: ";
    out += first_is_trivial_cofibration ? "trivial cofibration" : (first_is_standard_cofibration ? "standard cofibration" : "map");
    out += "\nsecond: ";
    out += second_is_trivial_fibration ? "trivial fibration" : (second_is_fibration ? "fibration" : "map");
    out += "\nstages: " + std::to_string(stages.size()) + "\n";
    for (const auto& s : stages) {
        out += "  stage " + std::to_string(s.stage) + ": " + std::to_string(s.added.size()) + " variables";
        if (!s.killed_degrees.empty()) {
            out += ", killed classes in degree";
            for (int n : s.killed_degrees) out += " " + std::to_string(n);
        }
        out += "\n";
    }
    return out;
}

FactorizationCertificate factor_trivcofib_fib(const ChainMap& f) {
    Staging s(f);
    StageRecord rec;
    rec.stage = 1;
    for (int n = s.Y.lo(); n <= s.Y.hi(); ++n)
        for (int j = 0; j < s.Y.rank(n); ++j) s.add_pair(n, j, rec);
    rec.surjective = s.surjective();
    rec.surjective_on_cycles = s.surjective_on_cycles();
    auto c = finish(f, s);
    c.stages.push_back(rec);
    c.first_is_trivial_cofibration = homology(added_part(f.source(), s.M)).vanishes_in_interior();
    c.second_is_trivial_fibration = c.second_is_fibration && is_quasi_iso(c.second).quasi_iso;
    return c;
}

std::variant<FactorizationCertificate, PartialFactorization> factor_cofib_trivfib(const ChainMap& f, int fuel) {
    if (fuel <= 0) throw ArgumentError("factor_cofib_trivfib: fuel must be positive");
    Staging s(f);
    std::vector<StageRecord> stages;
    auto done = [&]() { return s.surjective() && is_quasi_iso(s.p_map()).quasi_iso; };
    auto certificate = [&]() {
        auto c = finish(f, s);
        c.stages = stages;
        c.second_is_trivial_fibration = done();
        c.first_is_trivial_cofibration = false;
        return c;
    };
    if (done()) return certificate();
    for (int stage = 1; stage <= fuel; ++stage) {
        StageRecord rec;
        rec.stage = stage;
        if (stage == 1) {
            for (int n = s.Y.lo(); n <= s.Y.hi(); ++n) {
                const IntMatrix Zy = cycle_lattice(s.Y, n);
                for (int c = 0; c < Zy.cols(); ++c) {
                    const IntVector z = Zy.column(c);
                    const IntMatrix images = s.p_at(n) * cycle_lattice(s.M, n);
                    if (in_span(images, s.Y.group_orders(n), z)) continue;
                    s.join(IntVector(idx(s.M.rank(n - 1))), n - 1, z, AddedVariable::Kind::cycle, rec);
                }
            }
            for (int n = s.Y.lo(); n <= s.Y.hi(); ++n)
                for (int j = 0; j < s.Y.rank(n); ++j)
                    if (!in_span(s.p_at(n), s.Y.group_orders(n), unit(s.Y.rank(n), j))) s.add_pair(n, j, rec);
        } else {
            // the range is fixed per stage so that each stage kills one new layer at most
            const int top = s.M.hi();
            for (int n = s.M.lo(); n <= top; ++n) {
                // (x, r, y, t): dx = R r in M_{n-1}, p x = dy + R t in Y_n
                const IntMatrix dM = s.M.differential(n);
                const IntMatrix RM = relation_matrix(s.M.group_orders(n - 1));
                const IntMatrix P = s.p_at(n);
                const IntMatrix dY = s.Y.differential(n + 1);
                const IntMatrix RY = relation_matrix(s.Y.group_orders(n));
                const int xm = dM.cols(), rm = RM.cols(), ym = dY.cols(), tm = RY.cols();
                IntMatrix sys(dM.rows() + P.rows(), xm + rm + ym + tm);
                for (int i = 0; i < dM.rows(); ++i) {
                    for (int j = 0; j < xm; ++j) sys(i, j) = dM(i, j);
                    for (int j = 0; j < rm; ++j) sys(i, xm + j) = -RM(i, j);
                }
                for (int i = 0; i < P.rows(); ++i) {
                    for (int j = 0; j < xm; ++j) sys(dM.rows() + i, j) = P(i, j);
                    for (int j = 0; j < ym; ++j) sys(dM.rows() + i, xm + rm + j) = -dY(i, j);
                    for (int j = 0; j < tm; ++j) sys(dM.rows() + i, xm + rm + ym + j) = -RY(i, j);
                }
                const IntMatrix K = kernel_basis(sys);
                bool killed = false;
                for (int c = 0; c < K.cols(); ++c) {
                    IntVector x(idx(xm)), y(idx(ym));
                    for (int j = 0; j < xm; ++j) x[idx(j)] = K(j, c);
                    for (int j = 0; j < ym; ++j) y[idx(j)] = K(xm + rm + j, c);
                    if (in_span(s.M.differential(n + 1), s.M.group_orders(n), x)) continue;
                    s.join(x, n, y, AddedVariable::Kind::kill, rec);
                    killed = true;
                }
                if (killed) rec.killed_degrees.push_back(n);
            }
        }
        rec.surjective = s.surjective();
        rec.surjective_on_cycles = s.surjective_on_cycles();
        const bool progress = !rec.added.empty();
        stages.push_back(std::move(rec));
        if (done()) return certificate();
        if (!progress && stage > 1)
            return PartialFactorization{FuelExhausted{stage, "a stage added no variables"}, certificate()};
    }
    return PartialFactorization{FuelExhausted{fuel, "stage budget exhausted before reaching a trivial fibration"},
                                certificate()};
}

}  // namespace nw
