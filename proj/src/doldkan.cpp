#include "nerveworks/doldkan.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "nerveworks/error.hpp"

namespace nw {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

bool is_prime(const Integer& p) {
    if (p < 2) return false;
    for (Integer d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    IntVector c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

IntVector add(const IntVector& a, const IntVector& b) {
    IntVector c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

bool zero_mod(const IntVector& v, const IntVector& orders) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (reduce(v[i], orders[i]) != 0) return false;
    return true;
}

/// Every column of order o (o > 0) must map into the relations of the target.
bool well_defined(const IntMatrix& f, const IntVector& source, const IntVector& target) {
    for (int j = 0; j < f.cols(); ++j) {
        if (source[idx(j)] == 0) continue;
        for (int i = 0; i < f.rows(); ++i)
            if (reduce(f(i, j) * source[idx(j)], target[idx(i)]) != 0) return false;
    }
    return true;
}

}  // namespace

Ring Ring::modular(const Integer& m) {
    if (m < 2) throw ArgumentError("Z/m needs m >= 2");
    return Ring{RingKind::modular, m};
}

Ring Ring::prime_field(const Integer& p) {
    if (!is_prime(p)) throw ArgumentError("prime field needs a prime, got " + p.str());
    return Ring{RingKind::prime_field, p};
}

std::string Ring::describe() const {
    switch (kind) {
        case RingKind::integers: return "Z";
        case RingKind::modular: return "Z/" + modulus.str();
        case RingKind::prime_field: return "F_" + modulus.str();
    }
    return "?";
}

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<IntVector> generator_orders, std::vector<IntMatrix> differentials,
                           bool open_below, bool open_above)
    : ring_(std::move(ring)), lo_(lo), orders_(std::move(generator_orders)), d_(std::move(differentials)),
      open_below_(open_below), open_above_(open_above) {
    if (orders_.size() != d_.size()) throw ArgumentError("ChainComplex: one differential per degree is required");
    for (int n = lo_; n <= hi(); ++n)
        for (const auto& o : orders(n)) {
            if (o < 0) throw ArgumentError("ChainComplex: negative generator order in degree " + std::to_string(n));
            if (ring_.kind != RingKind::integers && o != 0 && ring_.modulus % o != 0)
                throw ArgumentError("ChainComplex: generator order " + o.str() + " does not divide " + ring_.modulus.str());
        }
    for (int n = lo_; n <= hi(); ++n) {
        const auto& d = d_[idx(n - lo_)];
        if (d.rows() != rank(n - 1) || d.cols() != rank(n))
            throw ArgumentError("ChainComplex: differential in degree " + std::to_string(n) + " has the wrong shape");
        if (!well_defined(d, group_orders(n), group_orders(n - 1)))
            throw ArgumentError("ChainComplex: differential in degree " + std::to_string(n) + " is not well defined");
        if (n - 1 >= lo_ && !zero_modulo(differential(n - 1) * d, group_orders(n - 2)))
            throw ArgumentError("ChainComplex: d o d is not zero in degree " + std::to_string(n));
    }
}

ChainComplex ChainComplex::free(Ring ring, int lo, const std::vector<int>& ranks, std::vector<IntMatrix> differentials,
                                bool open_below, bool open_above) {
    std::vector<IntVector> orders;
    for (int r : ranks) orders.emplace_back(idx(r), Integer(0));
    return ChainComplex(std::move(ring), lo, std::move(orders), std::move(differentials), open_below, open_above);
}

ChainComplex ChainComplex::zero(Ring ring) { return ChainComplex(std::move(ring), 0, {}, {}); }

int ChainComplex::rank(int n) const { return in_window(n) ? static_cast<int>(orders_[idx(n - lo_)].size()) : 0; }

const IntVector& ChainComplex::orders(int n) const {
    static const IntVector empty;
    return in_window(n) ? orders_[idx(n - lo_)] : empty;
}

IntVector ChainComplex::group_orders(int n) const {
    IntVector out;
    for (const auto& o : orders(n)) out.push_back(ring_.effective(o));
    return out;
}

IntMatrix ChainComplex::differential(int n) const {
    if (in_window(n)) return d_[idx(n - lo_)];
    return IntMatrix(rank(n - 1), rank(n));
}

bool ChainComplex::is_cycle(int n, const IntVector& x) const {
    if (static_cast<int>(x.size()) != rank(n)) throw ArgumentError("is_cycle: vector of the wrong length");
    return zero_mod(differential(n) * x, group_orders(n - 1));
}

bool ChainComplex::equal_in(int n, const IntVector& x, const IntVector& y) const {
    return zero_mod(sub(x, y), group_orders(n));
}

bool Homology::vanishes_in_interior() const {
    for (std::size_t k = 0; k < groups.size(); ++k)
        if (!edge[k] && !groups[k].trivial()) return false;
    return true;
}

std::string Homology::describe() const {
    std::string out;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        out += "H_" + std::to_string(lo + static_cast<int>(k)) + " = " + groups[k].describe();
        if (edge[k]) out += " (window edge)";
        out += "\n";
    }
    return out;
}

Homology homology(const ChainComplex& C) {
    Homology h;
    h.lo = C.lo();
    const bool field = C.ring().kind == RingKind::prime_field;
    for (int n = C.lo(); n <= C.hi(); ++n) {
        h.edge.push_back(C.edge_degree(n));
        const IntMatrix dn = C.differential(n);
        const IntMatrix up = C.differential(n + 1);
        if (field) {
            const Integer& p = C.ring().modulus;
            const int dim = C.rank(n) - (dn.rows() ? rank_mod(dn, p) : 0) - (up.cols() ? rank_mod(up, p) : 0);
            h.groups.push_back(FGAbGroup{IntVector(idx(dim), p)});
            continue;
        }
        const IntVector below = C.group_orders(n - 1);
        const IntMatrix Rb = relation_matrix(below);
        IntMatrix neg(Rb.rows(), Rb.cols());
        for (int i = 0; i < Rb.rows(); ++i)
            for (int j = 0; j < Rb.cols(); ++j) neg(i, j) = -Rb(i, j);
        const IntMatrix K = kernel_basis(IntMatrix::hconcat(dn, neg));
        IntMatrix L(C.rank(n), K.cols());
        for (int i = 0; i < C.rank(n); ++i)
            for (int j = 0; j < K.cols(); ++j) L(i, j) = K(i, j);
        const IntMatrix R = IntMatrix::hconcat(up, relation_matrix(C.group_orders(n)));
        h.groups.push_back(Subquotient(C.rank(n), L, R).group());
    }
    return h;
}

SimplicialAbGroup::SimplicialAbGroup(std::vector<IntVector> level_orders, std::vector<std::vector<IntMatrix>> faces,
                                     std::vector<std::vector<IntMatrix>> degeneracies)
    : orders_(std::move(level_orders)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies)) {
    const int D = truncation();
    if (D < 0) throw ArgumentError("SimplicialAbGroup: at least level 0 is required");
    if (faces_.size() != idx(D + 1) || degeneracies_.size() != idx(D + 1))
        throw ArgumentError("SimplicialAbGroup: faces and degeneracies must be listed for every level");
    for (int n = 0; n <= D; ++n) {
        for (const auto& o : orders_[idx(n)])
            if (o < 0) throw ArgumentError("SimplicialAbGroup: negative order");
        if (faces_[idx(n)].size() != (n == 0 ? 0u : idx(n + 1)))
            throw ArgumentError("SimplicialAbGroup: level " + std::to_string(n) + " needs n + 1 faces");
        if (degeneracies_[idx(n)].size() != (n == D ? 0u : idx(n + 1)))
            throw ArgumentError("SimplicialAbGroup: level " + std::to_string(n) + " needs n + 1 degeneracies");
        for (const auto& f : faces_[idx(n)])
            if (f.rows() != rank(n - 1) || f.cols() != rank(n) || !well_defined(f, orders(n), orders(n - 1)))
                throw ArgumentError("SimplicialAbGroup: bad face map at level " + std::to_string(n));
        for (const auto& s : degeneracies_[idx(n)])
            if (s.rows() != rank(n + 1) || s.cols() != rank(n) || !well_defined(s, orders(n), orders(n + 1)))
                throw ArgumentError("SimplicialAbGroup: bad degeneracy map at level " + std::to_string(n));
    }
    auto same = [this](int level, const IntMatrix& a, const IntMatrix& b) {
        return zero_modulo(a - b, orders(level));
    };
    auto fail = [](const std::string& what, int n) {
        throw ArgumentError("SimplicialAbGroup: identity " + what + " fails at level " + std::to_string(n));
    };
    for (int n = 2; n <= D; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (!same(n - 2, face(n - 1, i) * face(n, j), face(n - 1, j - 1) * face(n, i))) fail("d_i d_j", n);
    for (int n = 0; n < D; ++n) {
        const IntMatrix I = IntMatrix::identity(rank(n));
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                const IntMatrix lhs = face(n + 1, i) * degeneracy(n, j);
                if (i == j || i == j + 1) {
                    if (!same(n, lhs, I)) fail("d_j s_j", n);
                } else if (i < j) {
                    if (!same(n, lhs, degeneracy(n - 1, j - 1) * face(n, i))) fail("d_i s_j", n);
                } else if (!same(n, lhs, degeneracy(n - 1, j) * face(n, i - 1))) {
                    fail("d_i s_j", n);
                }
            }
    }
    for (int n = 0; n + 2 <= D; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!same(n + 2, degeneracy(n + 1, i) * degeneracy(n, j), degeneracy(n + 1, j + 1) * degeneracy(n, i)))
                    fail("s_i s_j", n);
}

SimplicialAbGroup SimplicialAbGroup::constant(const IntVector& orders, int D) {
    if (D < 0) throw ArgumentError("constant: D must be nonnegative");
    const IntMatrix I = IntMatrix::identity(static_cast<int>(orders.size()));
    std::vector<IntVector> os(idx(D + 1), orders);
    std::vector<std::vector<IntMatrix>> faces(idx(D + 1)), degens(idx(D + 1));
    for (int n = 0; n <= D; ++n) {
        if (n > 0) faces[idx(n)].assign(idx(n + 1), I);
        if (n < D) degens[idx(n)].assign(idx(n + 1), I);
    }
    return SimplicialAbGroup(std::move(os), std::move(faces), std::move(degens));
}

SimplicialAbGroup SimplicialAbGroup::free_abelian(const SimplicialSet& X, int D) {
    if (D < 0) throw ArgumentError("free_abelian: D must be nonnegative");
    if (!X.known_through(D)) throw ArgumentError("free_abelian: the simplicial set is truncated below D");
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> pos(idx(D + 1));
    std::vector<IntVector> orders;
    for (int n = 0; n <= D; ++n) {
        const auto& s = X.simplices(n);
        for (std::size_t p = 0; p < s.size(); ++p) pos[idx(n)][s[p]] = static_cast<int>(p);
        orders.emplace_back(s.size(), Integer(0));
    }
    std::vector<std::vector<IntMatrix>> faces(idx(D + 1)), degens(idx(D + 1));
    for (int n = 0; n <= D; ++n) {
        const auto& s = X.simplices(n);
        for (int i = 0; n > 0 && i <= n; ++i) {
            IntMatrix f(static_cast<int>(X.simplices(n - 1).size()), static_cast<int>(s.size()));
            for (std::size_t p = 0; p < s.size(); ++p) f(pos[idx(n - 1)].at(X.face(s[p], i)), static_cast<int>(p)) = 1;
            faces[idx(n)].push_back(std::move(f));
        }
        for (int i = 0; n < D && i <= n; ++i) {
            IntMatrix g(static_cast<int>(X.simplices(n + 1).size()), static_cast<int>(s.size()));
            for (std::size_t p = 0; p < s.size(); ++p)
                g(pos[idx(n + 1)].at(X.degeneracy(s[p], i)), static_cast<int>(p)) = 1;
            degens[idx(n)].push_back(std::move(g));
        }
    }
    return SimplicialAbGroup(std::move(orders), std::move(faces), std::move(degens));
}

const IntVector& SimplicialAbGroup::orders(int n) const {
    static const IntVector empty;
    return n < 0 || n > truncation() ? empty : orders_[idx(n)];
}

IntVector SimplicialAbGroup::reduce(int n, const IntVector& x) const {
    IntVector out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = nw::reduce(out[i], orders(n)[i]);
    return out;
}

bool SimplicialAbGroup::equal_in(int n, const IntVector& x, const IntVector& y) const {
    return zero_mod(sub(x, y), orders(n));
}

NormalizedChains normalized_chains_data(const SimplicialAbGroup& A) {
    const int D = A.truncation();
    NormalizedChains out;
    for (int n = 0; n <= D; ++n) {
        const int r = A.rank(n);
        IntMatrix L;
        if (n == 0) {
            L = IntMatrix::identity(r);
        } else {
            // x with d_i x in the relations of A_{n-1} for all i >= 1
            const IntMatrix Rb = relation_matrix(A.orders(n - 1));
            const int rb = A.rank(n - 1);
            IntMatrix M(n * rb, r + n * Rb.cols());
            for (int i = 1; i <= n; ++i)
                for (int a = 0; a < rb; ++a) {
                    for (int j = 0; j < r; ++j) M((i - 1) * rb + a, j) = A.face(n, i)(a, j);
                    for (int c = 0; c < Rb.cols(); ++c) M((i - 1) * rb + a, r + (i - 1) * Rb.cols() + c) = -Rb(a, c);
                }
            const IntMatrix K = kernel_basis(M);
            L = IntMatrix(r, K.cols());
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < K.cols(); ++j) L(i, j) = K(i, j);
        }
        out.presentation.emplace_back(r, L, relation_matrix(A.orders(n)));
    }
    std::vector<IntVector> orders;
    std::vector<IntMatrix> d;
    for (int n = 0; n <= D; ++n) {
        const auto& P = out.presentation[idx(n)];
        orders.push_back(P.orders());
        if (n == 0) {
            d.emplace_back(0, P.generator_count());
            continue;
        }
        const auto& Q = out.presentation[idx(n - 1)];
        IntMatrix m(Q.generator_count(), P.generator_count());
        for (int t = 0; t < P.generator_count(); ++t) {
            const IntVector c = Q.coordinates(A.face(n, 0) * P.generator(t));
            for (int i = 0; i < Q.generator_count(); ++i) m(i, t) = c[idx(i)];
        }
        d.push_back(std::move(m));
    }
    out.complex = ChainComplex(Ring::integers(), 0, std::move(orders), std::move(d), false, true);
    return out;
}

ChainComplex normalized_chains(const SimplicialAbGroup& A) { return normalized_chains_data(A).complex; }

std::vector<GammaBasisElement> gamma_basis(const ChainComplex& C, int n) {
    if (n < 0 || n > 16) throw ArgumentError("gamma_basis: level out of range");
    std::vector<GammaBasisElement> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = n - std::popcount(mask);
        for (int g = 0; g < C.rank(k); ++g) out.push_back({mask, k, g});
    }
    return out;
}

SimplicialAbGroup dold_kan_gamma(const ChainComplex& C, int D) {
    if (D < 0) throw ArgumentError("dold_kan_gamma: D must be nonnegative");
    for (int n = C.lo(); n < 0 && n <= C.hi(); ++n)
        if (C.rank(n) > 0) throw ArgumentError("dold_kan_gamma: the complex has terms in negative degree");
    std::vector<std::vector<GammaBasisElement>> basis;
    std::vector<std::map<std::tuple<std::uint32_t, int, int>, int>> where(idx(D + 1));
    std::vector<IntVector> orders;
    for (int n = 0; n <= D; ++n) {
        basis.push_back(gamma_basis(C, n));
        IntVector o;
        for (std::size_t p = 0; p < basis.back().size(); ++p) {
            const auto& e = basis.back()[p];
            where[idx(n)][{e.mask, e.degree, e.generator}] = static_cast<int>(p);
            o.push_back(C.ring().effective(C.orders(e.degree)[idx(e.generator)]));
        }
        orders.push_back(std::move(o));
    }
    // theta^* : Gamma_n -> Gamma_m for monotone theta : [m] -> [n]
    auto structure = [&](int n, const OrdinalMap& theta) {
        const int m = theta.source();
        IntMatrix M(static_cast<int>(basis[idx(m)].size()), static_cast<int>(basis[idx(n)].size()));
        for (std::size_t col = 0; col < basis[idx(n)].size(); ++col) {
            const auto& e = basis[idx(n)][col];
            const OrdinalMap sigma = surjection_from_mask(n, e.mask);
            const OrdinalMap v = compose(sigma, theta);
            const auto em = epi_mono_factorize(v);
            const std::uint32_t tau = em.epi.degeneracy_mask();
            const std::uint32_t image = v.image_mask();
            const std::uint32_t full = (1u << (e.degree + 1)) - 1u;
            if (image == full) {
                M(where[idx(m)].at({tau, e.degree, e.generator}), static_cast<int>(col)) += 1;
            } else if (e.degree >= 1 && image == (full & ~1u)) {
                const IntMatrix d = C.differential(e.degree);
                for (int g = 0; g < d.rows(); ++g)
                    if (d(g, e.generator) != 0)
                        M(where[idx(m)].at({tau, e.degree - 1, g}), static_cast<int>(col)) += d(g, e.generator);
            }
        }
        return M;
    };
    std::vector<std::vector<IntMatrix>> faces(idx(D + 1)), degens(idx(D + 1));
    for (int n = 0; n <= D; ++n) {
        for (int i = 0; n > 0 && i <= n; ++i) faces[idx(n)].push_back(structure(n, OrdinalMap::face(n, i)));
        for (int i = 0; n < D && i <= n; ++i) degens[idx(n)].push_back(structure(n, OrdinalMap::degeneracy(n + 1, i)));
    }
    return SimplicialAbGroup(std::move(orders), std::move(faces), std::move(degens));
}

IntVector simplicial_group_kan_fill(const SimplicialAbGroup& A, const HornData& horn) {
    const int n = horn.n, k = horn.k;
    if (n < 1 || n > A.truncation() || k < 0 || k > n) throw ArgumentError("kan_fill: horn index out of range");
    if (horn.faces.size() != idx(n + 1)) throw ArgumentError("kan_fill: expected n + 1 face slots");
    for (int j = 0; j <= n; ++j)
        if (j != k && static_cast<int>(horn.faces[idx(j)].size()) != A.rank(n - 1))
            throw ArgumentError("kan_fill: face " + std::to_string(j) + " has the wrong length");
    for (int j = 0; n >= 2 && j <= n; ++j)
        for (int i = 0; i < j; ++i) {
            if (i == k || j == k) continue;
            if (!A.equal_in(n - 2, A.face(n - 1, i) * horn.faces[idx(j)], A.face(n - 1, j - 1) * horn.faces[idx(i)]))
                throw ArgumentError("kan_fill: faces " + std::to_string(i) + " and " + std::to_string(j) + " do not match");
        }
    IntVector x(idx(A.rank(n)));
    for (int j = 0; j < k; ++j) {
        const IntVector u = sub(horn.faces[idx(j)], A.face(n, j) * x);
        x = add(x, A.degeneracy(n - 1, j) * u);
    }
    for (int j = n; j > k; --j) {
        const IntVector u = sub(horn.faces[idx(j)], A.face(n, j) * x);
        x = add(x, A.degeneracy(n - 1, j - 1) * u);
    }
    x = A.reduce(n, x);
    for (int j = 0; j <= n; ++j)
        if (j != k && !A.equal_in(n - 1, A.face(n, j) * x, horn.faces[idx(j)]))
            throw InconsistencyError("kan_fill: constructed filler misses face " + std::to_string(j));
    return x;
}

}  // namespace nw
