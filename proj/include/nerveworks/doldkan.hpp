#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nerveworks/linalg.hpp"
#include "nerveworks/sset.hpp"

namespace nw {

enum class RingKind { integers, modular, prime_field };

/// Coefficient ring: Z, Z/m, or the field with p elements.
struct Ring {
    RingKind kind = RingKind::integers;
    Integer modulus = 0;

    static Ring integers() { return {}; }
    static Ring modular(const Integer& m);
    static Ring prime_field(const Integer& p);

    /// Order of a generator as an abelian group (declared order 0 means a free generator over the ring).
    Integer effective(const Integer& declared) const { return declared == 0 ? modulus : declared; }
    std::string describe() const;
    friend bool operator==(const Ring&, const Ring&) = default;
};

/// A bounded chain complex of finitely generated modules over a Ring, in homological indexing.
///
/// Each degree is a direct sum of cyclic modules, one per generator: order 0 is the free
/// module of rank one, a positive order o is R/o (o must divide the ring modulus). The
/// differential d_n : C_n -> C_{n-1} is an integer matrix acting on generator coordinates.
/// `open_below` / `open_above` mark a window that cuts a larger complex, so homology at that
/// edge is an artifact of truncation.
class ChainComplex {
public:
    ChainComplex() = default;
    /// `differentials[k]` is d at degree lo + k (rows = rank of degree lo + k - 1; zero rows at lo).
    ChainComplex(Ring ring, int lo, std::vector<IntVector> orders, std::vector<IntMatrix> differentials,
                 bool open_below = false, bool open_above = false);
    /// All generators free.
    static ChainComplex free(Ring ring, int lo, const std::vector<int>& ranks, std::vector<IntMatrix> differentials,
                             bool open_below = false, bool open_above = false);
    static ChainComplex zero(Ring ring = Ring::integers());

    const Ring& ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(orders_.size()) - 1; }
    bool open_below() const { return open_below_; }
    bool open_above() const { return open_above_; }
    bool in_window(int n) const { return n >= lo() && n <= hi(); }
    int rank(int n) const;
    /// Declared orders in degree n (empty outside the window).
    const IntVector& orders(int n) const;
    /// Orders as abelian groups (modulus substituted for free generators over Z/m).
    IntVector group_orders(int n) const;
    /// d_n : C_n -> C_{n-1} (an empty-shaped matrix outside the window).
    IntMatrix differential(int n) const;
    /// Whether x in C_n is a cycle, modulo the relations of C_{n-1}.
    bool is_cycle(int n, const IntVector& x) const;
    bool equal_in(int n, const IntVector& x, const IntVector& y) const;
    /// Homology in degree n is a truncation artifact.
    bool edge_degree(int n) const { return (open_below_ && n == lo()) || (open_above_ && n == hi()); }

    friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

private:
    Ring ring_;
    int lo_ = 0;
    std::vector<IntVector> orders_;
    std::vector<IntMatrix> d_;
    bool open_below_ = false;
    bool open_above_ = false;
};

struct Homology {
    int lo = 0;
    std::vector<FGAbGroup> groups;  // degree lo + k
    std::vector<bool> edge;         // degree is a window-edge artifact
    const FGAbGroup& at(int n) const { return groups[static_cast<std::size_t>(n - lo)]; }
    bool vanishes_in_interior() const;
    std::string describe() const;
};

/// Homology as abelian groups: Smith normal form over Z (and Z/m through the underlying
/// abelian groups); ranks by elimination modulo p over a prime field.
Homology homology(const ChainComplex& C);

/// A truncated simplicial abelian group with structure maps as integer matrices.
/// Level n is a sum of cyclic groups with the given orders (0 for Z).
class SimplicialAbGroup {
public:
    SimplicialAbGroup() = default;
    /// faces[n][i] : A_n -> A_{n-1} for 1 <= n <= D (faces[0] empty);
    /// degeneracies[n][i] : A_n -> A_{n+1} for n < D. Validates the simplicial identities.
    SimplicialAbGroup(std::vector<IntVector> orders, std::vector<std::vector<IntMatrix>> faces,
                      std::vector<std::vector<IntMatrix>> degeneracies);

    /// The constant simplicial group on (+) Z/o_j.
    static SimplicialAbGroup constant(const IntVector& orders, int D);
    /// Z[X] through dimension D, with basis X.simplices(n) in level n.
    static SimplicialAbGroup free_abelian(const SimplicialSet& X, int D);

    int truncation() const { return static_cast<int>(orders_.size()) - 1; }
    /// Zero outside levels 0..D.
    int rank(int n) const { return n < 0 || n > truncation() ? 0 : static_cast<int>(orders_[static_cast<std::size_t>(n)].size()); }
    const IntVector& orders(int n) const;
    const IntMatrix& face(int n, int i) const { return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }
    const IntMatrix& degeneracy(int n, int i) const {
        return degeneracies_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    }
    /// Least nonnegative representative coordinates.
    IntVector reduce(int n, const IntVector& x) const;
    bool equal_in(int n, const IntVector& x, const IntVector& y) const;

private:
    std::vector<IntVector> orders_;
    std::vector<std::vector<IntMatrix>> faces_;
    std::vector<std::vector<IntMatrix>> degeneracies_;
};

/// The Moore complex together with each degree's generators as vectors of A_n.
struct NormalizedChains {
    ChainComplex complex;
    std::vector<Subquotient> presentation;  // degree n: (intersection of ker d_i, i >= 1) inside A_n
};

NormalizedChains normalized_chains_data(const SimplicialAbGroup& A);
/// N_n = intersection of ker d_i for i >= 1, differential d_0; window [0, D] open above.
ChainComplex normalized_chains(const SimplicialAbGroup& A);

/// Basis of Gamma(C)_n: (surjection mask on [n], generator of C_{n - popcount(mask)}), in storage order.
struct GammaBasisElement {
    std::uint32_t mask = 0;
    int degree = 0;
    int generator = 0;
};
std::vector<GammaBasisElement> gamma_basis(const ChainComplex& C, int n);

/// Gamma(C)_n = sum over surjections [n] -> [k] of C_k, through level D.
/// Throws ArgumentError when C has terms below degree 0.
SimplicialAbGroup dold_kan_gamma(const ChainComplex& C, int D);

/// Faces y_j (j != k) of a horn in A_{n-1}; the entry at k is ignored.
struct HornData {
    int n = 0;
    int k = 0;
    std::vector<IntVector> faces;
};

/// A filler x in A_n with d_j x = y_j for j != k, built by successively correcting with degeneracies.
/// Throws ArgumentError when the horn faces are not compatible.
IntVector simplicial_group_kan_fill(const SimplicialAbGroup& A, const HornData& horn);

}  // namespace nw
