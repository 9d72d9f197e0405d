#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nerveworks/category.hpp"
#include "nerveworks/sset.hpp"

namespace nw {

struct SimplexPairHash {
    std::size_t operator()(const std::pair<Simplex, Simplex>& p) const noexcept {
        return SimplexHash{}(p.first) * 1000003u ^ SimplexHash{}(p.second);
    }
};

/// g o f on pairs of simplices of equal dimension with no common degeneracy.
using CompositionTable = std::unordered_map<std::pair<Simplex, Simplex>, Simplex, SimplexPairHash>;

/// A category enriched in finite simplicial sets.
///
/// Composition Map(y,z) x Map(x,y) -> Map(x,z) is stored on the nondegenerate simplices
/// of the product (pairs with disjoint degeneracy masks); other pairs reduce to those.
class SimplicialCategory {
public:
    using ComposeFn = std::function<Simplex(int x, int y, int z, const Simplex& g, const Simplex& f)>;

    SimplicialCategory() = default;
    /// Tabulates `compose` and validates simpliciality, units and associativity.
    SimplicialCategory(std::vector<std::string> objects, std::vector<SimplicialSet> maps, std::vector<int> identities,
                       const ComposeFn& compose);
    /// From explicit tables (indexed by (x * n + y) * n + z); validated the same way.
    SimplicialCategory(std::vector<std::string> objects, std::vector<SimplicialSet> maps, std::vector<int> identities,
                       std::vector<CompositionTable> tables);

    /// Discrete mapping spaces on the hom-sets of an ordinary category.
    static SimplicialCategory from_category(const FinCategory& C);

    int object_count() const { return static_cast<int>(objects_.size()); }
    const std::string& object_name(int x) const { return objects_[static_cast<std::size_t>(x)]; }
    const std::vector<std::string>& object_names() const { return objects_; }
    const SimplicialSet& map(int x, int y) const { return maps_[static_cast<std::size_t>(x * object_count() + y)]; }
    /// Vertex index of the identity in Map(x, x).
    int identity(int x) const { return identities_[static_cast<std::size_t>(x)]; }
    /// g o f for g in Map(y,z), f in Map(x,y) of equal dimension.
    Simplex compose(int x, int y, int z, const Simplex& g, const Simplex& f) const;
    const CompositionTable& table(int x, int y, int z) const {
        return tables_[static_cast<std::size_t>((x * object_count() + y) * object_count() + z)];
    }
    /// Minimum truncation of the mapping spaces (nullopt when all are complete).
    std::optional<int> truncation() const;

private:
    void validate() const;
    std::vector<std::string> objects_;
    std::vector<SimplicialSet> maps_;
    std::vector<int> identities_;
    std::vector<CompositionTable> tables_;
};

/// Highest dimension of product cells that composition tables must cover for Map(y,z) x Map(x,y).
int composition_bound(const SimplicialSet& a, const SimplicialSet& b);

/// The simplicial category c[n]: Map(i,j) is the nerve of the poset of subsets of {i..j} containing i and j.
SimplicialCategory frak_c(int n);

/// Vertex set of a cell of Map_{c[n]}(i,j) as bitmasks of {0..n}, one per vertex.
std::vector<std::uint32_t> frak_c_chain(const SimplicialCategory& cn, int i, int j, const Simplex& s);

struct HornMapspace {
    SimplicialSet sub;
    SimplicialSet ambient;
    SimplicialMap inclusion;
};

/// The cube (Delta^1)^{n-1} = Map_{c[n]}(0,n) and its boundary with the open face x_i = 1 removed.
HornMapspace horn_mapspace(int n, int i);

/// The homotopy coherent nerve truncated at d: n-cells are simplicial functors c[n] -> C.
SimplicialSet coherent_nerve(const SimplicialCategory& C, int d);

/// Objects of C; arrows are path components of the mapping spaces.
FinCategory pi0_category(const SimplicialCategory& C);

}  // namespace nw
