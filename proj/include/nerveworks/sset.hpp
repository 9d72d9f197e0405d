#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nerveworks/delta.hpp"

namespace nw {

/// A simplex in Eilenberg-Zilber form: the degeneracy s applied to a nondegenerate cell.
/// `degen` encodes the surjection s : [dim] -> [cell_dim] (bit i set iff s(i) == s(i+1)).
struct Simplex {
    int dim = 0;
    std::uint32_t degen = 0;
    int cell = 0;

    int cell_dim() const;
    bool degenerate() const { return degen != 0; }
    OrdinalMap degeneracy() const { return surjection_from_mask(dim, degen); }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

/// t^*(x) for the surjection t : [n] -> [x.dim] with degeneracy mask t.
Simplex degenerate_by(const Simplex& x, std::uint32_t t, int n);

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        return (static_cast<std::size_t>(s.dim) * 0x9e3779b97f4a7c15ULL) ^
               (static_cast<std::size_t>(s.degen) * 0xc2b2ae3d27d4eb4fULL) ^ static_cast<std::size_t>(s.cell);
    }
};

struct SimplexVectorHash {
    std::size_t operator()(const std::vector<Simplex>& v) const noexcept {
        std::size_t h = v.size();
        SimplexHash sh;
        for (const auto& s : v) h = h * 1000003u ^ sh(s);
        return h;
    }
};

/// Every simplex of a finite simplicial set up to some dimension, with explicit structure tables.
struct ExplicitSimplicialSet {
    int top = 0;
    std::vector<std::size_t> sizes;                                  // level n -> |X_n|
    std::vector<std::vector<std::vector<std::size_t>>> faces;        // [n][x][i] -> index in X_{n-1}
    std::vector<std::vector<std::vector<std::size_t>>> degeneracies; // [n][x][i] -> index in X_{n+1}, n < top
    std::vector<std::vector<std::string>> names;                     // optional labels per level
};

/// Finite (or dimension-truncated) simplicial set stored in Eilenberg-Zilber normal form.
///
/// Only nondegenerate cells are stored. Each face of a cell is a Simplex, i.e. a
/// (surjection, nondegenerate cell) pair. When `truncation()` is empty the set is
/// complete: there are no nondegenerate cells above the top dimension. Otherwise
/// nothing is known about cells above the truncation, and any query that would
/// need them throws ArgumentError.
///
/// Values are immutable and cheap to copy.
class SimplicialSet {
public:
    class Builder;

    SimplicialSet();

    std::optional<int> truncation() const;
    /// True when every simplex of dimension n is determined by the stored data.
    bool known_through(int n) const;
    /// Highest dimension carrying a stored cell (-1 when empty).
    int top_dimension() const;
    int cell_count(int k) const;
    std::size_t total_cells() const;
    bool empty() const { return total_cells() == 0; }

    const std::string& name(int k, int idx) const;
    const std::string& name(const Simplex& cell) const { return name(cell.dim, cell.cell); }
    /// Lowest-dimensional cell with this name (names are unique within a dimension).
    std::optional<Simplex> find(const std::string& name) const;
    std::optional<Simplex> find(int k, const std::string& name) const;

    static Simplex cell(int k, int idx) { return Simplex{k, 0, idx}; }
    /// Stored faces d_0..d_k of a nondegenerate k-cell.
    const std::vector<Simplex>& faces(int k, int idx) const;

    /// a^*(x) for a : [m] -> [x.dim].
    Simplex apply(const OrdinalMap& a, const Simplex& x) const;
    Simplex face(const Simplex& x, int i) const;
    Simplex degeneracy(const Simplex& x, int i) const;
    /// Restriction of x to the vertices listed in `mask` (bit set = kept).
    Simplex restrict_to(const Simplex& x, std::uint32_t mask) const;
    /// Index of the vertex (0-cell) at position k of x.
    int vertex(const Simplex& x, int k) const;
    std::vector<int> vertices(const Simplex& x) const;
    /// Constant n-simplex at a vertex.
    static Simplex constant(int vertex, int n);

    /// All n-simplices, degenerate ones included, in a fixed deterministic order.
    const std::vector<Simplex>& simplices(int n) const;
    /// The n-simplices whose faces are exactly `boundary` (n >= 1), or all vertices for n == 0.
    const std::vector<Simplex>& with_boundary(int n, const std::vector<Simplex>& boundary) const;
    std::vector<Simplex> boundary(const Simplex& x) const;

    std::string describe(const Simplex& x) const;

    /// Structural identity of normal forms, cell names included.
    friend bool operator==(const SimplicialSet& a, const SimplicialSet& b);
    bool same_object(const SimplicialSet& other) const { return data_ == other.data_; }

private:
    struct Data;
    struct Index;
    explicit SimplicialSet(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    const Index& index(int n) const;
    std::shared_ptr<const Data> data_;
};

class SimplicialSet::Builder {
public:
    explicit Builder(std::optional<int> truncation = std::nullopt);
    /// Adds a nondegenerate k-cell with faces d_0..d_k (each a (k-1)-simplex of cells already added).
    int add_cell(int k, std::string name, std::vector<Simplex> faces = {});
    int cell_count(int k) const;
    /// Validates the simplicial identities and returns the finished set.
    SimplicialSet build() const;

private:
    std::optional<int> truncation_;
    std::vector<std::vector<std::pair<std::string, std::vector<Simplex>>>> cells_;
};

/// A map of simplicial sets, determined by the images of the nondegenerate source cells.
class SimplicialMap {
public:
    SimplicialMap() = default;
    /// Validates compatibility with faces; throws ArgumentError otherwise.
    SimplicialMap(SimplicialSet source, SimplicialSet target, std::vector<std::vector<Simplex>> images);

    const SimplicialSet& source() const { return source_; }
    const SimplicialSet& target() const { return target_; }
    const Simplex& image(int k, int idx) const;
    const std::vector<std::vector<Simplex>>& images() const { return images_; }
    Simplex operator()(const Simplex& x) const;

    bool is_injective() const;
    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) { return a.images_ == b.images_; }

    struct Unchecked {};
    SimplicialMap(Unchecked, SimplicialSet source, SimplicialSet target, std::vector<std::vector<Simplex>> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

private:
    SimplicialSet source_;
    SimplicialSet target_;
    std::vector<std::vector<Simplex>> images_;
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
SimplicialMap identity_map(const SimplicialSet& X);
SimplicialMap map_from_empty(const SimplicialSet& X);

enum class StandardKind { simplex, boundary, horn, spine };

/// Delta^n, its boundary, the horn Lambda^n_k (top cell and face d_k removed), or Spine(n).
SimplicialSet standard_object(StandardKind kind, int n, int k = 0);
SimplicialSet standard_simplex(int n);
SimplicialSet empty_simplicial_set();
/// The sub-simplicial set of Delta^n spanned by the listed vertex subsets (closed under faces).
SimplicialSet simplex_subcomplex(int n, const std::function<bool(std::uint32_t)>& keep);
/// The inclusion of the standard object into Delta^n (cells are matched by vertex set).
SimplicialMap standard_inclusion(const SimplicialSet& sub, int n);

/// Cartesian product. When both inputs are complete and no truncation is requested the result is complete.
SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y, std::optional<int> truncation = std::nullopt);
SimplicialSet product(const std::vector<SimplicialSet>& factors, std::optional<int> truncation = std::nullopt);

SimplicialSet disjoint_union(const SimplicialSet& X, const SimplicialSet& Y);

struct Pushout {
    SimplicialSet object;
    SimplicialMap from_first;   // X -> P
    SimplicialMap from_second;  // Y -> P
};

/// Pushout of X <-f- A -g-> Y where at least one leg is injective.
/// Throws UnsupportedInput when neither leg is injective.
Pushout pushout(const SimplicialMap& f, const SimplicialMap& g);

SimplicialSet skeleton(const SimplicialSet& X, int n);
SimplicialSet opposite(const SimplicialSet& X);
/// Simplex of X viewed in X^op.
Simplex opposite_simplex(const Simplex& x);

struct Subobject {
    SimplicialSet object;
    SimplicialMap inclusion;
};

/// The simplicial subset spanned by the kept cells; throws ArgumentError if not closed under faces.
Subobject subobject(const SimplicialSet& X, const std::vector<std::vector<bool>>& keep);
/// The simplicial subset generated by the given cells (closure under faces).
Subobject generated_subobject(const SimplicialSet& X, const std::vector<Simplex>& generators);

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct ExtensionOptions {
    std::size_t limit = kUnlimited;
    /// When set, branch order is shuffled deterministically from this seed.
    std::optional<std::uint64_t> shuffle_seed;
};

/// Visits every extension g : B -> X with g o i = f. Return false from `visit` to stop.
void for_each_extension(const SimplicialMap& i, const SimplicialMap& f,
                        const std::function<bool(const std::vector<std::vector<Simplex>>&)>& visit,
                        std::optional<std::uint64_t> shuffle_seed = std::nullopt);
/// All extensions, truncated at `limit` (limit == 0 is an ArgumentError).
std::vector<SimplicialMap> lift_extensions(const SimplicialMap& i, const SimplicialMap& f, std::size_t limit = kUnlimited);
std::vector<SimplicialMap> lift_extensions(const SimplicialMap& i, const SimplicialMap& f, const ExtensionOptions& options);
std::size_t count_extensions(const SimplicialMap& i, const SimplicialMap& f, std::size_t cap = kUnlimited);
/// All maps B -> X.
std::vector<SimplicialMap> all_maps(const SimplicialSet& B, const SimplicialSet& X, std::size_t limit = kUnlimited);

/// Levelwise bijection test of a candidate map.
bool is_isomorphism(const SimplicialMap& f);
/// Backtracking search for an isomorphism (cells matched by dimension and faces).
std::optional<SimplicialMap> find_isomorphism(const SimplicialSet& X, const SimplicialSet& Y);

/// All simplices through dimension `top` with explicit face/degeneracy tables.
ExplicitSimplicialSet expand(const SimplicialSet& X, int top);
/// Recovers the normal form (nondegenerate = not in the image of any degeneracy).
/// The result is truncated at `explicit.top` unless `complete` is set.
SimplicialSet normalize(const ExplicitSimplicialSet& explicit_set, bool complete = false);

}  // namespace nw
