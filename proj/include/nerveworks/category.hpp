#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nerveworks/sset.hpp"

namespace nw {

struct ArrowSpec {
    std::string name;
    int source = 0;
    int target = 0;
    friend bool operator==(const ArrowSpec&, const ArrowSpec&) = default;
};

/// A finite category stored as a composition table.
///
/// compose(g, f) is "f then g" and is defined when target(f) == source(g).
class FinCategory {
public:
    FinCategory() = default;
    /// `table[g][f]` is the index of g o f, or -1 when not composable.
    /// Throws ArgumentError when the unit or associativity laws fail.
    FinCategory(std::vector<std::string> objects, std::vector<ArrowSpec> arrows, std::vector<int> identities,
                std::vector<std::vector<int>> table);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& object_name(int x) const { return objects_[static_cast<std::size_t>(x)]; }
    const std::string& arrow_name(int a) const { return arrows_[static_cast<std::size_t>(a)].name; }
    const std::vector<std::string>& object_names() const { return objects_; }
    const std::vector<ArrowSpec>& arrows() const { return arrows_; }
    int source(int a) const { return arrows_[static_cast<std::size_t>(a)].source; }
    int target(int a) const { return arrows_[static_cast<std::size_t>(a)].target; }
    int identity(int x) const { return identities_[static_cast<std::size_t>(x)]; }
    bool is_identity(int a) const { return identity(source(a)) == a; }
    /// g o f; throws ArgumentError when not composable.
    int compose(int g, int f) const;
    /// g o f or -1.
    int try_compose(int g, int f) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)]; }
    const std::vector<int>& hom(int x, int y) const;

    std::optional<int> find_object(const std::string& name) const;
    std::optional<int> find_arrow(const std::string& name) const;

    std::optional<int> inverse(int a) const;
    bool is_iso(int a) const { return inverse(a).has_value(); }
    bool is_groupoid() const;

    friend bool operator==(const FinCategory&, const FinCategory&) = default;

private:
    std::vector<std::string> objects_;
    std::vector<ArrowSpec> arrows_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> table_;
    std::vector<std::vector<int>> homs_;  // [x * n + y]
};

/// Assembles a category from generating data: identities are added as "id_<object>" and
/// `compose` supplies g o f for non-identity composable pairs (by arrow names).
struct CategoryBuilder {
    std::vector<std::string> objects;
    std::vector<ArrowSpec> arrows;  // non-identity arrows
    struct Composite {
        std::string g, f, result;  // result = g o f
    };
    std::vector<Composite> compose;
    FinCategory build() const;
};

class Functor {
public:
    Functor() = default;
    /// Throws ArgumentError unless sources, targets, identities and composites are preserved.
    Functor(FinCategory source, FinCategory target, std::vector<int> objects, std::vector<int> arrows);

    const FinCategory& source() const { return source_; }
    const FinCategory& target() const { return target_; }
    int object(int x) const { return objects_[static_cast<std::size_t>(x)]; }
    int arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
    const std::vector<int>& object_map() const { return objects_; }
    const std::vector<int>& arrow_map() const { return arrows_; }

    friend bool operator==(const Functor& a, const Functor& b) {
        return a.objects_ == b.objects_ && a.arrows_ == b.arrows_;
    }

    struct Unchecked {};
    Functor(Unchecked, FinCategory source, FinCategory target, std::vector<int> objects, std::vector<int> arrows)
        : source_(std::move(source)), target_(std::move(target)), objects_(std::move(objects)), arrows_(std::move(arrows)) {}

private:
    FinCategory source_;
    FinCategory target_;
    std::vector<int> objects_;
    std::vector<int> arrows_;
};

Functor compose(const Functor& g, const Functor& f);
Functor identity_functor(const FinCategory& C);

struct RelativeCategory {
    FinCategory category;
    std::vector<bool> weak;  // per arrow
    /// Throws ArgumentError unless identities are weak (and, when requested, weak arrows compose).
    void validate(bool require_subcategory = false) const;
    static RelativeCategory with_weak(FinCategory C, const std::vector<int>& weak_arrows);
    static RelativeCategory minimal(FinCategory C);
    static RelativeCategory isomorphisms(FinCategory C);
};

// Standard categories.
/// The poset [n] = {0 < 1 < ... < n}.
FinCategory poset_category(int n);
/// A finite preorder given by leq[x][y]; arrows are named "x->y".
FinCategory preorder_category(const std::vector<std::string>& objects, const std::vector<std::vector<bool>>& leq);
FinCategory discrete_category(int n);
FinCategory terminal_category();
/// One object whose arrows are the elements of a monoid; `table[a][b]` = a * b (first b, then a).
/// Element 0 must be the unit. Throws ArgumentError when the table is not a monoid.
FinCategory bg(const std::vector<std::vector<int>>& table, std::vector<std::string> names = {});
/// Multiplication table of Z/n (unit 0).
std::vector<std::vector<int>> cyclic_group_table(int n);
/// Multiplication table of the symmetric group on three letters (unit first).
std::vector<std::vector<int>> symmetric3_table();

FinCategory product(const FinCategory& C, const FinCategory& D);
FinCategory opposite(const FinCategory& C);
/// The subcategory on the kept arrows (must contain the identities of kept objects and be closed).
FinCategory subcategory(const FinCategory& C, const std::vector<bool>& keep_arrows);
FinCategory max_subgroupoid(const FinCategory& C);

/// Simplicial nerve truncated at dimension d.
SimplicialSet nerve(const FinCategory& C, int d);
/// The chain (a_1, ..., a_k) of a nerve simplex; for vertices, the identity of the object.
std::vector<int> nerve_chain(const FinCategory& C, const SimplicialSet& N, const Simplex& s);
/// The simplex of the nerve named by a composable chain of arrows (identities allowed).
Simplex nerve_simplex(const FinCategory& C, const SimplicialSet& N, const std::vector<int>& chain);
SimplicialMap nerve_map(const Functor& F, const SimplicialSet& source_nerve, const SimplicialSet& target_nerve);

/// Every functor C -> D, in a deterministic order.
std::vector<Functor> all_functors(const FinCategory& C, const FinCategory& D, std::size_t limit = kUnlimited);
std::optional<Functor> find_isomorphism(const FinCategory& C, const FinCategory& D);

struct FuelExhausted {
    int rounds = 0;
    std::string reason;
};

struct Localization {
    FinCategory category;
    Functor unit;  // C -> C[W^-1]
    int rounds = 0;
};

/// C[W^-1] by completion of the zig-zag rewriting system; FuelExhausted when `fuel` rounds do not suffice.
std::variant<Localization, FuelExhausted> localize(const RelativeCategory& R, int fuel);

std::string describe(const FinCategory& C);

}  // namespace nw
