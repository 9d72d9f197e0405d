#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nerveworks/category.hpp"
#include "nerveworks/sset.hpp"

namespace nw {

enum class HornMode { inner, kan, left, right };

std::string to_string(HornMode mode);

struct HornCount {
    int n = 0;
    int k = 0;
    std::size_t tested = 0;
    std::size_t unfillable = 0;
    std::size_t non_unique = 0;
};

/// A horn map Lambda^n_k -> X, listed cell by cell.
struct HornWitness {
    int n = 0;
    int k = 0;
    SimplicialMap map;
    std::vector<std::pair<std::string, std::string>> assignments;  // horn cell -> X simplex
};

/// Outcome of exhaustive horn filling up to a dimension bound.
struct HornReport {
    int bound = 0;
    HornMode mode = HornMode::inner;
    std::vector<HornCount> counts;
    std::optional<HornWitness> witness;  // first unfillable horn, if any

    bool all_fillable() const;
    /// Every inner horn fills uniquely (the nerve-of-a-category shape).
    bool unique_fillers() const;
    std::string describe() const;
};

/// Raised when a computation needs a lifting property the input lacks.
class LiftingFailure : public std::runtime_error {
public:
    LiftingFailure(const std::string& what, HornWitness witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const HornWitness& witness() const { return witness_; }

private:
    HornWitness witness_;
};

/// Exhaustively enumerates horn maps Lambda^n_k -> X for n <= d (k per mode) and their fillers.
HornReport classify(const SimplicialSet& X, int d, HornMode mode);

enum class HomotopyConvention {
    degenerate_first_edge,  // f ~ g via u with d2 u degenerate, d0 u = f, d1 u = g
    degenerate_last_edge,   // f ~ g via u with d0 u degenerate, d2 u = f, d1 u = g
};

/// Partition of X_1 (indexed like X.simplices(1)) under the closure of the homotopy relation,
/// and whether the raw relation was already an equivalence relation.
struct EdgePartition {
    std::vector<int> class_of;
    int class_count = 0;
    bool relation_is_equivalence = false;
};

EdgePartition homotopy_relation(const SimplicialSet& X, HomotopyConvention convention = HomotopyConvention::degenerate_first_edge);

struct HomotopyCategory {
    FinCategory category;
    std::vector<int> arrow_of_edge;  // X.simplices(1) position -> arrow of `category`
};

/// Ho(X) for a quasicategory (checked through dimension 3). Throws LiftingFailure otherwise.
HomotopyCategory homotopy_category_data(const SimplicialSet& X);
FinCategory homotopy_category(const SimplicialSet& X);

/// Edges whose class in Ho(X) is invertible.
std::vector<Simplex> equivalences(const SimplicialSet& X);

/// The simplicial subset of simplices all of whose edges are equivalences.
Subobject max_kan_subset(const SimplicialSet& X);

enum class HomSide { right, left };

/// Hom^R_X(x, y) (or Hom^L) through dimension d; needs X known through d + 1.
SimplicialSet hom_space(const SimplicialSet& X, int x, int y, HomSide side, int d);

/// pi_0 as vertex classes under edge connectivity.
struct SetReport {
    std::vector<std::vector<int>> classes;
    int class_of_basepoint = 0;
};

struct GroupPresentation {
    enum class Tag { trivial, cyclic, symmetric3, unrecognized };
    std::vector<std::string> generators;
    /// Words over generators; (generator, +1 or -1) letters, each equal to the identity.
    std::vector<std::vector<std::pair<int, int>>> relations;
    /// Cayley table over the generators when the group is given by all its elements.
    std::vector<std::vector<int>> table;
    int identity = 0;
    int order = 0;
    bool abelian = true;
    Tag tag = Tag::unrecognized;
    int cyclic_order = 0;

    std::string describe() const;
};

struct HomotopyGroupOptions {
    std::size_t budget = 100000;  // candidate (n+1)-simplices examined
};

/// pi_n(X, x): a set for n = 0, a group from its multiplication table otherwise.
/// Requires X Kan through dimension n + 2 (throws LiftingFailure with a witness).
std::variant<SetReport, GroupPresentation> homotopy_group(const SimplicialSet& X, int x, int n,
                                                          const HomotopyGroupOptions& options = {});

/// Recognizes a finite group from its Cayley table; throws InconsistencyError if the table is not a group.
GroupPresentation group_from_table(std::vector<std::vector<int>> table, std::vector<std::string> names, int identity);

}  // namespace nw
