#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nerveworks/category.hpp"
#include "nerveworks/doldkan.hpp"

namespace nw {

/// A chain map given by one matrix per degree of the union of the two windows.
class ChainMap {
public:
    ChainMap() = default;
    /// `matrices[k]` acts in degree lo + k where lo = min(source.lo(), target.lo()).
    /// Throws ArgumentError unless the map is well defined and commutes with the differentials.
    ChainMap(ChainComplex source, ChainComplex target, std::vector<IntMatrix> matrices);
    static ChainMap identity(const ChainComplex& C);
    static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(f_.size()) - 1; }
    /// The matrix in degree n (zero-shaped outside the windows).
    IntMatrix at(int n) const;
    const std::vector<IntMatrix>& matrices() const { return f_; }
    /// Degreewise equality modulo the relations of the target.
    bool equals(const ChainMap& other) const;

private:
    ChainComplex source_;
    ChainComplex target_;
    int lo_ = 0;
    std::vector<IntMatrix> f_;
};

/// g o f.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// Cone(f)_n = X_{n-1} + Y_n with d(x, y) = (-dx, f x + dy).
ChainComplex cone(const ChainMap& f);

struct QuasiIsoVerdict {
    bool quasi_iso = false;               // cone homology vanishes in every conclusive degree
    Homology cone_homology;
    std::vector<int> inconclusive_degrees;  // cone degrees affected by a window cut
    std::vector<int> failing_degrees;
    std::string describe() const;
};

/// Throws ArgumentError when the rings differ.
QuasiIsoVerdict is_quasi_iso(const ChainMap& f);

struct JoinResult {
    ChainComplex complex;
    ChainMap inclusion;
    int degree = 0;  // degree of the new generator u (n + 1)
    int index = 0;   // its position among the generators of that degree
};

/// X<u; du = z> for a cycle z in degree n; u is free in degree n + 1.
/// Throws ArgumentError when z is not a cycle.
JoinResult join_variable(const ChainComplex& X, const IntVector& z, int n);

struct AddedVariable {
    enum class Kind { cycle, boundary_pair, kill };
    Kind kind = Kind::cycle;
    int degree = 0;
    IntVector boundary;  // du, in the middle complex one degree lower
    IntVector image;     // p(u) in the target
};

struct StageRecord {
    int stage = 0;
    std::vector<AddedVariable> added;
    bool surjective = false;            // p surjective in every degree
    bool surjective_on_cycles = false;  // p maps cycles onto cycles
    std::vector<int> killed_degrees;    // degrees where homology classes mapping to boundaries were killed
};

struct FactorizationCertificate {
    ChainComplex middle;
    ChainMap first;   // X -> middle
    ChainMap second;  // middle -> Y
    bool first_is_trivial_cofibration = false;
    bool first_is_standard_cofibration = false;
    bool second_is_fibration = false;          // surjective in every degree
    bool second_is_trivial_fibration = false;  // surjective quasi-isomorphism
    /// For each target generator (degree, index): a middle vector mapping onto it.
    std::vector<std::pair<std::pair<int, int>, IntVector>> surjectivity_witnesses;
    std::vector<StageRecord> stages;
    std::string describe() const;
};

/// X -> X + sum of T_y -> Y: split inclusion with acyclic cokernel followed by a degreewise surjection.
FactorizationCertificate factor_trivcofib_fib(const ChainMap& f);

/// Returned when the stage budget runs out; `partial` holds the last completed stage.
struct PartialFactorization {
    FuelExhausted exhausted;
    FactorizationCertificate partial;
};
/// X -> X<variables> -> Y. Stage 1 adds cycles and then generator pairs until p is surjective
/// and surjective on cycles; later stages kill cycles whose images are boundaries. Stops with
/// a trivial fibration or after `fuel` stages.
std::variant<FactorizationCertificate, PartialFactorization> factor_cofib_trivfib(const ChainMap& f, int fuel);

}  // namespace nw
