#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nerveworks/category.hpp"

namespace nw {

/// No arrow with source `object` lies over `base_arrow`.
struct MissingLift {
    int object = 0;
    int base_arrow = 0;
};

/// A Lambda^2_0 horn (alpha : x -> y, beta : x -> z) with a base arrow c : F(y) -> F(z) closing it,
/// having `fillers` lifts gamma of c with gamma o alpha = beta (a left fibration needs exactly one).
struct HornFailure {
    int alpha = 0;
    int beta = 0;
    int base_arrow = 0;
    int fillers = 0;
};

struct LeftFibrationVerdict {
    bool holds = false;
    std::vector<MissingLift> missing_lifts;
    std::vector<HornFailure> horn_failures;
};

/// Right lifting against {0} -> [1] (existence) and Lambda^2_0 -> [2] (unique filler).
LeftFibrationVerdict is_left_fibration(const Functor& F);

/// Hom(y, z) -> Hom(x, z) x_{Hom(Fx, Fz)} Hom(Fy, Fz) is a bijection for every z.
bool is_cocartesian_arrow(const Functor& F, int alpha);
/// Cocartesian after base change along F(alpha) : [1] -> D.
bool is_locally_cocartesian_arrow(const Functor& F, int alpha);

struct CocartAnalysis {
    struct Flags {
        bool cocartesian = false;
        bool locally_cocartesian = false;
    };
    /// A composable pair of locally cocartesian arrows, second o first.
    struct Pair {
        int first = 0;
        int second = 0;
        int composite = 0;
        bool composite_locally_cocartesian = false;
    };
    std::vector<Flags> arrows;
    std::vector<Pair> pairs;
    bool is_cocartesian_fibration = false;
    bool is_locally_cocartesian_fibration = false;
    bool is_left_fibration = false;
    std::vector<MissingLift> missing_cocartesian_lifts;
    std::vector<MissingLift> missing_local_lifts;

    /// Line-oriented report naming arrows by their identifiers.
    std::string report(const Functor& F) const;
};

/// Throws InconsistencyError if the left-fibration verdict disagrees with is_left_fibration.
CocartAnalysis cocart_analyze(const Functor& F);

/// A strict functor D -> Cat with finite values.
struct SplitFunctorToCat {
    FinCategory base;
    std::vector<FinCategory> fibers;  // per base object
    std::vector<Functor> transports;  // per base arrow
    /// Throws ArgumentError unless identities go to identity functors and composites compose exactly.
    void validate() const;
};

/// The projection from the total category.
/// Objects are (d, c) ordered by d then c; arrows over phi : d -> d' are (phi, c, alpha) with
/// alpha : phi_!(c) -> c' in the fiber over d', ordered by phi, then c, then alpha.
Functor grothendieck_build(const SplitFunctorToCat& F);

struct ThetaComponent {
    int a = 0;       // base arrow d -> d'
    int b = 0;       // base arrow d' -> d''
    int object = 0;  // total object over d
    int arrow = 0;   // (b o a)_!(c) -> b_!(a_!(c)) over the identity of d''
    bool iso = false;
};

struct GrothendieckReading {
    std::vector<FinCategory> fibers;
    std::vector<std::vector<int>> fiber_objects;  // fiber object -> total object
    std::vector<std::vector<int>> fiber_arrows;   // fiber arrow -> total arrow
    /// chosen_lifts[a][c]: the locally cocartesian lift of base arrow a at fiber object c.
    std::vector<std::vector<int>> chosen_lifts;
    std::vector<Functor> transports;  // per base arrow
    std::vector<ThetaComponent> theta;
    bool all_theta_iso = false;
    bool agrees_with_cocartesian = false;
    /// The theta verdict is the same for every examined choice of lifts.
    bool choice_independent = false;
    std::size_t choices_examined = 0;
    bool choices_exhaustive = false;
};

/// Fibers, transports along lexicographically first lifts (identities over identities) and theta maps.
/// Throws ArgumentError naming the offending arrow when F is not a locally cocartesian fibration.
GrothendieckReading grothendieck_read(const Functor& F, const CocartAnalysis& analysis);

/// C * D: a unique arrow from each object of C to each object of D.
FinCategory join(const FinCategory& C, const FinCategory& D);

struct TwistedArrows {
    FinCategory category;
    Functor projection;  // to opposite(C) x C
};

/// Objects are the arrows of C; (u, v) : f -> v o f o u with u entering the source of f.
TwistedArrows twisted_arrows(const FinCategory& C);

/// The objects and arrows of C lying over the identity of d.
FinCategory fiber(const Functor& F, int d, std::vector<int>* objects = nullptr, std::vector<int>* arrows = nullptr);

}  // namespace nw
