#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "nerveworks/category.hpp"
#include "nerveworks/sset.hpp"

namespace nw {

/// A bisimplicial set truncated at bidegree (M, N), stored as explicit tables.
///
/// Cell (m, n) lives in "row" m, a simplicial set in the n direction; the m direction is the
/// one the Segal condition looks at. Horizontal maps change m, vertical maps change n.
class BisimplicialSet {
public:
    /// Per-bidegree lists indexed [m][n][cell][i].
    using Table = std::vector<std::vector<std::vector<std::vector<std::size_t>>>>;

    BisimplicialSet() = default;
    /// Validates both families of simplicial identities and that horizontal and vertical maps commute.
    BisimplicialSet(int M, int N, std::vector<std::vector<std::vector<std::string>>> names, Table hfaces, Table hdegens,
                    Table vfaces, Table vdegens);

    int M() const { return M_; }
    int N() const { return N_; }
    std::size_t size(int m, int n) const { return names_[idx(m)][idx(n)].size(); }
    const std::string& name(int m, int n, std::size_t x) const { return names_[idx(m)][idx(n)][x]; }
    /// d_i in the m direction: X_{m,n} -> X_{m-1,n}.
    std::size_t hface(int m, int n, std::size_t x, int i) const { return hf_[idx(m)][idx(n)][x][idx(i)]; }
    /// s_i in the m direction: X_{m,n} -> X_{m+1,n} (m < M).
    std::size_t hdegen(int m, int n, std::size_t x, int i) const { return hs_[idx(m)][idx(n)][x][idx(i)]; }
    std::size_t vface(int m, int n, std::size_t x, int j) const { return vf_[idx(m)][idx(n)][x][idx(j)]; }
    std::size_t vdegen(int m, int n, std::size_t x, int j) const { return vs_[idx(m)][idx(n)][x][idx(j)]; }

    /// Row m as a simplicial set in the n direction.
    ExplicitSimplicialSet row(int m) const;
    /// Vertex k (in the m direction) of a cell of X_{m,n}, as a cell of X_{0,n}.
    std::size_t hvertex(int m, int n, std::size_t x, int k) const;
    /// The edge {a < b} of a cell of X_{m,n}, as a cell of X_{1,n}.
    std::size_t hedge(int m, int n, std::size_t x, int a, int b) const;

    const std::vector<std::vector<std::vector<std::string>>>& names() const { return names_; }
    const Table& hface_table() const { return hf_; }
    const Table& hdegen_table() const { return hs_; }
    const Table& vface_table() const { return vf_; }
    const Table& vdegen_table() const { return vs_; }

private:
    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }
    int M_ = 0;
    int N_ = 0;
    std::vector<std::vector<std::vector<std::string>>> names_;
    Table hf_, hs_, vf_, vs_;
};

enum class EmbedKind { discrete, constant };

/// d(X)_{m,n} = X_m or c(X)_{m,n} = X_n, truncated at (N, N).
BisimplicialSet embed(EmbedKind kind, const SimplicialSet& X, int N);
/// Levelwise product; the truncation is the smaller of the two in each direction.
BisimplicialSet product(const BisimplicialSet& X, const BisimplicialSet& Y);
/// Delta^{m,n} = d(Delta^m) x c(Delta^n), truncated at (M, N).
BisimplicialSet bisimplex(int m, int n, int M, int N);

struct SegalVerdict {
    bool holds = false;
    struct Failure {
        int m = 0;  // Segal level
        int n = 0;  // level within the row
        std::size_t cells = 0;
        std::size_t spine_tuples = 0;
        bool injective = false;
    };
    std::vector<Failure> failures;
    std::string describe() const;
};

/// The spine map X_{m,n} -> X_{1,n} x_{X_{0,n}} ... x_{X_{0,n}} X_{1,n} is a bijection for 2 <= m <= M.
/// Throws ArgumentError when M < 2.
SegalVerdict strict_segal_check(const BisimplicialSet& X);

/// B(C, W): cell (m, n) is a commutative grid of m horizontal arrows by n vertical weak arrows.
BisimplicialSet rezk_nerve(const RelativeCategory& R, int M, int N);

struct NotDecidable {
    std::string reason;
};

struct CompletenessVerdict {
    bool complete = false;
    bool essentially_surjective = false;
    bool fully_faithful = false;
    std::size_t objects = 0;             // |X_{0,0}|
    std::size_t equivalence_vertices = 0;  // vertices of X^eq
    std::size_t equivalence_classes = 0;   // invertible classes in Ho
    std::string describe() const;
};

/// Whether s : X_0 -> X^eq is an equivalence, decided on the class where rows 0 and X^eq are
/// nerves of finite groupoids. NotDecidable outside that class or when the Segal check fails.
std::variant<CompletenessVerdict, NotDecidable> completeness_check(const BisimplicialSet& X);

}  // namespace nw
