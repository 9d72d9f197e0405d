#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nw {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, int cols = -1);
    static IntMatrix from_columns(const std::vector<IntVector>& columns, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Integer& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    IntVector column(int j) const;
    IntVector row(int i) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    IntVector operator*(const IntVector& v) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    /// [a | b]
    static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
    /// a over b
    static IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Integer> data_;
};

/// U * A * V == D with D diagonal, d_0 | d_1 | ... nonnegative, U and V unimodular.
struct SmithForm {
    IntMatrix U, U_inverse, V, D;
    int rank = 0;
    IntVector diagonal;  // first `rank` entries, all positive
};

SmithForm smith_form(const IntMatrix& A);

/// Basis (as columns) of the integer kernel {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& A);
/// Basis (as columns) of the lattice spanned by the columns of A.
IntMatrix image_basis(const IntMatrix& A);
/// An integer solution of A x = b, if one exists.
std::optional<IntVector> solve(const IntMatrix& A, const IntVector& b);
/// Rank over the field with p elements.
int rank_mod(const IntMatrix& A, const Integer& p);

/// Least nonnegative residue; m == 0 leaves x unchanged.
Integer reduce(const Integer& x, const Integer& m);

/// A finitely generated abelian group by invariant factors: each nonzero factor divides the next,
/// zeros (copies of Z) come last, and no factor equals 1.
struct FGAbGroup {
    IntVector factors;

    static FGAbGroup from_orders(const IntVector& cyclic_orders);
    int rank() const;
    IntVector torsion() const;
    bool trivial() const { return factors.empty(); }
    std::string describe() const;
    friend bool operator==(const FGAbGroup&, const FGAbGroup&) = default;
};

/// L / R for lattices R <= L <= Z^n given by generating columns, presented as a sum of cyclic groups.
class Subquotient {
public:
    Subquotient() = default;
    /// R is added to L when not already contained in it.
    Subquotient(int ambient, const IntMatrix& L, const IntMatrix& R);

    int ambient() const { return ambient_; }
    int generator_count() const { return static_cast<int>(orders_.size()); }
    /// Generator t as a vector of the ambient lattice.
    const IntVector& generator(int t) const { return generators_[static_cast<std::size_t>(t)]; }
    /// Order of generator t (0 for infinite).
    const IntVector& orders() const { return orders_; }
    FGAbGroup group() const { return FGAbGroup::from_orders(orders_); }
    /// Reduced coordinates of x in L (throws ArgumentError if x is not in L).
    IntVector coordinates(const IntVector& x) const;
    bool contains(const IntVector& x) const;

private:
    int ambient_ = 0;
    IntMatrix basis_;
    SmithForm basis_smith_;
    SmithForm relation_smith_;
    std::vector<int> kept_;
    std::vector<IntVector> generators_;
    IntVector orders_;
};

/// The sum of cyclic groups Z/o_j (o_j == 0 for Z) as the quotient lattice data:
/// the diagonal relation matrix with a column o_j e_j per finite generator.
IntMatrix relation_matrix(const IntVector& orders);

/// Kernel and cokernel of f : (+) Z/o_j -> (+) Z/o'_i given by an integer matrix.
FGAbGroup module_kernel(const IntMatrix& f, const IntVector& source_orders, const IntVector& target_orders);
FGAbGroup module_cokernel(const IntMatrix& f, const IntVector& target_orders);
/// True when every column of A is zero modulo the order of its row.
bool zero_modulo(const IntMatrix& A, const IntVector& row_orders);

}  // namespace nw
