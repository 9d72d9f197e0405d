#include "nerveworks/linalg.hpp"

#include <algorithm>

#include "nerveworks/error.hpp"

namespace nw {

namespace {
std::size_t idx(int v) { return static_cast<std::size_t>(v); }
}  // namespace

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, int cols) {
    const int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows.front().size()));
    IntMatrix m(static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[idx(i)].size()) != c) throw ArgumentError("matrix rows have different lengths");
        for (int j = 0; j < c; ++j) m(i, j) = rows[idx(i)][idx(j)];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, int rows) {
    IntMatrix m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(columns[idx(j)].size()) != rows) throw ArgumentError("matrix columns have different lengths");
        for (int i = 0; i < rows; ++i) m(i, j) = columns[idx(j)][idx(i)];
    }
    return m;
}

IntVector IntMatrix::column(int j) const {
    IntVector v(idx(rows_));
    for (int i = 0; i < rows_; ++i) v[idx(i)] = (*this)(i, j);
    return v;
}

IntVector IntMatrix::row(int i) const {
    return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw ArgumentError("matrix-vector shape mismatch");
    IntVector out(idx(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[idx(j)] != 0) out[idx(i)] += (*this)(i, j) * v[idx(j)];
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix sum shape mismatch");
    IntMatrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix difference shape mismatch");
    IntMatrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw ArgumentError("hconcat: row counts differ");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw ArgumentError("vconcat: column counts differ");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

namespace {

struct SmithWork {
    IntMatrix A, U, Ui, V;

    // row_i += q * row_t
    void add_row(int i, int t, const Integer& q) {
        for (int j = 0; j < A.cols(); ++j) A(i, j) += q * A(t, j);
        for (int j = 0; j < U.cols(); ++j) U(i, j) += q * U(t, j);
        for (int r = 0; r < Ui.rows(); ++r) Ui(r, t) -= q * Ui(r, i);
    }
    void swap_rows(int i, int t) {
        if (i == t) return;
        for (int j = 0; j < A.cols(); ++j) std::swap(A(i, j), A(t, j));
        for (int j = 0; j < U.cols(); ++j) std::swap(U(i, j), U(t, j));
        for (int r = 0; r < Ui.rows(); ++r) std::swap(Ui(r, i), Ui(r, t));
    }
    void negate_row(int t) {
        for (int j = 0; j < A.cols(); ++j) A(t, j) = -A(t, j);
        for (int j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
        for (int r = 0; r < Ui.rows(); ++r) Ui(r, t) = -Ui(r, t);
    }
    // col_j += q * col_t
    void add_col(int j, int t, const Integer& q) {
        for (int r = 0; r < A.rows(); ++r) A(r, j) += q * A(r, t);
        for (int r = 0; r < V.rows(); ++r) V(r, j) += q * V(r, t);
    }
    void swap_cols(int j, int t) {
        if (j == t) return;
        for (int r = 0; r < A.rows(); ++r) std::swap(A(r, j), A(r, t));
        for (int r = 0; r < V.rows(); ++r) std::swap(V(r, j), V(r, t));
    }
};

}  // namespace

SmithForm smith_form(const IntMatrix& A) {
    const int m = A.rows(), n = A.cols();
    SmithWork w{A, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
    int t = 0;
    for (; t < std::min(m, n); ++t) {
        bool found_any = false;
        while (true) {
            int pi = -1, pj = -1;
            Integer best = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    const Integer& a = w.A(i, j);
                    if (a == 0) continue;
                    const Integer v = abs(a);
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;
            found_any = true;
            w.swap_rows(pi, t);
            w.swap_cols(pj, t);
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (w.A(i, t) == 0) continue;
                const Integer q = w.A(i, t) / w.A(t, t);
                if (q != 0) w.add_row(i, t, -q);
                if (w.A(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (w.A(t, j) == 0) continue;
                const Integer q = w.A(t, j) / w.A(t, t);
                if (q != 0) w.add_col(j, t, -q);
                if (w.A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (w.A(i, j) % w.A(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            w.add_row(t, bad, 1);
        }
        if (!found_any) break;
        if (w.A(t, t) < 0) w.negate_row(t);
    }
    SmithForm s;
    s.rank = t;
    for (int i = 0; i < t; ++i) s.diagonal.push_back(w.A(i, i));
    s.D = std::move(w.A);
    s.U = std::move(w.U);
    s.U_inverse = std::move(w.Ui);
    s.V = std::move(w.V);
    return s;
}

IntMatrix kernel_basis(const IntMatrix& A) {
    const auto s = smith_form(A);
    IntMatrix K(A.cols(), A.cols() - s.rank);
    for (int j = s.rank; j < A.cols(); ++j)
        for (int i = 0; i < A.cols(); ++i) K(i, j - s.rank) = s.V(i, j);
    return K;
}

IntMatrix image_basis(const IntMatrix& A) {
    const auto s = smith_form(A);
    IntMatrix B(A.rows(), s.rank);
    for (int t = 0; t < s.rank; ++t)
        for (int i = 0; i < A.rows(); ++i) B(i, t) = s.U_inverse(i, t) * s.diagonal[idx(t)];
    return B;
}

namespace {

std::optional<IntVector> solve_with(const SmithForm& s, int cols, const IntVector& b) {
    const IntVector y = s.U * b;
    IntVector z(idx(cols));
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        if (i < s.rank) {
            if (y[idx(i)] % s.diagonal[idx(i)] != 0) return std::nullopt;
            z[idx(i)] = y[idx(i)] / s.diagonal[idx(i)];
        } else if (y[idx(i)] != 0) {
            return std::nullopt;
        }
    }
    return s.V * z;
}

}  // namespace

std::optional<IntVector> solve(const IntMatrix& A, const IntVector& b) {
    if (static_cast<int>(b.size()) != A.rows()) throw ArgumentError("solve: shape mismatch");
    return solve_with(smith_form(A), A.cols(), b);
}

Integer reduce(const Integer& x, const Integer& m) {
    if (m == 0) return x;
    Integer r = x % m;
    if (r < 0) r += abs(m);
    return r;
}

int rank_mod(const IntMatrix& A, const Integer& p) {
    if (p < 2) throw ArgumentError("rank_mod: modulus must be at least 2");
    IntMatrix M = A;
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) M(i, j) = reduce(M(i, j), p);
    int r = 0;
    for (int c = 0; c < M.cols() && r < M.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < M.rows(); ++i)
            if (M(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < M.cols(); ++j) std::swap(M(r, j), M(piv, j));
        // inverse by Fermat: p is prime
        Integer inv = boost::multiprecision::powm(M(r, c), p - 2, p);
        for (int j = 0; j < M.cols(); ++j) M(r, j) = reduce(M(r, j) * inv, p);
        for (int i = 0; i < M.rows(); ++i) {
            if (i == r || M(i, c) == 0) continue;
            const Integer f = M(i, c);
            for (int j = 0; j < M.cols(); ++j) M(i, j) = reduce(M(i, j) - f * M(r, j), p);
        }
        ++r;
    }
    return r;
}

FGAbGroup FGAbGroup::from_orders(const IntVector& cyclic_orders) {
    const int n = static_cast<int>(cyclic_orders.size());
    IntMatrix D(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = abs(cyclic_orders[idx(i)]);
    const auto s = smith_form(D);
    FGAbGroup g;
    for (const auto& d : s.diagonal)
        if (d != 1) g.factors.push_back(d);
    for (int i = s.rank; i < n; ++i) g.factors.push_back(0);
    return g;
}

int FGAbGroup::rank() const {
    return static_cast<int>(std::count(factors.begin(), factors.end(), Integer(0)));
}

IntVector FGAbGroup::torsion() const {
    IntVector t;
    for (const auto& f : factors)
        if (f != 0) t.push_back(f);
    return t;
}

std::string FGAbGroup::describe() const {
    if (factors.empty()) return "0";
    std::string out;
    for (const auto& f : torsion()) out += (out.empty() ? "" : " + ") + std::string("Z/") + f.str();
    if (const int r = rank(); r > 0) out += (out.empty() ? "" : " + ") + std::string("Z") + (r > 1 ? "^" + std::to_string(r) : "");
    return out;
}

Subquotient::Subquotient(int ambient, const IntMatrix& L, const IntMatrix& R) : ambient_(ambient) {
    if (L.rows() != ambient || R.rows() != ambient) throw ArgumentError("Subquotient: generators live in the wrong lattice");
    basis_ = image_basis(IntMatrix::hconcat(L, R));
    basis_smith_ = smith_form(basis_);
    const int k = basis_.cols();
    IntMatrix C(k, R.cols());
    for (int j = 0; j < R.cols(); ++j) {
        auto c = solve_with(basis_smith_, k, R.column(j));
        if (!c) throw InconsistencyError("Subquotient: relation outside the lattice");
        for (int i = 0; i < k; ++i) C(i, j) = (*c)[idx(i)];
    }
    relation_smith_ = smith_form(C);
    const IntMatrix G = basis_ * relation_smith_.U_inverse;
    for (int t = 0; t < k; ++t) {
        const Integer order = t < relation_smith_.rank ? relation_smith_.diagonal[idx(t)] : Integer(0);
        if (order == 1) continue;
        kept_.push_back(t);
        generators_.push_back(G.column(t));
        orders_.push_back(order);
    }
}

bool Subquotient::contains(const IntVector& x) const {
    return solve_with(basis_smith_, basis_.cols(), x).has_value();
}

IntVector Subquotient::coordinates(const IntVector& x) const {
    if (static_cast<int>(x.size()) != ambient_) throw ArgumentError("Subquotient: vector of the wrong length");
    auto c = solve_with(basis_smith_, basis_.cols(), x);
    if (!c) throw ArgumentError("Subquotient: vector is not in the subgroup");
    const IntVector y = relation_smith_.U * *c;
    IntVector out;
    for (std::size_t p = 0; p < kept_.size(); ++p) out.push_back(reduce(y[idx(kept_[p])], orders_[p]));
    return out;
}

IntMatrix relation_matrix(const IntVector& orders) {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < orders.size(); ++j)
        if (orders[j] != 0) {
            IntVector c(orders.size());
            c[j] = orders[j];
            cols.push_back(std::move(c));
        }
    return IntMatrix::from_columns(cols, static_cast<int>(orders.size()));
}

FGAbGroup module_kernel(const IntMatrix& f, const IntVector& source_orders, const IntVector& target_orders) {
    const int s = f.cols();
    const IntMatrix Rt = relation_matrix(target_orders);
    IntMatrix neg(Rt.rows(), Rt.cols());
    for (int i = 0; i < Rt.rows(); ++i)
        for (int j = 0; j < Rt.cols(); ++j) neg(i, j) = -Rt(i, j);
    const IntMatrix K = kernel_basis(IntMatrix::hconcat(f, neg));
    IntMatrix L(s, K.cols());
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < K.cols(); ++j) L(i, j) = K(i, j);
    return Subquotient(s, L, relation_matrix(source_orders)).group();
}

FGAbGroup module_cokernel(const IntMatrix& f, const IntVector& target_orders) {
    const int t = f.rows();
    return Subquotient(t, IntMatrix::identity(t), IntMatrix::hconcat(f, relation_matrix(target_orders))).group();
}

bool zero_modulo(const IntMatrix& A, const IntVector& row_orders) {
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (reduce(A(i, j), row_orders[idx(i)]) != 0) return false;
    return true;
}

}  // namespace nw
