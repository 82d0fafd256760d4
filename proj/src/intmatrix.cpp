#include "hfpss/intmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace hfpss {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& e : entries)
        if (e != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix r(rows, cols);
    for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    IntMatrix r(rows, cols);
    for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] - o.entries[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& o) const {
    if (rows != o.rows) throw std::invalid_argument("IntMatrix: row mismatch in hconcat");
    IntMatrix r(rows, cols + o.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
}

std::vector<mpz_class> IntMatrix::column(int j) const {
    std::vector<mpz_class> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& x) const {
    if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("IntMatrix: vector size mismatch");
    std::vector<mpz_class> y(rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

struct SnfState {
    IntMatrix a, u, v, u_inv, v_inv;

    explicit SnfState(const IntMatrix& m)
        : a(m),
          u(IntMatrix::identity(m.rows)),
          v(IntMatrix::identity(m.cols)),
          u_inv(IntMatrix::identity(m.rows)),
          v_inv(IntMatrix::identity(m.cols)) {}

    // row_i -= q * row_j on a and u; inverse op on u_inv columns
    void row_axpy(int i, int j, const mpz_class& q) {
        for (int c = 0; c < a.cols; ++c) a.at(i, c) -= q * a.at(j, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
        for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, j) += q * u_inv.at(r, i);
    }

    void col_axpy(int i, int j, const mpz_class& q) {  // col_i -= q * col_j
        for (int r = 0; r < a.rows; ++r) a.at(r, i) -= q * a.at(r, j);
        for (int r = 0; r < v.rows; ++r) v.at(r, i) -= q * v.at(r, j);
        for (int c = 0; c < v_inv.cols; ++c) v_inv.at(j, c) += q * v_inv.at(i, c);
    }

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < u_inv.rows; ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }

    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < v_inv.cols; ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }

    void row_negate(int i) {
        for (int c = 0; c < a.cols; ++c) a.at(i, c) = -a.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    SnfState st(m);
    IntMatrix& a = st.a;
    const int n = std::min(a.rows, a.cols);

    for (int k = 0; k < n; ++k) {
        // pivot: smallest nonzero |entry| in the trailing block
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = k; i < a.rows && best != 1; ++i)
            for (int j = k; j < a.cols; ++j) {
                if (a.at(i, j) == 0) continue;
                mpz_class v = abs(a.at(i, j));
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (best == 1) break;
                }
            }
        if (pi < 0) break;
        st.row_swap(k, pi);
        st.col_swap(k, pj);

        for (;;) {
            bool clean = true;
            for (int i = k + 1; i < a.rows; ++i) {
                if (a.at(i, k) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, k).get_mpz_t(), a.at(k, k).get_mpz_t());
                st.row_axpy(i, k, q);
                if (a.at(i, k) != 0) {  // remainder smaller than pivot: swap up and restart
                    st.row_swap(k, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (int j = k + 1; j < a.cols; ++j) {
                if (a.at(k, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(k, j).get_mpz_t(), a.at(k, k).get_mpz_t());
                st.col_axpy(j, k, q);
                if (a.at(k, j) != 0) {
                    st.col_swap(k, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (int i = k + 1; i < a.rows && divides; ++i)
                for (int j = k + 1; j < a.cols && divides; ++j)
                    if (a.at(i, j) % a.at(k, k) != 0) {
                        st.row_axpy(k, i, mpz_class(-1));  // fold row i into the pivot row
                        divides = false;
                    }
            if (divides) break;
        }
        if (a.at(k, k) < 0) st.row_negate(k);
    }

    SnfResult res{st.u, st.a, st.v, st.u_inv, st.v_inv};
    return res;
}

std::vector<mpz_class> elementary_divisors(const IntMatrix& a) {
    SnfResult s = smith_normal_form(a);
    std::vector<mpz_class> d;
    int n = std::min(a.rows, a.cols);
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) != 0) d.push_back(s.d.at(i, i));
    return d;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SnfResult s = smith_normal_form(a);
    int n = std::min(a.rows, a.cols);
    std::vector<int> free_cols;
    for (int j = 0; j < a.cols; ++j) {
        if (j >= n || s.d.at(j, j) == 0) free_cols.push_back(j);
    }
    IntMatrix k(a.cols, static_cast<int>(free_cols.size()));
    for (size_t jj = 0; jj < free_cols.size(); ++jj)
        for (int i = 0; i < a.cols; ++i) k.at(i, static_cast<int>(jj)) = s.v.at(i, free_cols[jj]);
    return k;
}

SnfSolver::SnfSolver(const IntMatrix& a) : rows_(a.rows), cols_(a.cols), s_(smith_normal_form(a)) {}

std::optional<std::vector<mpz_class>> SnfSolver::solve(const std::vector<mpz_class>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("solve_exact: size mismatch");
    std::vector<mpz_class> ub = s_.u.apply(b);
    std::vector<mpz_class> y(cols_);
    int n = std::min(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        mpz_class di = (i < n) ? s_.d.at(i, i) : mpz_class(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < cols_) y[i] = ub[i] / di;
        }
    }
    return s_.v.apply(y);
}

std::optional<std::vector<mpz_class>> solve_exact(const IntMatrix& a, const std::vector<mpz_class>& b) {
    return SnfSolver(a).solve(b);
}

bool lattice_contains(const IntMatrix& l, const std::vector<mpz_class>& v) {
    return solve_exact(l, v).has_value();
}

mpz_class determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix not square");
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = t / prev;  // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

}  // namespace hfpss
