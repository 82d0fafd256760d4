#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace hfpss {

// Dense matrix over Z with exact arbitrary-precision entries.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<mpz_class> entries;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {}

    static IntMatrix identity(int n);
    static IntMatrix zero(int r, int c) { return IntMatrix(r, c); }

    mpz_class& at(int i, int j) { return entries[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix hconcat(const IntMatrix& o) const;
    std::vector<mpz_class> column(int j) const;
    std::vector<mpz_class> apply(const std::vector<mpz_class>& x) const;

    std::string to_string() const;
};

struct SnfResult {
    IntMatrix u;      // unimodular, rows x rows
    IntMatrix d;      // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix v;      // unimodular, cols x cols
    IntMatrix u_inv;  // exact inverses, maintained during reduction
    IntMatrix v_inv;
};

// u * a * v = d with u, v unimodular and d diagonal with divisibility chain.
SnfResult smith_normal_form(const IntMatrix& a);

// Nonzero diagonal entries of the Smith form.
std::vector<mpz_class> elementary_divisors(const IntMatrix& a);

// Columns span ker(a) as a sublattice of Z^cols (a basis, via the Smith form).
IntMatrix kernel_basis(const IntMatrix& a);

// Solves a * x = b exactly over Z; nullopt if no integral solution.
std::optional<std::vector<mpz_class>> solve_exact(const IntMatrix& a, const std::vector<mpz_class>& b);

// Factored form of solve_exact for many right-hand sides against one matrix.
class SnfSolver {
  public:
    explicit SnfSolver(const IntMatrix& a);
    std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& b) const;

  private:
    int rows_, cols_;
    SnfResult s_;
};

// Is v in the column lattice of l?
bool lattice_contains(const IntMatrix& l, const std::vector<mpz_class>& v);

// Exact determinant (Bareiss fraction-free elimination); matrix must be square.
mpz_class determinant(const IntMatrix& a);

}  // namespace hfpss
