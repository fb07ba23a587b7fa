#pragma once

#include "plectic/rational.hpp"

#include <optional>
#include <vector>

namespace plectic {

// Dense row-major matrix of exact rationals. Desk scale only.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    RationalMatrix transposed() const;
    std::vector<Rational> apply(const std::vector<Rational>& x) const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    bool is_zero() const;
    bool operator==(const RationalMatrix& o) const = default;

    std::vector<Rational> column(int c) const;
    void set_column(int c, const std::vector<Rational>& v);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Exact Gauss-Jordan solve, first-nonzero pivoting, so echelon choices are
// reproducible. Kernel vectors and certificates are scaled to leading
// coefficient 1.
struct LinearSolution {
    bool solvable = false;
    std::vector<Rational> x;                    // particular solution, free vars = 0
    std::vector<std::vector<Rational>> kernel;  // basis of ker A
    std::vector<Rational> certificate;          // y with y.A = 0, y.b != 0 when unsolvable
};

LinearSolution solve_linear(const RationalMatrix& A, const std::vector<Rational>& b);
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& A);
int rank(const RationalMatrix& A);
std::optional<RationalMatrix> inverse(const RationalMatrix& A);

}  // namespace plectic
