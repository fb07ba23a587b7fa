#include "plectic/matrix.hpp"

#include <stdexcept>

namespace plectic {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("RationalMatrix::apply: dimension mismatch");
    std::vector<Rational> y(rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !x[c].is_zero()) y[r] += at(r, c) * x[c];
    return y;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RationalMatrix: product dimension mismatch");
    RationalMatrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k).is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c)
                if (!o.at(k, c).is_zero()) p.at(r, c) += at(r, k) * o.at(k, c);
        }
    return p;
}

bool RationalMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

std::vector<Rational> RationalMatrix::column(int c) const {
    std::vector<Rational> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void RationalMatrix::set_column(int c, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != rows_)
        throw std::invalid_argument("RationalMatrix::set_column: dimension mismatch");
    for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
}

namespace {

void scale_leading_one(std::vector<Rational>& v) {
    for (const auto& e : v) {
        if (!e.is_zero()) {
            Rational inv = Rational(1) / e;
            for (auto& x : v) x *= inv;
            return;
        }
    }
}

}  // namespace

LinearSolution solve_linear(const RationalMatrix& A, const std::vector<Rational>& b) {
    const int rows = A.rows(), cols = A.cols();
    if (static_cast<int>(b.size()) != rows)
        throw std::invalid_argument("solve_linear: rhs dimension mismatch");

    // Augment [A | I | b]; the I block tracks row operations for certificates.
    const int width = cols + rows + 1;
    RationalMatrix m(rows, width);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m.at(r, c) = A.at(r, c);
        m.at(r, cols + r) = Rational(1);
        m.at(r, cols + rows) = b[r];
    }

    std::vector<int> pivot_col;  // pivot column of each pivot row
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (!m.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < width; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = 0; c < width; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (int c = 0; c < width; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivot_col.push_back(col);
        ++row;
    }

    LinearSolution sol;

    // Kernel: one vector per free column.
    std::vector<int> is_pivot(cols, -1);
    for (size_t i = 0; i < pivot_col.size(); ++i) is_pivot[pivot_col[i]] = static_cast<int>(i);
    for (int col = 0; col < cols; ++col) {
        if (is_pivot[col] >= 0) continue;
        std::vector<Rational> k(cols);
        k[col] = Rational(1);
        for (size_t i = 0; i < pivot_col.size(); ++i) k[pivot_col[i]] = -m.at(static_cast<int>(i), col);
        scale_leading_one(k);
        sol.kernel.push_back(std::move(k));
    }

    // Consistency: any row with zero A-part but nonzero rhs yields a certificate.
    for (int r = 0; r < rows; ++r) {
        bool zero_a = true;
        for (int c = 0; c < cols; ++c)
            if (!m.at(r, c).is_zero()) {
                zero_a = false;
                break;
            }
        if (zero_a && !m.at(r, cols + rows).is_zero()) {
            sol.certificate.resize(rows);
            for (int c = 0; c < rows; ++c) sol.certificate[c] = m.at(r, cols + c);
            scale_leading_one(sol.certificate);
            sol.solvable = false;
            return sol;
        }
    }

    sol.solvable = true;
    sol.x.assign(cols, Rational(0));
    for (size_t i = 0; i < pivot_col.size(); ++i)
        sol.x[pivot_col[i]] = m.at(static_cast<int>(i), cols + rows);
    return sol;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& A) {
    return solve_linear(A, std::vector<Rational>(A.rows())).kernel;
}

int rank(const RationalMatrix& A) {
    return A.cols() - static_cast<int>(kernel_basis(A).size());
}

std::optional<RationalMatrix> inverse(const RationalMatrix& A) {
    const int n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("inverse: matrix not square");
    RationalMatrix m(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m.at(r, c) = A.at(r, c);
        m.at(r, n + r) = Rational(1);
    }
    int row = 0;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = row; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) return std::nullopt;
        if (pr != row)
            for (int c = 0; c < 2 * n; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = 0; c < 2 * n; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (int c = 0; c < 2 * n; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        ++row;
    }
    RationalMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.at(r, c) = m.at(r, n + c);
    return out;
}

}  // namespace plectic
