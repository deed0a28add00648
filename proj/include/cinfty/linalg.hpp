#pragma once

#include "cinfty/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace cinfty {

// Dense exact matrix, row-major. Sizes here are small (a few hundred rows
// at most), so dense elimination is fine.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Reduced row echelon form in place; returns pivot column per pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t pivot = row;
            while (pivot < rows_ && at(pivot, col) == 0) ++pivot;
            if (pivot == rows_) continue;
            if (pivot != row) swap_rows(pivot, row);
            Scalar inv = Scalar(1) / at(row, col);
            for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col) == 0) continue;
                Scalar f = at(r, col);
                for (std::size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        RationalMatrix copy = *this;
        return copy.rref().size();
    }

    // Basis of the right kernel.
    std::vector<std::vector<Scalar>> kernel_basis() const {
        RationalMatrix copy = *this;
        auto pivots = copy.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Scalar>> out;
        for (std::size_t freec = 0; freec < cols_; ++freec) {
            if (is_pivot[freec]) continue;
            std::vector<Scalar> v(cols_, Scalar(0));
            v[freec] = 1;
            for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
                v[pivots[pr]] = -copy.at(pr, freec);
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    // One solution of A x = b, or nullopt if inconsistent.
    // Free variables are set to zero, so the result is deterministic.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const {
        RationalMatrix aug(rows_, cols_ + 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_) = b[r];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        std::vector<Scalar> x(cols_, Scalar(0));
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
            x[pivots[pr]] = aug.at(pr, cols_);
        }
        return x;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

// Fraction-free (Bareiss) rank over the integers; entries are scaled to a
// common denominator first. Used for the cellular homology ranks.
inline std::size_t fraction_free_rank(const RationalMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        BigInt lcm = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            const BigInt& den = denominator(m.at(r, c));
            lcm = lcm / gcd(lcm, den) * den;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            a[r][c] = numerator(m.at(r, c)) * (lcm / denominator(m.at(r, c)));
        }
    }
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace cinfty
