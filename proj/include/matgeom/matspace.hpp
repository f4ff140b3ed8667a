#pragma once

// Dense matrices over a small Galois field, the rank-distance relations on
// M_{m,n}, and an indexed view of the whole space for exhaustive scans.
//
// Matrix index encoding: index(A) = sum_{r,c} A[r][c] * q^(r*n + c), i.e.
// row-major with entry (0,0) least significant. Vectors are m x 1 matrices.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matgeom/gf.hpp"

namespace matgeom {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct SpaceSpec {
    FieldPtr field;
    int m = 0;
    int n = 0;

    int q() const noexcept { return field->q(); }
    /// q^(m n); throws BudgetExceeded if it does not fit in 64 bits.
    std::uint64_t size() const;

    friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) noexcept {
        return a.m == b.m && a.n == b.n && same_field(a.field, b.field);
    }
};

class Matrix {
public:
    Matrix() = default;
    /// Zero matrix.
    Matrix(FieldPtr field, int rows, int cols);
    explicit Matrix(const SpaceSpec& spec) : Matrix(spec.field, spec.m, spec.n) {}
    /// Row-major entries; each must be a valid element index.
    Matrix(FieldPtr field, int rows, int cols, std::vector<Elem> entries);

    static Matrix identity(FieldPtr field, int n);
    /// Scalar multiple of the matrix unit E_{row,col}.
    static Matrix unit(FieldPtr field, int rows, int cols, int row, int col, Elem value = 1);
    static Matrix column(FieldPtr field, std::vector<Elem> entries);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const FieldPtr& field() const noexcept { return field_; }
    const Field& F() const noexcept { return *field_; }
    SpaceSpec spec() const { return {field_, rows_, cols_}; }

    Elem operator()(int r, int c) const noexcept { return data_[r * cols_ + c]; }
    Elem& operator()(int r, int c) noexcept { return data_[r * cols_ + c]; }
    std::span<const Elem> entries() const noexcept { return data_; }

    bool is_zero() const noexcept;
    Matrix row(int r) const;     // 1 x cols
    Matrix col(int c) const;     // rows x 1

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
               same_field(a.field_, b.field_);
    }

private:
    FieldPtr field_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scale(Elem c, const Matrix& a);
Matrix transpose(const Matrix& a);
/// Entrywise A_sigma.
Matrix apply_automorphism(const FieldAutomorphism& sigma, const Matrix& a);
/// Throws PreconditionError when `a` is not square and invertible.
Matrix inverse(const Matrix& a);
Matrix hstack(const Matrix& left, const Matrix& right);
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// Columns [first, first + count).
Matrix column_block(const Matrix& a, int first, int count);

int rank(const Matrix& a);
/// Reduced row-echelon form (pivots scaled to 1, columns scanned left to right).
Matrix rref(const Matrix& a);

/// A dis B: A - B has full column rank n.
bool is_dis(const Matrix& a, const Matrix& b);
/// A - B has rank exactly one.
bool is_adjacent(const Matrix& a, const Matrix& b);

struct RankNormalForm {
    Matrix P;  // invertible m x m
    Matrix Q;  // invertible n x n
    int r = 0;
};

/// P * A * Q = diag(I_r, 0).
RankNormalForm rank_normal_form(const Matrix& a);

/// Coordinates X -> P X Q - C that send a pair (A, B) to (0, diag(I_r, 0)).
struct PairNormalization {
    Matrix P;
    Matrix Q;
    Matrix C;
    int r = 0;

    Matrix forward(const Matrix& x) const;   // P X Q - C
    Matrix backward(const Matrix& y) const;  // P^-1 (Y + C) Q^-1
};

/// P, Q from rank_normal_form(B - A) and C = P A Q.
PairNormalization normalize_pair(const Matrix& a, const Matrix& b);

/// Rank-one factorisation A = x y^t with the first nonzero entry of x equal
/// to one. Throws PreconditionError unless rank(A) == 1.
std::pair<Matrix, Matrix> rank_one_factor(const Matrix& a);

std::uint64_t matrix_index(const Matrix& a);
Matrix matrix_from_index(const SpaceSpec& spec, std::uint64_t index);

std::vector<Matrix> enumerate_matrices(const SpaceSpec& spec, std::uint64_t budget = kDefaultBudget);

/// Closed-form count of m x n matrices of rank exactly r.
std::uint64_t count_by_rank(const SpaceSpec& spec, int r);

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(int n, int k, int q);

/// "q m n e00 e01 ... e(m-1)(n-1)"
std::string to_text(const Matrix& a);
Matrix matrix_from_text(const std::string& line);

/// Every matrix of a space, addressed by index, with ranks precomputed.
/// Exhaustive scans work on indices and never materialise Matrix objects.
class MatrixSpace {
public:
    explicit MatrixSpace(SpaceSpec spec, std::uint64_t budget = kDefaultBudget);

    const SpaceSpec& spec() const noexcept { return spec_; }
    std::uint32_t size() const noexcept { return size_; }

    std::span<const Elem> digits(std::uint32_t i) const noexcept {
        return {digits_.data() + std::size_t{i} * cells_, static_cast<std::size_t>(cells_)};
    }
    int rank(std::uint32_t i) const noexcept { return rank_[i]; }
    bool full_rank(std::uint32_t i) const noexcept { return rank_[i] == spec_.n; }

    /// index(A_i - A_j)
    std::uint32_t difference(std::uint32_t i, std::uint32_t j) const noexcept;
    bool dis(std::uint32_t i, std::uint32_t j) const noexcept { return full_rank(difference(i, j)); }
    bool adjacent(std::uint32_t i, std::uint32_t j) const noexcept { return rank_[difference(i, j)] == 1; }

    Matrix decode(std::uint32_t i) const { return matrix_from_index(spec_, i); }
    std::uint32_t encode(const Matrix& a) const;

private:
    SpaceSpec spec_;
    int cells_;
    std::uint32_t size_;
    std::vector<Elem> digits_;
    std::vector<std::uint8_t> rank_;
    std::vector<std::uint32_t> place_;  // q^cell
};

}  // namespace matgeom
