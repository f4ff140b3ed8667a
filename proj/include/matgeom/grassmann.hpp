#pragma once

// Grassmann space of m-dimensional subspaces of F^(m+n) and its dictionary
// with M_{m,n}. A point is stored as the reduced row-echelon form of any
// basis matrix, written in blocks [X Y] with X the left m x n block and Y the
// right m x m block. Points with singular Y are at infinity; a finite point
// corresponds to the matrix Y^-1 X.

#include <cstdint>
#include <string>
#include <vector>

#include "matgeom/matspace.hpp"

namespace matgeom {

struct GrassmannSpec {
    FieldPtr field;
    int m = 0;  // subspace dimension
    int n = 0;  // ambient dimension is m + n

    /// Gaussian binomial [m+n choose m]_q.
    std::uint64_t point_count() const;

    friend bool operator==(const GrassmannSpec& a, const GrassmannSpec& b) noexcept {
        return a.m == b.m && a.n == b.n && same_field(a.field, b.field);
    }
};

class GrassmannPoint {
public:
    /// Row space of `basis` (m x (m+n), full row rank), canonicalised.
    GrassmannPoint(const GrassmannSpec& spec, const Matrix& basis);

    const GrassmannSpec& spec() const noexcept { return spec_; }
    /// Canonical reduced row-echelon basis.
    const Matrix& basis() const noexcept { return basis_; }

    friend bool operator==(const GrassmannPoint& a, const GrassmannPoint& b) noexcept {
        return a.spec_ == b.spec_ && a.basis_ == b.basis_;
    }

private:
    GrassmannSpec spec_;
    Matrix basis_;
};

/// Every point exactly once, generated from pivot-column patterns of reduced
/// row-echelon matrices. Throws BudgetExceeded above `budget` points.
std::vector<GrassmannPoint> enumerate_points(const GrassmannSpec& spec, std::uint64_t budget = kDefaultBudget);

/// dim(U + V) == m + 1.
bool is_adjacent_points(const GrassmannPoint& u, const GrassmannPoint& v);

/// Right m x m block of the basis is singular.
bool is_at_infinity(const GrassmannPoint& u);

/// Y^-1 X; throws PreconditionError for points at infinity.
Matrix to_matrix(const GrassmannPoint& u);

/// Row space of [A I].
GrassmannPoint from_matrix(const Matrix& a);

/// U + V = F^(2n); requires m == n.
bool is_complementary(const GrassmannPoint& u, const GrassmannPoint& v);

/// "q m n | e..." with the canonical basis row-major.
std::string to_text(const GrassmannPoint& u);
GrassmannPoint point_from_text(const std::string& line);

}  // namespace matgeom
