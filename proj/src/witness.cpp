#include "matgeom/witness.hpp"

#include <stdexcept>
#include <tuple>

#include "matgeom/errors.hpp"
#include "matgeom/random.hpp"

namespace matgeom {

namespace {

bool independent(const Matrix& u, const Matrix& v) { return rank(hstack(u, v)) == 2; }

Matrix vector_from_index(const FieldPtr& field, int dim, std::uint64_t index) {
    return matrix_from_index({field, dim, 1}, index);
}

std::uint64_t vector_count(const FieldPtr& field, int dim) { return SpaceSpec{field, dim, 1}.size(); }

// Extends the independent columns of `family` to a basis of F^dim using
// standard basis vectors in order.
Matrix extend_to_basis(Matrix family) {
    const int dim = family.rows();
    for (int j = 0; j < dim && family.cols() < dim; ++j) {
        Matrix candidate = hstack(family, Matrix::unit(family.field(), dim, 1, j, 0));
        if (rank(candidate) == candidate.cols()) family = std::move(candidate);
    }
    return family;
}

// Separating X for the pair (0, B) and candidate R, with R != 0, B.
Matrix separating_from_zero(const Matrix& B, const Matrix& R) {
    const FieldPtr& field = B.field();
    const int m = B.rows();
    const int n = B.cols();
    const Matrix D = B - R;

    Matrix x, y;
    if (rank(D) >= 2) {
        std::tie(x, y) = lemma_pez_vectors(D, R);
    } else if (rank(R) >= 2) {
        auto [u, v] = lemma_pez_vectors(R, D);
        x = std::move(v);
        y = std::move(u);
    } else {
        // D and R both have rank one and their ranges meet only in 0.
        const std::uint64_t count = vector_count(field, n);
        bool found = false;
        for (std::uint64_t i = 1; i < count && !found; ++i) {
            Matrix cx = vector_from_index(field, n, i);
            if ((D * cx).is_zero()) continue;
            for (std::uint64_t j = 1; j < count; ++j) {
                Matrix cy = vector_from_index(field, n, j);
                if ((R * cy).is_zero() || !independent(cx, cy)) continue;
                x = std::move(cx);
                y = std::move(cy);
                found = true;
                break;
            }
        }
        if (!found) throw PreconditionError("separating_X: no independent x, y with (B-R)x != 0, Ry != 0");
    }

    // Domain basis x, y, b3..bn and images under X - R.
    const Matrix domain = extend_to_basis(hstack(x, y));
    Matrix images = extend_to_basis(hstack(D * x, -(R * y)));
    if (domain.cols() != n || images.cols() < n)
        throw std::logic_error("separating_X: basis extension failed");

    Matrix values(field, m, n);  // X applied to the domain basis
    const Matrix bx = B * x;
    for (int r = 0; r < m; ++r) values(r, 0) = bx(r, 0);
    // Column 1 stays zero: X y = 0.
    for (int c = 2; c < n; ++c) {
        const Matrix v = column_block(images, c, 1) + R * column_block(domain, c, 1);
        for (int r = 0; r < m; ++r) values(r, c) = v(r, 0);
    }
    return values * inverse(domain);
}

}  // namespace

void require_preserver_hypotheses(const SpaceSpec& spec) {
    if (spec.q() < 3) throw PreconditionError("field must have at least three elements");
    if (!(spec.m >= spec.n && spec.n >= 2)) throw PreconditionError("shape must satisfy m >= n >= 2");
}

std::pair<Matrix, Matrix> lemma_pez_vectors(const Matrix& T, const Matrix& S) {
    if (T.rows() != S.rows() || T.cols() != S.cols() || !same_field(T.field(), S.field()))
        throw SpecMismatch("lemma_pez_vectors: operators of different shape");
    if (T.F().q() < 3) throw PreconditionError("lemma_pez_vectors: field must have at least three elements");
    if (T.cols() < 2) throw PreconditionError("lemma_pez_vectors: n must be at least 2");
    if (S.is_zero()) throw PreconditionError("lemma_pez_vectors: S must be nonzero");
    if (rank(T) < 2) throw PreconditionError("lemma_pez_vectors: T must have rank at least 2");

    const FieldPtr& field = T.field();
    const int n = T.cols();
    Matrix y;
    for (int j = 0; j < n; ++j) {
        y = Matrix::unit(field, n, 1, j, 0);
        if (!(S * y).is_zero()) break;
    }
    const Matrix sy = S * y;
    const std::uint64_t count = vector_count(field, n);
    for (std::uint64_t i = 1; i < count; ++i) {
        Matrix x = vector_from_index(field, n, i);
        if (independent(x, y) && independent(T * x, sy)) return {std::move(x), std::move(y)};
    }
    throw std::logic_error("lemma_pez_vectors: no admissible x found");
}

std::optional<std::uint32_t> witness_violation(const MatrixSpace& space, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t r) {
    for (std::uint32_t x = 0; x < space.size(); ++x) {
        if (space.dis(x, r) && !space.dis(x, a) && !space.dis(x, b)) return x;
    }
    return std::nullopt;
}

namespace {

Matrix witness_matrix(const Matrix& A, const Matrix& B) {
    require_preserver_hypotheses(A.spec());
    if (!is_adjacent(A, B)) throw PreconditionError("adjacency_witness: A and B are not adjacent");
    const auto norm = normalize_pair(A, B);
    const Elem lambda = 2;  // smallest index outside {0, 1}
    return norm.backward(Matrix::unit(A.field(), A.rows(), A.cols(), 0, 0, lambda));
}

}  // namespace

WitnessReport adjacency_witness(const MatrixSpace& space, const Matrix& A, const Matrix& B) {
    WitnessReport rep;
    rep.R = witness_matrix(A, B);
    const auto bad = witness_violation(space, space.encode(A), space.encode(B), space.encode(rep.R));
    rep.verified = !bad.has_value();
    if (bad) rep.counterexample = space.decode(*bad);
    rep.x_checked = bad ? *bad + 1 : space.size();
    rep.exhaustive = true;
    return rep;
}

WitnessReport adjacency_witness(const Matrix& A, const Matrix& B, std::uint64_t budget, std::uint64_t samples) {
    std::uint64_t total = UINT64_MAX;
    try {
        total = A.spec().size();
    } catch (const BudgetExceeded&) {
    }
    if (total <= budget) {
        const MatrixSpace space(A.spec(), budget);
        return adjacency_witness(space, A, B);
    }

    WitnessReport rep;
    rep.R = witness_matrix(A, B);
    Rng rng(0x5eed);
    std::vector<Elem> entries(static_cast<std::size_t>(A.rows()) * A.cols());
    rep.verified = true;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& e : entries) e = static_cast<Elem>(rng.below(A.F().q()));
        Matrix X(A.field(), A.rows(), A.cols(), entries);
        ++rep.x_checked;
        if (is_dis(X, rep.R) && !is_dis(X, A) && !is_dis(X, B)) {
            rep.verified = false;
            rep.counterexample = std::move(X);
            break;
        }
    }
    return rep;
}

Matrix separating_X(const Matrix& A, const Matrix& B, const Matrix& R) {
    if (!(A.spec() == B.spec()) || !(A.spec() == R.spec())) throw SpecMismatch("separating_X: operands differ");
    require_preserver_hypotheses(A.spec());
    if (rank(B - A) < 2) throw PreconditionError("separating_X: rank(B - A) must be at least 2");
    if (R == A || R == B) throw PreconditionError("separating_X: R must differ from A and B");

    const auto norm = normalize_pair(A, B);
    const Matrix Xn = separating_from_zero(norm.forward(B), norm.forward(R));
    return norm.backward(Xn);
}

bool adjacent_via_dis(const MatrixSpace& space, std::uint32_t a, std::uint32_t b) {
    require_preserver_hypotheses(space.spec());
    if (a == b) throw PreconditionError("adjacent_via_dis: A and B must differ");
    for (std::uint32_t r = 0; r < space.size(); ++r) {
        if (r == a || r == b) continue;
        if (!witness_violation(space, a, b, r)) return true;
    }
    return false;
}

bool adjacent_via_dis(const Matrix& A, const Matrix& B, std::uint64_t budget) {
    if (!(A.spec() == B.spec())) throw SpecMismatch("adjacent_via_dis: operands differ");
    require_preserver_hypotheses(A.spec());
    const MatrixSpace space(A.spec(), budget);
    return adjacent_via_dis(space, space.encode(A), space.encode(B));
}

}  // namespace matgeom
