#pragma once

// Constructive side of the adjacency / full-rank-difference equivalence.
//
// For A != B in M_{m,n}(F), |F| >= 3, m >= n >= 2, the following agree:
//   (1) rank(A - B) == 1
//   (2) some R not in {A, B} has: every X with X dis R satisfies X dis A or X dis B.
// adjacency_witness builds R for (1) => (2); separating_X refutes any
// candidate R when rank(A - B) >= 2; adjacent_via_dis evaluates (2) by
// brute force.

#include <cstdint>
#include <optional>
#include <utility>

#include "matgeom/matspace.hpp"

namespace matgeom {

/// Throws PreconditionError unless |F| >= 3 and m >= n >= 2.
void require_preserver_hypotheses(const SpaceSpec& spec);

struct WitnessReport {
    Matrix R;
    /// No checked X has (X dis R) and not (X dis A) and not (X dis B).
    bool verified = false;
    std::optional<Matrix> counterexample;
    std::uint64_t x_checked = 0;
    /// True when every X in M_{m,n} was checked; otherwise X was sampled.
    bool exhaustive = false;
};

/// Vectors x, y in F^n with x, y independent and T x, S y independent.
/// Requires T, S nonzero, rank(T) >= 2, n >= 2 and |F| >= 3. Deterministic:
/// y is the first standard basis vector with S y != 0 and x the first vector
/// in index order that works.
std::pair<Matrix, Matrix> lemma_pez_vectors(const Matrix& T, const Matrix& S);

/// R = P^-1 (lambda E11) Q^-1 + A for (P, Q, C) = normalize_pair(A, B) and
/// lambda the smallest element index outside {0, 1}. The report verifies R
/// over all X when q^(mn) <= budget, otherwise over `samples` seeded X.
WitnessReport adjacency_witness(const Matrix& A, const Matrix& B, std::uint64_t budget = kDefaultBudget,
                                std::uint64_t samples = 10'000);
/// Same, verifying against a prebuilt space (always exhaustive).
WitnessReport adjacency_witness(const MatrixSpace& space, const Matrix& A, const Matrix& B);

/// First X (index order) with X dis R, not X dis A, not X dis B; nullopt if none.
std::optional<std::uint32_t> witness_violation(const MatrixSpace& space, std::uint32_t a, std::uint32_t b,
                                               std::uint32_t r);

/// X with (X dis R), not (X dis A), not (X dis B). Requires rank(B - A) >= 2
/// and R not in {A, B}.
Matrix separating_X(const Matrix& A, const Matrix& B, const Matrix& R);

/// Evaluates "exists R not in {A,B} such that for all X, X dis R implies
/// X dis A or X dis B" by exhaustive search over R and X.
bool adjacent_via_dis(const Matrix& A, const Matrix& B, std::uint64_t budget = kDefaultBudget);
bool adjacent_via_dis(const MatrixSpace& space, std::uint32_t a, std::uint32_t b);

}  // namespace matgeom
