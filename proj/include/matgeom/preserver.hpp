#pragma once

// Standard preservers A -> T A_sigma S + R (and, for square shapes,
// A -> T (A_sigma)^t S + R), tabulated bijections of M_{m,n}, certification
// that a table preserves the dis relation in both directions, and recovery of
// (T, S, R, sigma, transposed) from a table.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matgeom/matspace.hpp"

namespace matgeom {

struct StandardPreserver {
    Matrix T;  // invertible m x m
    Matrix S;  // invertible n x n
    Matrix R;  // m x n translation
    FieldAutomorphism sigma;
    bool transposed = false;

    SpaceSpec spec() const { return R.spec(); }

    static StandardPreserver identity(const SpaceSpec& spec);

    friend bool operator==(const StandardPreserver& a, const StandardPreserver& b) noexcept {
        return a.T == b.T && a.S == b.S && a.R == b.R && a.sigma == b.sigma && a.transposed == b.transposed;
    }
};

/// Checks shapes, invertibility of T and S, and transposed => m == n.
void validate(const StandardPreserver& f);

/// Rescales (T, S) -> (c T, c^-1 S) so the first nonzero entry of T in
/// row-major order is 1.
StandardPreserver canonicalize(StandardPreserver f);

Matrix apply(const StandardPreserver& f, const Matrix& a);

/// f after g.
StandardPreserver compose(const StandardPreserver& f, const StandardPreserver& g);

/// T, S uniform over invertible matrices, R uniform, sigma uniform over the
/// automorphism group, transposed uniform when allowed and m == n.
StandardPreserver random_preserver(const SpaceSpec& spec, std::uint64_t seed, bool allow_transpose = true);

/// A bijection of M_{m,n}: image[i] = index(phi(decode(i))).
class MapTable {
public:
    /// Throws PreconditionError unless `image` is a permutation of [0, q^(mn)).
    MapTable(SpaceSpec spec, std::vector<std::uint32_t> image);

    static MapTable identity(const SpaceSpec& spec);

    const SpaceSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return image_.size(); }
    std::uint32_t operator[](std::uint32_t i) const noexcept { return image_[i]; }
    const std::vector<std::uint32_t>& image() const noexcept { return image_; }

    /// phi(A) as a matrix.
    Matrix map(const Matrix& a) const;

    /// Table of (*this) after `inner`.
    MapTable after(const MapTable& inner) const;

    friend bool operator==(const MapTable& a, const MapTable& b) noexcept {
        return a.spec_ == b.spec_ && a.image_ == b.image_;
    }

private:
    SpaceSpec spec_;
    std::vector<std::uint32_t> image_;
};

MapTable to_table(const StandardPreserver& f, std::uint64_t budget = kDefaultBudget);

enum class CertifyMode { exhaustive, sampled };

std::string to_string(CertifyMode mode);

struct Certificate {
    bool preserving = true;
    /// A pair with (A dis B) != (phi(A) dis phi(B)).
    std::optional<std::pair<Matrix, Matrix>> counterexample;
    std::uint64_t pairs_checked = 0;
    CertifyMode mode = CertifyMode::exhaustive;
};

/// Exhaustive mode checks every ordered pair A != B and stops at the first
/// failure. Sampled mode draws `samples` seeded pairs; only a negative
/// verdict is conclusive there.
Certificate certify_dis(const MapTable& phi, CertifyMode mode = CertifyMode::exhaustive,
                        std::uint64_t samples = 0, std::uint64_t seed = 0);
Certificate certify_dis(const MatrixSpace& space, const MapTable& phi, CertifyMode mode = CertifyMode::exhaustive,
                        std::uint64_t samples = 0, std::uint64_t seed = 0);

enum class DecomposeStep {
    non_rank_one_image,     // a matrix unit is not sent to a rank-one matrix
    inconsistent_lines,     // images of matrix units do not share a row or column factor
    sigma_not_automorphism, // the induced scalar map is not a field automorphism
    singular_factor,        // recovered T or S is singular
    table_mismatch,         // the assembled preserver does not reproduce the table
};

std::string to_string(DecomposeStep step);

class DecomposeError : public std::runtime_error {
public:
    DecomposeError(DecomposeStep step, const std::string& what)
        : std::runtime_error(to_string(step) + ": " + what), step_(step) {}
    DecomposeStep step() const noexcept { return step_; }

private:
    DecomposeStep step_;
};

/// Recovers the canonical standard preserver whose table equals `phi`.
/// Requires |F| >= 3 and m >= n >= 2; throws DecomposeError naming the failed
/// step when `phi` is not a standard preserver.
StandardPreserver decompose(const MapTable& phi);

/// For invertible square A: which rank-one x y^t make A - x y^t invertible,
/// listed in matrix-index order over all rank-one matrices.
std::vector<bool> rank_one_invertibility_profile(const Matrix& a);

/// A - x y^t invertible <=> B - x y^t invertible, for every rank-one x y^t.
bool rank_one_profiles_agree(const Matrix& a, const Matrix& b);

}  // namespace matgeom
