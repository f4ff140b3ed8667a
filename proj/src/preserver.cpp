#include "matgeom/preserver.hpp"

#include <algorithm>

#include "matgeom/errors.hpp"
#include "matgeom/random.hpp"
#include "matgeom/witness.hpp"

namespace matgeom {

StandardPreserver StandardPreserver::identity(const SpaceSpec& spec) {
    return {Matrix::identity(spec.field, spec.m), Matrix::identity(spec.field, spec.n), Matrix(spec),
            FieldAutomorphism{spec.field, 0}, false};
}

void validate(const StandardPreserver& f) {
    const int m = f.R.rows();
    const int n = f.R.cols();
    if (f.T.rows() != m || f.T.cols() != m) throw PreconditionError("preserver: T must be m x m");
    if (f.S.rows() != n || f.S.cols() != n) throw PreconditionError("preserver: S must be n x n");
    if (!same_field(f.T.field(), f.R.field()) || !same_field(f.S.field(), f.R.field()) ||
        !same_field(f.sigma.field, f.R.field()))
        throw SpecMismatch("preserver: components over different fields");
    if (f.sigma.frobenius_power < 0 || f.sigma.frobenius_power >= f.R.F().k())
        throw PreconditionError("preserver: sigma out of range");
    if (f.transposed && m != n) throw PreconditionError("preserver: transposed form needs m == n");
    if (rank(f.T) != m) throw PreconditionError("preserver: T is singular");
    if (rank(f.S) != n) throw PreconditionError("preserver: S is singular");
}

StandardPreserver canonicalize(StandardPreserver f) {
    const auto entries = f.T.entries();
    const auto lead = std::find_if(entries.begin(), entries.end(), [](Elem e) { return e != 0; });
    if (lead == entries.end()) throw PreconditionError("preserver: T is zero");
    const Field& F = f.T.F();
    const Elem c = *lead;
    f.T = scale(F.inv(c), f.T);
    f.S = scale(c, f.S);
    return f;
}

Matrix apply(const StandardPreserver& f, const Matrix& a) {
    if (!(a.spec() == f.spec())) throw SpecMismatch("apply: matrix does not match the preserver's space");
    Matrix twisted = apply_automorphism(f.sigma, a);
    if (f.transposed) twisted = transpose(twisted);
    return f.T * twisted * f.S + f.R;
}

StandardPreserver compose(const StandardPreserver& f, const StandardPreserver& g) {
    if (!(f.spec() == g.spec())) throw SpecMismatch("compose: preservers act on different spaces");
    const auto& s = f.sigma;
    const Matrix Tg = apply_automorphism(s, g.T);
    const Matrix Sg = apply_automorphism(s, g.S);
    const Matrix Rg = apply_automorphism(s, g.R);
    StandardPreserver out;
    out.sigma = f.sigma.after(g.sigma);
    if (!f.transposed) {
        out.T = f.T * Tg;
        out.S = Sg * f.S;
        out.R = f.T * Rg * f.S + f.R;
        out.transposed = g.transposed;
    } else {
        out.T = f.T * transpose(Sg);
        out.S = transpose(Tg) * f.S;
        out.R = f.T * transpose(Rg) * f.S + f.R;
        out.transposed = !g.transposed;
    }
    return canonicalize(std::move(out));
}

namespace {

Matrix random_matrix(Rng& rng, const FieldPtr& field, int rows, int cols) {
    Matrix a(field, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a(r, c) = static_cast<Elem>(rng.below(field->q()));
    return a;
}

Matrix random_invertible(Rng& rng, const FieldPtr& field, int n) {
    for (;;) {
        Matrix a = random_matrix(rng, field, n, n);
        if (rank(a) == n) return a;
    }
}

}  // namespace

StandardPreserver random_preserver(const SpaceSpec& spec, std::uint64_t seed, bool allow_transpose) {
    require_preserver_hypotheses(spec);
    Rng rng(seed);
    StandardPreserver f;
    f.T = random_invertible(rng, spec.field, spec.m);
    f.S = random_invertible(rng, spec.field, spec.n);
    f.R = random_matrix(rng, spec.field, spec.m, spec.n);
    f.sigma = {spec.field, static_cast<int>(rng.below(spec.field->k()))};
    f.transposed = allow_transpose && spec.m == spec.n && rng.coin();
    return canonicalize(std::move(f));
}

MapTable::MapTable(SpaceSpec spec, std::vector<std::uint32_t> image) : spec_(std::move(spec)), image_(std::move(image)) {
    if (image_.size() != spec_.size()) throw PreconditionError("map table: wrong number of entries");
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
        if (v >= image_.size() || seen[v]) throw PreconditionError("map table: image is not a permutation");
        seen[v] = true;
    }
}

MapTable MapTable::identity(const SpaceSpec& spec) {
    std::vector<std::uint32_t> image(spec.size());
    for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = i;
    return MapTable(spec, std::move(image));
}

Matrix MapTable::map(const Matrix& a) const {
    if (!(a.spec() == spec_)) throw SpecMismatch("map table: matrix from a different space");
    return matrix_from_index(spec_, image_[matrix_index(a)]);
}

MapTable MapTable::after(const MapTable& inner) const {
    if (!(inner.spec_ == spec_)) throw SpecMismatch("map table: composing tables of different spaces");
    std::vector<std::uint32_t> image(image_.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = image_[inner.image_[i]];
    return MapTable(spec_, std::move(image));
}

MapTable to_table(const StandardPreserver& f, std::uint64_t budget) {
    validate(f);
    const SpaceSpec spec = f.spec();
    if (spec.size() > budget) throw BudgetExceeded("to_table: space exceeds budget");
    std::vector<std::uint32_t> image(spec.size());
    for (std::uint32_t i = 0; i < image.size(); ++i)
        image[i] = static_cast<std::uint32_t>(matrix_index(apply(f, matrix_from_index(spec, i))));
    return MapTable(spec, std::move(image));
}

std::string to_string(CertifyMode mode) { return mode == CertifyMode::exhaustive ? "exhaustive" : "sampled"; }

Certificate certify_dis(const MatrixSpace& space, const MapTable& phi, CertifyMode mode, std::uint64_t samples,
                        std::uint64_t seed) {
    if (!(space.spec() == phi.spec())) throw SpecMismatch("certify_dis: table and space differ");
    Certificate cert;
    cert.mode = mode;
    auto check = [&](std::uint32_t a, std::uint32_t b) {
        ++cert.pairs_checked;
        if (space.dis(a, b) != space.dis(phi[a], phi[b])) {
            cert.preserving = false;
            cert.counterexample = std::make_pair(space.decode(a), space.decode(b));
            return false;
        }
        return true;
    };
    const std::uint32_t n = space.size();
    if (mode == CertifyMode::exhaustive) {
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                if (a != b && !check(a, b)) return cert;
    } else {
        if (n < 2) return cert;
        Rng rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            const auto a = static_cast<std::uint32_t>(rng.below(n));
            auto b = static_cast<std::uint32_t>(rng.below(n - 1));
            if (b >= a) ++b;
            if (!check(a, b)) return cert;
        }
    }
    return cert;
}

Certificate certify_dis(const MapTable& phi, CertifyMode mode, std::uint64_t samples, std::uint64_t seed) {
    const MatrixSpace space(phi.spec(), std::max<std::uint64_t>(kDefaultBudget, phi.size()));
    return certify_dis(space, phi, mode, samples, seed);
}

std::string to_string(DecomposeStep step) {
    switch (step) {
        case DecomposeStep::non_rank_one_image: return "non_rank_one_image";
        case DecomposeStep::inconsistent_lines: return "inconsistent_lines";
        case DecomposeStep::sigma_not_automorphism: return "sigma_not_automorphism";
        case DecomposeStep::singular_factor: return "singular_factor";
        case DecomposeStep::table_mismatch: return "table_mismatch";
    }
    return "unknown";
}

namespace {

int first_nonzero(const Matrix& v) {
    for (int i = 0; i < v.rows(); ++i)
        if (v(i, 0) != 0) return i;
    return -1;
}

std::pair<Matrix, Matrix> factor_image(const Matrix& img, const char* what) {
    if (rank(img) != 1) throw DecomposeError(DecomposeStep::non_rank_one_image, std::string("image of ") + what);
    return rank_one_factor(img);
}

// Standard-form recovery for psi(A) = phi(A) - phi(0), given as a callback.
template <class Psi>
StandardPreserver decompose_standard(const SpaceSpec& spec, Psi&& psi) {
    const FieldPtr& field = spec.field;
    const Field& F = *field;
    const int m = spec.m;
    const int n = spec.n;
    auto unit = [&](int r, int c, Elem v = 1) { return Matrix::unit(field, m, n, r, c, v); };

    const auto [t1, s1] = factor_image(psi(unit(0, 0)), "E11");
    const Matrix base = t1 * transpose(s1);
    const int r0 = first_nonzero(t1);  // t1(r0) == 1
    const int c0 = first_nonzero(s1);

    std::vector<Elem> sigma_values(F.q());
    for (int lam = 0; lam < F.q(); ++lam) {
        const Matrix img = psi(unit(0, 0, static_cast<Elem>(lam)));
        const Elem mu = F.mul(img(r0, c0), F.inv(s1(c0, 0)));
        if (!(scale(mu, base) == img))
            throw DecomposeError(DecomposeStep::sigma_not_automorphism, "image of a scalar multiple of E11 leaves its line");
        sigma_values[lam] = mu;
    }
    std::optional<FieldAutomorphism> sigma;
    for (const auto& cand : automorphism_group(field)) {
        bool match = true;
        for (int lam = 0; lam < F.q() && match; ++lam)
            match = F.frobenius(cand.frobenius_power, static_cast<Elem>(lam)) == sigma_values[lam];
        if (match) {
            sigma = cand;
            break;
        }
    }
    if (!sigma) throw DecomposeError(DecomposeStep::sigma_not_automorphism, "induced scalar map is not a Frobenius power");

    Matrix T(field, m, m);
    Matrix S(field, n, n);
    const Elem s1_inv = F.inv(s1(c0, 0));
    for (int i = 0; i < m; ++i) {
        const Matrix img = psi(unit(i, 0));
        Matrix ti = scale(s1_inv, img.col(c0));
        if (!(ti * transpose(s1) == img))
            throw DecomposeError(DecomposeStep::inconsistent_lines, "image of E_i1 does not share the row factor of E11");
        for (int r = 0; r < m; ++r) T(r, i) = ti(r, 0);
    }
    for (int j = 0; j < n; ++j) {
        const Matrix img = psi(unit(0, j));
        Matrix sj = transpose(img.row(r0));
        if (!(t1 * transpose(sj) == img))
            throw DecomposeError(DecomposeStep::inconsistent_lines, "image of E_1j does not share the column factor of E11");
        for (int c = 0; c < n; ++c) S(j, c) = sj(c, 0);
    }
    if (rank(T) != m) throw DecomposeError(DecomposeStep::singular_factor, "T is singular");
    if (rank(S) != n) throw DecomposeError(DecomposeStep::singular_factor, "S is singular");
    return {std::move(T), std::move(S), Matrix(spec), *sigma, false};
}

}  // namespace

StandardPreserver decompose(const MapTable& phi) {
    const SpaceSpec& spec = phi.spec();
    require_preserver_hypotheses(spec);
    const Matrix R = matrix_from_index(spec, phi[0]);
    auto psi = [&](const Matrix& a) { return phi.map(a) - R; };

    bool transposed = false;
    if (spec.m == spec.n) {
        const auto [x11, y11] = factor_image(psi(Matrix::unit(spec.field, spec.m, spec.n, 0, 0)), "E11");
        const auto [x12, y12] = factor_image(psi(Matrix::unit(spec.field, spec.m, spec.n, 0, 1)), "E12");
        if (x11 == x12) {
            transposed = false;
        } else if (rank(hstack(y11, y12)) == 1) {
            transposed = true;
        } else {
            throw DecomposeError(DecomposeStep::inconsistent_lines, "images of E11 and E12 share neither row nor column space");
        }
    }

    StandardPreserver f = transposed ? decompose_standard(spec, [&](const Matrix& a) { return psi(transpose(a)); })
                                     : decompose_standard(spec, psi);
    f.R = R;
    f.transposed = transposed;
    f = canonicalize(std::move(f));
    if (!(to_table(f, phi.size()) == phi))
        throw DecomposeError(DecomposeStep::table_mismatch, "assembled preserver does not reproduce the table");
    return f;
}

std::vector<bool> rank_one_invertibility_profile(const Matrix& a) {
    if (a.rows() != a.cols() || rank(a) != a.rows())
        throw PreconditionError("rank-one profile: matrix must be square and invertible");
    std::vector<bool> profile;
    for (const auto& u : enumerate_matrices(a.spec()))
        if (rank(u) == 1) profile.push_back(rank(a - u) == a.rows());
    return profile;
}

bool rank_one_profiles_agree(const Matrix& a, const Matrix& b) {
    if (!(a.spec() == b.spec())) throw SpecMismatch("rank-one profile: matrices of different spaces");
    return rank_one_invertibility_profile(a) == rank_one_invertibility_profile(b);
}

}  // namespace matgeom
