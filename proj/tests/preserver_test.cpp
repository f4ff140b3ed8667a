#include <gtest/gtest.h>

#include "matgeom/errors.hpp"
#include "matgeom/preserver.hpp"
#include "matgeom/random.hpp"

using namespace matgeom;

namespace {

MapTable table_of(const SpaceSpec& spec, Matrix (*fn)(const Matrix&)) {
    std::vector<std::uint32_t> image(spec.size());
    for (std::uint32_t i = 0; i < image.size(); ++i)
        image[i] = static_cast<std::uint32_t>(matrix_index(fn(matrix_from_index(spec, i))));
    return MapTable(spec, std::move(image));
}

Matrix transpose_map(const Matrix& a) { return transpose(a); }

MapTable swapped(const MapTable& t, std::uint32_t i, std::uint32_t j) {
    auto image = t.image();
    std::swap(image[i], image[j]);
    return MapTable(t.spec(), std::move(image));
}

DecomposeStep failing_step(const MapTable& t) {
    try {
        decompose(t);
    } catch (const DecomposeError& e) {
        return e.step();
    }
    ADD_FAILURE() << "decompose accepted a table it should reject";
    return DecomposeStep::table_mismatch;
}

}  // namespace

class Preserver : public ::testing::Test {
protected:
    FieldPtr f3 = Field::make(3);
    FieldPtr f4 = Field::make(4);
    SpaceSpec s22 = {f3, 2, 2};
    SpaceSpec s22_4 = {f4, 2, 2};
};

TEST_F(Preserver, ApplyExamples) {
    const auto id = StandardPreserver::identity(s22);
    const Matrix A(f3, 2, 2, {1, 2, 0, 1});
    EXPECT_EQ(apply(id, A), A);

    auto shift = id;
    shift.R = A;
    EXPECT_EQ(apply(shift, Matrix(s22)), A);

    auto frob = StandardPreserver::identity(s22_4);
    frob.sigma = {f4, 1};
    EXPECT_EQ(apply(frob, Matrix::unit(f4, 2, 2, 0, 0, 2)), Matrix::unit(f4, 2, 2, 0, 0, 3));

    EXPECT_THROW(apply(id, Matrix(f3, 3, 2)), SpecMismatch);
}

TEST_F(Preserver, Validation) {
    auto f = StandardPreserver::identity(s22);
    f.T = Matrix(s22);
    EXPECT_THROW(validate(f), PreconditionError);
    auto g = StandardPreserver::identity({f3, 3, 2});
    g.transposed = true;
    EXPECT_THROW(validate(g), PreconditionError);
    EXPECT_NO_THROW(validate(StandardPreserver::identity({f3, 3, 2})));
}

TEST_F(Preserver, ToTableExamples) {
    EXPECT_EQ(to_table(StandardPreserver::identity(s22)), MapTable::identity(s22));

    auto shift = StandardPreserver::identity(s22);
    shift.R = Matrix::unit(f3, 2, 2, 1, 0);
    const auto t = to_table(shift);
    for (std::uint32_t i = 0; i < t.size(); ++i) EXPECT_NE(t[i], i);

    EXPECT_THROW(to_table(StandardPreserver::identity({Field::make(9), 3, 3})), BudgetExceeded);
}

TEST_F(Preserver, MapTableRejectsNonPermutations) {
    std::vector<std::uint32_t> image(81, 0);
    EXPECT_THROW(MapTable(s22, image), PreconditionError);
    EXPECT_THROW(MapTable(s22, std::vector<std::uint32_t>(80)), PreconditionError);
}

TEST_F(Preserver, CertifyGenuinePreservers) {
    const MatrixSpace space(s22);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto cert = certify_dis(space, to_table(random_preserver(s22, seed)));
        ASSERT_TRUE(cert.preserving);
        ASSERT_EQ(cert.pairs_checked, 81u * 80u);
    }
    EXPECT_TRUE(certify_dis(table_of(s22, transpose_map)).preserving);
}

TEST_F(Preserver, CertifyDetectsSwap) {
    // E11 (index 1) and I (index 1 + 27 = 28) have different dis-neighbourhoods.
    const auto t = swapped(MapTable::identity(s22), 1, 28);
    const auto cert = certify_dis(t);
    ASSERT_FALSE(cert.preserving);
    ASSERT_TRUE(cert.counterexample.has_value());
    const auto& [A, B] = *cert.counterexample;
    EXPECT_NE(is_dis(A, B), is_dis(t.map(A), t.map(B)));
}

TEST_F(Preserver, SampledCertificationIsOneSided) {
    const auto good = certify_dis(to_table(random_preserver(s22, 4)), CertifyMode::sampled, 500, 1);
    EXPECT_TRUE(good.preserving);
    EXPECT_EQ(good.pairs_checked, 500u);
    EXPECT_EQ(good.mode, CertifyMode::sampled);

    const auto bad = certify_dis(swapped(MapTable::identity(s22), 0, 80), CertifyMode::sampled, 20000, 1);
    ASSERT_FALSE(bad.preserving);
    const auto& [A, B] = *bad.counterexample;
    EXPECT_NE(A, B);
}

TEST_F(Preserver, DecomposeIdentityAndTranspose) {
    EXPECT_EQ(decompose(MapTable::identity(s22)), StandardPreserver::identity(s22));
    const auto tr = decompose(table_of(s22, transpose_map));
    EXPECT_TRUE(tr.transposed);
    EXPECT_EQ(tr.T, Matrix::identity(f3, 2));
    EXPECT_EQ(tr.S, Matrix::identity(f3, 2));
    EXPECT_TRUE(tr.R.is_zero());
    EXPECT_TRUE(tr.sigma.is_identity());
}

TEST_F(Preserver, DecomposeRoundTripGF4) {
    int nontrivial = 0, transposed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto f = random_preserver(s22_4, seed);
        nontrivial += !f.sigma.is_identity();
        transposed += f.transposed;
        const auto table = to_table(f);
        const auto g = decompose(table);
        ASSERT_EQ(to_table(g), table);
        ASSERT_EQ(g, canonicalize(f));
    }
    EXPECT_GT(nontrivial, 0);
    EXPECT_GT(transposed, 0);
}

TEST_F(Preserver, DecomposeRectangular) {
    const SpaceSpec s32{f3, 3, 2};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_preserver(s32, seed);
        EXPECT_FALSE(f.transposed);
        ASSERT_EQ(decompose(to_table(f)), f);
    }
}

TEST_F(Preserver, DecomposeReportsFailingStep) {
    const auto id = MapTable::identity(s22);
    // E11 <-> I: the image of E11 has rank two.
    EXPECT_EQ(failing_step(swapped(id, 1, 28)), DecomposeStep::non_rank_one_image);
    // E12 <-> E22: images of E11 and E12 share neither row nor column space.
    EXPECT_EQ(failing_step(swapped(id, 3, 27)), DecomposeStep::inconsistent_lines);
    // Two rank-two matrices away from the probed matrix units.
    EXPECT_EQ(failing_step(swapped(id, 28, 56)), DecomposeStep::table_mismatch);

    // Entrywise 2 <-> 3 on GF(5) fixes 0 and 1 but is not additive.
    const auto f5 = Field::make(5);
    const SpaceSpec s5{f5, 2, 2};
    auto perm = [](const Matrix& a) {
        Matrix b = a;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (b(r, c) == 2) b(r, c) = 3;
                else if (b(r, c) == 3) b(r, c) = 2;
        return b;
    };
    std::vector<std::uint32_t> image(s5.size());
    for (std::uint32_t i = 0; i < image.size(); ++i)
        image[i] = static_cast<std::uint32_t>(matrix_index(perm(matrix_from_index(s5, i))));
    EXPECT_EQ(failing_step(MapTable(s5, image)), DecomposeStep::sigma_not_automorphism);

    EXPECT_THROW(decompose(MapTable::identity({Field::make(2), 2, 2})), PreconditionError);
}

TEST_F(Preserver, ComposeMatchesTableComposition) {
    const auto id = StandardPreserver::identity(s22);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto f = random_preserver(s22, seed);
        const auto g = random_preserver(s22, seed + 1000);
        ASSERT_EQ(compose(f, id), f);
        ASSERT_EQ(compose(id, f), f);
        ASSERT_EQ(to_table(compose(f, g)), to_table(f).after(to_table(g)));
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto f = random_preserver(s22_4, seed);
        const auto g = random_preserver(s22_4, seed + 77);
        ASSERT_EQ(to_table(compose(f, g)), to_table(f).after(to_table(g)));
    }
    auto t = id;
    t.transposed = true;
    const auto tt = compose(t, t);
    EXPECT_FALSE(tt.transposed);
    EXPECT_EQ(to_table(tt), MapTable::identity(s22));
    EXPECT_THROW(compose(id, StandardPreserver::identity({f3, 3, 2})), SpecMismatch);
}

TEST_F(Preserver, RandomPreserverContract) {
    EXPECT_EQ(random_preserver(s22, 42), random_preserver(s22, 42));
    bool differs = false;
    for (std::uint64_t s = 0; s < 5; ++s) differs |= !(random_preserver(s22, s) == random_preserver(s22, s + 1));
    EXPECT_TRUE(differs);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto f = random_preserver(s22_4, s, /*allow_transpose=*/false);
        ASSERT_FALSE(f.transposed);
        ASSERT_EQ(canonicalize(f), f);
    }
    EXPECT_THROW(random_preserver({Field::make(2), 2, 2}, 0), PreconditionError);
    EXPECT_THROW(random_preserver({f3, 2, 3}, 0), PreconditionError);
}

TEST_F(Preserver, CanonicalFormAbsorbsScalarGauge) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto f = random_preserver(s22_4, seed);
        for (int c = 1; c < 4; ++c) {
            auto g = f;
            g.T = scale(static_cast<Elem>(c), f.T);
            g.S = scale(f4->inv(static_cast<Elem>(c)), f.S);
            ASSERT_EQ(to_table(g), to_table(f));
            ASSERT_EQ(canonicalize(g), f);
        }
    }
}

TEST_F(Preserver, RankOneProfileSeparatesInvertibleMatrices) {
    std::vector<Matrix> gl;
    for (const auto& a : enumerate_matrices(s22))
        if (rank(a) == 2) gl.push_back(a);
    ASSERT_EQ(gl.size(), 48u);
    for (const auto& a : gl)
        for (const auto& b : gl) ASSERT_EQ(rank_one_profiles_agree(a, b), a == b);
    EXPECT_EQ(rank_one_invertibility_profile(gl.front()).size(), 32u);
    EXPECT_THROW(rank_one_invertibility_profile(Matrix::unit(f3, 2, 2, 0, 0)), PreconditionError);
}
