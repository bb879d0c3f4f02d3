#include "support.hpp"

#include <random>

using namespace ergo;
using namespace ergo::test;

TEST(InducedNorm, IdentityOneNorm) { EXPECT_DOUBLE_EQ(induced_pnorm(Matrix::Identity(3, 3), PNorm::One), 1.0); }

TEST(InducedNorm, ZeroInfNorm) { EXPECT_DOUBLE_EQ(induced_pnorm(Matrix::Zero(2, 2), PNorm::Inf), 0.0); }

TEST(InducedNorm, SpectralNormOfRankOne) {
    // [[a,-a],[-a,a]] = 2a * u u^T with |u| = 1, so sigma_max = 2a.
    EXPECT_NEAR(induced_pnorm(mat({{0.4, -0.4}, {-0.4, 0.4}}), PNorm::Two), 0.8, 1e-15);
}

TEST(InducedNorm, RejectsNonFinite) {
    Matrix a = Matrix::Identity(2, 2);
    a(0, 1) = std::nan("");
    EXPECT_THROW(induced_pnorm(a, PNorm::One), InputError);
}

TEST(InducedNorm, DominatesRandomSamples) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> kind(0, 2), coord(0, 2);
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random::uniform(rng, 4, 3);
        for (PNorm p : kAllNorms) {
            const double closed = induced_pnorm(a, p);
            double best = 0.0;
            for (int s = 0; s < 10000; ++s) {
                // Dense points, signed coordinate vectors and sign vectors.
                Vector x(3);
                switch (kind(rng)) {
                    case 0: x = random::uniform_vector(rng, 3); break;
                    case 1: x = Vector::Zero(3); x(coord(rng)) = coin(rng) ? 1.0 : -1.0; break;
                    default:
                        for (int i = 0; i < 3; ++i) x(i) = coin(rng) ? 1.0 : -1.0;
                }
                x /= vector_pnorm(x, p);
                const double val = vector_pnorm(a * x, p);
                ASSERT_LE(val, closed + 1e-9);
                best = std::max(best, val);
            }
            EXPECT_GE(best, 0.98 * closed);
        }
    }
}

TEST(InducedNorm, TransposeDuality) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = random::uniform(rng, 5, 3);
        for (PNorm p : kAllNorms)
            EXPECT_NEAR(induced_pnorm(a.transpose(), p), induced_pnorm(a, conjugate(p)), 1e-9);
    }
}

TEST(PNormParse, AcceptsAndRejects) {
    EXPECT_EQ(parse_pnorm("1"), PNorm::One);
    EXPECT_EQ(parse_pnorm("2"), PNorm::Two);
    EXPECT_EQ(parse_pnorm("inf"), PNorm::Inf);
    EXPECT_THROW(parse_pnorm("3"), InputError);
}

TEST(Projectors, OrthogonalAxisAligned) {
    const Matrix p = orthogonal_projector(vec({1, 0, 0}));
    EXPECT_LE(max_abs_diff(p, Vector(vec({0, 1, 1})).asDiagonal().toDenseMatrix()), 1e-15);
}

TEST(Projectors, OrthogonalOfOnesIsAgreement) {
    EXPECT_LE(max_abs_diff(orthogonal_projector(Vector::Ones(4)), agreement_projector(4)), 1e-15);
}

TEST(Projectors, OrthogonalFixesPerpendicular) {
    const Vector x = vec({1, -1});
    EXPECT_LE((orthogonal_projector(vec({1, 1})) * x - x).norm(), 1e-15);
}

TEST(Projectors, OrthogonalRejectsZero) { EXPECT_THROW(orthogonal_projector(Vector::Zero(3)), InputError); }

TEST(Projectors, ObliqueUniformIsAgreement) {
    EXPECT_LE(max_abs_diff(oblique_projector(Vector::Constant(3, 1.0 / 3)), agreement_projector(3)), 1e-15);
}

TEST(Projectors, ObliqueAtFirstBasisVector) {
    EXPECT_LE(max_abs_diff(oblique_projector(vec({1, 0})), mat({{0, 0}, {-1, 1}})), 0.0);
}

TEST(Projectors, ObliqueAnnihilatesOnes) {
    EXPECT_LE((oblique_projector(vec({0.2, 0.3, 0.5})) * Vector::Ones(3)).norm(), 1e-15);
}

TEST(Projectors, ObliqueRejectsUnnormalized) { EXPECT_THROW(oblique_projector(vec({0.5, 0.6})), PreconditionError); }

TEST(Projectors, Idempotence) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto n = random::dimension(rng, 2, 7);
        const Matrix p = orthogonal_projector(random::uniform_vector(rng, n));
        EXPECT_LE(max_abs_diff(p * p, p), 1e-12);
        Vector w = random::uniform_vector(rng, n, 0.0, 1.0);
        w /= w.sum();
        const Matrix q = oblique_projector(w);
        EXPECT_LE(max_abs_diff(q * q, q), 1e-12);
        EXPECT_LE((w.transpose() * q).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Projectors, ObliqueCommutesWithChain) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const auto n = random::dimension(rng, 2, 7);
        const StochasticMatrix s(random::stochastic(rng, n));
        const Matrix q = oblique_projector(dominant_pair(s).left.vector());
        EXPECT_LE(max_abs_diff(s.matrix() * q, q * s.matrix()), 1e-12);
    }
}

TEST(Projectors, DeflatedPowers) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const auto n = random::dimension(rng, 2, 6);
        const StochasticMatrix s(random::stochastic(rng, n));
        const Matrix d = s.matrix() - Vector::Ones(n) * dominant_pair(s).left.vector().transpose();
        Matrix ak = Matrix::Identity(n, n), dk = Matrix::Identity(n, n);
        for (int k = 1; k <= 6; ++k) {
            ak = ak * s.matrix();
            dk = dk * d;
            EXPECT_LE(max_abs_diff(ak - Vector::Ones(n) * dominant_pair(s).left.vector().transpose(), dk), 1e-10);
        }
    }
}

TEST(Incidence, TwoNodes) {
    EXPECT_LE(max_abs_diff(incidence_complete(2), mat({{1, -1}, {-1, 1}})), 0.0);
}

TEST(Incidence, GramIsScaledAgreement) {
    for (Eigen::Index n = 2; n <= 7; ++n) {
        const Matrix c = incidence_complete(n);
        EXPECT_EQ(c.cols(), n * (n - 1));
        // Integer arithmetic: 2n Pi_n = 2n I - 2 * ones.
        const Matrix expected = 2.0 * n * Matrix::Identity(n, n) - 2.0 * Matrix::Ones(n, n);
        EXPECT_EQ(max_abs_diff(c * c.transpose(), expected), 0.0);
        EXPECT_EQ((c.transpose() * Vector::Ones(n)).cwiseAbs().maxCoeff(), 0.0);
    }
    EXPECT_LE(max_abs_diff(incidence_complete(3) * incidence_complete(3).transpose(), 6.0 * agreement_projector(3)), 1e-14);
}

TEST(Incidence, RejectsSingleNode) { EXPECT_THROW(incidence_complete(1), InputError); }

TEST(Stochastic, FlagsAndValidation) {
    const StochasticMatrix s(flip());
    EXPECT_TRUE(s.primitive());
    EXPECT_TRUE(s.doubly_stochastic());
    EXPECT_TRUE(s.positive_diagonal());
    const StochasticMatrix t(two_state());
    EXPECT_FALSE(t.doubly_stochastic());
    EXPECT_FALSE(StochasticMatrix(mat({{0, 1}, {1, 0}})).primitive());
    EXPECT_TRUE(StochasticMatrix(mat({{0, 1}, {0.5, 0.5}})).primitive());
    EXPECT_THROW(StochasticMatrix(mat({{0.5, 0.6}, {0.5, 0.5}})), PreconditionError);
    EXPECT_THROW(StochasticMatrix(mat({{1.5, -0.5}, {0.5, 0.5}})), PreconditionError);
}

TEST(Stochastic, WielandtExtremal) {
    // The Wielandt matrix needs exactly (n-1)^2 + 1 steps to become positive.
    const Eigen::Index n = 5;
    Matrix w = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) w(i, i + 1) = 1.0;
    w(n - 1, 0) = 0.5;
    w(n - 1, 1) = 0.5;
    EXPECT_TRUE(is_primitive(w));
}

TEST(DominantPair, DoublyStochasticIsUniform) {
    const auto pr = dominant_pair(StochasticMatrix(flip()));
    EXPECT_NEAR(pr.left[0], 0.5, 1e-15);
    EXPECT_NEAR(pr.left[1], 0.5, 1e-15);
    EXPECT_LE(pr.residual, 1e-12);
}

TEST(DominantPair, TwoStateExact) {
    const auto pr = dominant_pair(StochasticMatrix(two_state()));
    EXPECT_NEAR(pr.left[0], 1.0 / 3, 1e-14);
    EXPECT_NEAR(pr.left[1], 2.0 / 3, 1e-14);
    EXPECT_EQ(pr.right, Vector::Ones(2));
}

TEST(DominantPair, IdentityRejected) {
    EXPECT_THROW(dominant_pair(StochasticMatrix(Matrix::Identity(2, 2))), PreconditionError);
}

TEST(Eigen, DiagonalInput) {
    const auto ed = eigendecompose(vec({1, 3}).asDiagonal().toDenseMatrix());
    EXPECT_NEAR(ed.moduli[0], 3.0, 1e-15);
    EXPECT_NEAR(ed.moduli[1], 1.0, 1e-15);
    EXPECT_TRUE(ed.diagonalizable);
    EXPECT_TRUE(ed.real_spectrum);
}

TEST(Eigen, SymmetricTwoByTwo) {
    const auto ed = eigendecompose(sym09());
    EXPECT_NEAR(ed.eigenvalues[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(ed.eigenvalues[1].real(), 0.8, 1e-14);
}

TEST(Eigen, JordanBlockIsDefective) { EXPECT_FALSE(eigendecompose(mat({{1, 1}, {0, 1}})).diagonalizable); }

TEST(Eigen, ComplexSpectrumFlagged) {
    const auto ed = eigendecompose(mat({{0, -1}, {1, 0}}));
    EXPECT_FALSE(ed.real_spectrum);
    EXPECT_EQ(ed.eigenvectors.size(), 0);
    EXPECT_LE(max_abs_diff(ed.schur_vectors * ed.schur_form * ed.schur_vectors.transpose(), mat({{0, -1}, {1, 0}})), 1e-14);
}

TEST(PseudoInverse, InvertibleAndProjectorAndZero) {
    const Matrix s = mat({{2, 1}, {1, 3}});
    EXPECT_LE(max_abs_diff(pseudo_inverse(s), s.inverse()), 1e-14);
    const Matrix p = agreement_projector(3);
    EXPECT_LE(max_abs_diff(pseudo_inverse(p), p), 1e-14);
    const Matrix z = pseudo_inverse(Matrix::Zero(2, 3));
    EXPECT_EQ(z.rows(), 3);
    EXPECT_EQ(z.cols(), 2);
    EXPECT_EQ(z.cwiseAbs().maxCoeff(), 0.0);
}

TEST(PseudoInverse, PenroseConditions) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const Matrix r = random::uniform(rng, 4, 3) * random::uniform(rng, 3, 5);  // rank 3, 4 x 5
        const Matrix rp = pseudo_inverse(r);
        EXPECT_LE(max_abs_diff(r * rp * r, r), 1e-12);
        EXPECT_LE(max_abs_diff(rp * r * rp, rp), 1e-10);
        EXPECT_LE(max_abs_diff(r * rp, (r * rp).transpose()), 1e-12);
        EXPECT_LE(max_abs_diff(rp * r, (rp * r).transpose()), 1e-12);
    }
}

TEST(Io, CsvAndJson) {
    const Matrix a = io::parse_matrix("0.5,0.5\n0.25,0.75\n");
    EXPECT_EQ(a, two_state());
    const Matrix b = io::parse_matrix(R"({"rows": 2, "cols": 2, "data": [0.5, 0.5, 0.25, 0.75]})");
    EXPECT_EQ(b, two_state());
    EXPECT_THROW(io::parse_matrix("1,2\n3\n"), InputError);
    EXPECT_THROW(io::parse_matrix("1,x\n"), InputError);
    EXPECT_THROW(io::parse_matrix(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})"), InputError);
    EXPECT_EQ(io::parse_vector("1\n2\n3\n"), vec({1, 2, 3}));
    EXPECT_EQ(io::parse_vector("[1, 2]"), vec({1, 2}));
}

TEST(Io, SequenceFromDirectoryAndJson) {
    const auto seq = io::read_matrix_sequence(std::string(ERGO_SAMPLES_DIR) + "/sequence");
    ASSERT_EQ(seq.size(), 2u);
    EXPECT_DOUBLE_EQ(seq[0](0, 0), 0.5);
    EXPECT_DOUBLE_EQ(seq[1](0, 0), 0.25);
    EXPECT_THROW(io::read_matrix_sequence(std::string(ERGO_SAMPLES_DIR) + "/empty_sequence.json"), InputError);
}
