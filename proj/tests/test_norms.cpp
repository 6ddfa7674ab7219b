#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qg/qg.hpp"

using namespace qg;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("schatten norms on known matrices") {
    const Matrix m = diag2(3.0, 4.0);
    CHECK(schatten_norm(m, Exponent::finite(1)) == Catch::Approx(7.0).epsilon(1e-13));
    CHECK(schatten_norm(m, Exponent::finite(2)) == Catch::Approx(5.0).epsilon(1e-13));
    CHECK(schatten_norm(m, Exponent::finite(3)) ==
          Catch::Approx(std::cbrt(91.0)).epsilon(1e-13));
    CHECK(schatten_norm(m, Exponent::inf()) == Catch::Approx(4.0).epsilon(1e-13));
    CHECK(operator_norm(m) == Catch::Approx(4.0).epsilon(1e-13));

    SECTION("unitary invariance of S^2") {
        Matrix u(2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        u << s, s, -s, s;
        CHECK(schatten_norm(u * m, Exponent::finite(2)) ==
              Catch::Approx(5.0).epsilon(1e-12));
    }
}

TEST_CASE("weighted norms over the dual") {
    QGModel m = QGModel::suq2(0.5);

    SECTION("p = infinity drops all weights") {
        DualElement a;
        a.blocks[1] = diag2(3.0, 1.0);
        CHECK(lp_norm_dual(a, Exponent::inf(), m) == Catch::Approx(3.0).epsilon(1e-13));
    }

    SECTION("p = 2 squares against d and Q") {
        DualElement a;
        a.blocks[1] = Matrix::Zero(2, 2);
        a.blocks[1](0, 1) = 1.0;  // entry scales by q_1 = 0.5 under Q^{1/2} columns
        const double expected = std::sqrt(2.5 * 0.5);
        CHECK(lp_norm_dual(a, Exponent::finite(2), m) ==
              Catch::Approx(expected).epsilon(1e-13));
    }

    SECTION("l2 via direct sum matches inner-product route") {
        Rng rng(11);
        for (int c = 0; c < 20; ++c) {
            DualElement f = random_dual_element(m, 4, rng);
            CHECK(rel_err(l2_norm(f, m), l2_norm_via_inner(f, m)) < 1e-12);
        }
    }

    SECTION("dual weight of identity blocks is d squared") {
        DualElement a;
        a.blocks[2] = Matrix::Identity(3, 3);
        const cplx w = dual_weight(a, m);
        CHECK(w.real() == Catch::Approx(5.25 * 5.25).epsilon(1e-13));
        CHECK(std::abs(w.imag()) < 1e-15);
    }

    SECTION("norm scales homogeneously") {
        Rng rng(12);
        DualElement f = random_dual_element(m, 4, rng);
        for (const char* ps : {"1", "1.5", "2", "3", "inf"}) {
            const Exponent p = Exponent::parse(ps);
            CHECK(rel_err(lp_norm_dual(f, p, m) * 2.0, [&] {
                      DualElement g = f;
                      for (auto& [lab, b] : g.blocks) b *= 2.0;
                      return lp_norm_dual(g, p, m);
                  }()) < 1e-12);
        }
    }
}

TEST_CASE("plancherel for permutation elements") {
    // h(f^* f) = sum_i |y_i|^2 (Q_ii)^{-1} / d, summed over terms
    for (double q : {0.3, 0.5, 0.9}) {
        QGModel m = QGModel::suq2(q);
        Rng rng(21);
        for (int c = 0; c < 25; ++c) {
            PermElement f = random_perm_element(m, 4, rng);
            double expected_sq = 0.0;
            for (const auto& [lab, t] : f.terms) {
                const Irrep& r = m.irrep(lab);
                for (int i = 0; i < r.dim; ++i)
                    expected_sq += std::norm(t.y[i]) / (r.qdiag[i] * r.qdim);
            }
            const double got = l2_norm(fourier_of_perm(f, m), m);
            CHECK(rel_err(got, std::sqrt(expected_sq)) < 1e-12);
        }
    }
}

TEST_CASE("haar inner product orthogonality") {
    QGModel m = QGModel::suq2(0.5);
    // single matrix elements are orthogonal across indices
    const DualElement a = fourier_of_perm(matrix_element(m, 1, 0, 1), m);
    const DualElement b = fourier_of_perm(matrix_element(m, 1, 1, 0), m);
    CHECK(std::abs(haar_inner(a, b, m)) < 1e-15);
    const cplx self = haar_inner(a, a, m);
    // h((u_01)^* u_01) = (Q_00)^{-1} / d = 0.5 / 2.5
    CHECK(self.real() == Catch::Approx(0.5 / 2.5).epsilon(1e-13));
    CHECK(std::abs(self.imag()) < 1e-15);
}

TEST_CASE("modular action") {
    QGModel m = QGModel::suq2(0.5);
    Rng rng(31);

    SECTION("group law sigma_z sigma_w = sigma_{z+w}") {
        const DualElement f = random_dual_element(m, 3, rng);
        const cplx z(0.3, -0.7), w(-1.1, 0.25);
        const DualElement lhs = sigma_action(sigma_action(f, w, m), z, m);
        const DualElement rhs = sigma_action(f, z + w, m);
        for (const auto& [lab, b] : lhs.blocks)
            CHECK((b - rhs.blocks.at(lab)).norm() <= 1e-12 * (1.0 + b.norm()));
    }

    SECTION("sigma_0 is the identity") {
        const DualElement f = random_dual_element(m, 3, rng);
        const DualElement g = sigma_action(f, cplx(0.0, 0.0), m);
        for (const auto& [lab, b] : g.blocks)
            CHECK((b - f.blocks.at(lab)).norm() == 0.0);
    }

    SECTION("kms identity on generator grids") {
        for (double q : {0.3, 0.5, 0.9}) {
            QGModel mq = QGModel::suq2(q);
            for (int k = 0; k <= 3; ++k)
                for (int i = 0; i <= k; ++i)
                    for (int j = 0; j <= k; ++j)
                        CHECK(kms_check(mq, k, i, j).passed());
        }
    }

    SECTION("kms on random generic models") {
        Rng grng(32);
        for (int t = 0; t < 10; ++t) {
            QGModel gm = random_generic_model(grng);
            for (int lab : gm.labels()) {
                const Irrep& r = gm.irrep(lab);
                for (int i = 0; i < r.dim; ++i)
                    for (int j = 0; j < r.dim; ++j)
                        CHECK(kms_check(gm, lab, i, j).passed());
            }
        }
    }
}
