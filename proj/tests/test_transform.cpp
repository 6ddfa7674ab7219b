#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qg/qg.hpp"

using namespace qg;

TEST_CASE("fourier coefficients of matrix elements") {
    QGModel m = QGModel::suq2(0.5);
    const DualElement a = fourier_of_perm(matrix_element(m, 1, 0, 1), m);
    REQUIRE(a.blocks.count(1) == 1);
    const Matrix& b = a.blocks.at(1);
    // coefficient lands at (j, i) with magnitude (Q_ii)^{-1} / d
    CHECK(b(1, 0) == cplx(0.5 / 2.5, 0.0));
    CHECK(std::abs(b(0, 0)) == 0.0);
    CHECK(std::abs(b(0, 1)) == 0.0);
    CHECK(std::abs(b(1, 1)) == 0.0);
}

TEST_CASE("twist is invertible and trivial at the fixed points") {
    QGModel m = QGModel::suq2(0.5);
    Rng rng(41);
    const DualElement f = random_dual_element(m, 4, rng);

    SECTION("round trip") {
        for (const char* ps : {"1", "1.5", "3", "inf"})
            for (double x : {-1.0, 0.5, 2.0}) {
                const Exponent p = Exponent::parse(ps);
                const DualElement g =
                    twist_backward(twist_forward(f, p, x, m), p, x, m);
                for (const auto& [lab, b] : g.blocks)
                    CHECK((b - f.blocks.at(lab)).norm() <=
                          tol::rel_roundtrip * (1.0 + f.blocks.at(lab).norm()));
            }
    }

    SECTION("x = 0 and p = 2 are identities") {
        for (const auto& [p, x] : std::vector<std::pair<Exponent, double>>{
                 {Exponent::finite(1), 0.0}, {Exponent::finite(2), 1.7}}) {
            const DualElement g = twist_forward(f, p, x, m);
            for (const auto& [lab, b] : g.blocks)
                CHECK((b - f.blocks.at(lab)).norm() == 0.0);
        }
    }
}

TEST_CASE("closed-form twisted norms of a single matrix element") {
    QGModel m = QGModel::suq2(0.5);
    const PermElement f01 = matrix_element(m, 1, 0, 1);
    const PermElement f10 = matrix_element(m, 1, 1, 0);

    SECTION("p = 1 grows like the half-power of the weight ratio") {
        // value = (q_0/q_1)^{x/2} (q_0^{-1}/d) = 0.2 * 2^x
        for (double x : {-1.0, 0.0, 1.0, 2.0})
            CHECK(closed_form_perm_norm(f01, Exponent::finite(1), x, m) ==
                  Catch::Approx(0.2 * std::pow(2.0, x)).epsilon(1e-13));
        // swapped indices invert the ratio: 0.8 * 2^{-x}
        for (double x : {-1.0, 0.0, 1.0, 2.0})
            CHECK(closed_form_perm_norm(f10, Exponent::finite(1), x, m) ==
                  Catch::Approx(0.8 * std::pow(2.0, -x)).epsilon(1e-13));
    }

    SECTION("p = infinity decays in x") {
        for (double x : {0.0, 1.0, 2.0})
            CHECK(closed_form_perm_norm(f01, Exponent::inf(), x, m) ==
                  Catch::Approx(std::pow(2.0, -x)).epsilon(1e-13));
    }

    SECTION("p = 2 is x-independent") {
        const double v = closed_form_perm_norm(f01, Exponent::finite(2), 0.0, m);
        CHECK(v == Catch::Approx(std::sqrt(0.2)).epsilon(1e-13));
        for (double x : {-2.0, 0.7, 3.0})
            CHECK(closed_form_perm_norm(f01, Exponent::finite(2), x, m) ==
                  Catch::Approx(v).epsilon(1e-13));
    }

    SECTION("p = 1.5 interpolates") {
        CHECK(closed_form_perm_norm(f01, Exponent::finite(1.5), 0.0, m) ==
              Catch::Approx(std::cbrt(0.04)).epsilon(1e-13));
    }
}

TEST_CASE("monotone direction of the twisted norm in x") {
    QGModel m = QGModel::suq2(0.5);
    const auto grid = uniform_grid(0.0, 1.0, 8);
    for (const char* ps : {"1", "1.5"}) {
        const Exponent p = Exponent::parse(ps);
        const DualElement up = fourier_of_perm(matrix_element(m, 1, 0, 1), m);
        const DualElement down = fourier_of_perm(matrix_element(m, 1, 1, 0), m);
        for (size_t i = 1; i < grid.size(); ++i) {
            CHECK(twisted_norm(up, p, grid[i], m) >
                  twisted_norm(up, p, grid[i - 1], m));
            CHECK(twisted_norm(down, p, grid[i], m) <
                  twisted_norm(down, p, grid[i - 1], m));
        }
    }
}

TEST_CASE("closed form agrees with the transform route") {
    const std::vector<Exponent> ps = {Exponent::finite(1),   Exponent::finite(1.2),
                                      Exponent::finite(1.5), Exponent::finite(2),
                                      Exponent::finite(3),   Exponent::inf()};
    const std::vector<double> xs = {-1.0, 0.0, 0.5, 1.0, 2.0};

    SECTION("bundled models") {
        for (double q : {0.3, 0.5, 0.9}) {
            QGModel m = QGModel::suq2(q);
            Rng rng(51);
            for (int c = 0; c < 20; ++c) {
                const PermElement f = random_perm_element(m, 4, rng);
                const DualElement fhat = fourier_of_perm(f, m);
                for (const Exponent& p : ps)
                    for (double x : xs)
                        CHECK(rel_err(closed_form_perm_norm(f, p, x, m),
                                      twisted_norm(fhat, p, x, m)) < tol::rel_oracle);
            }
        }
    }

    SECTION("random generic models") {
        Rng rng(52);
        for (int t = 0; t < 6; ++t) {
            QGModel m = random_generic_model(rng);
            for (int c = 0; c < 10; ++c) {
                const PermElement f = random_perm_element(m, 10, rng);
                const DualElement fhat = fourier_of_perm(f, m);
                for (const Exponent& p : ps)
                    for (double x : xs)
                        CHECK(rel_err(closed_form_perm_norm(f, p, x, m),
                                      twisted_norm(fhat, p, x, m)) < tol::rel_oracle);
            }
        }
    }
}

TEST_CASE("pairing identity") {
    const std::vector<Exponent> ps = {Exponent::finite(1), Exponent::finite(1.5),
                                      Exponent::finite(2), Exponent::finite(3),
                                      Exponent::inf()};
    const std::vector<double> xs = {-1.0, 0.0, 0.5, 1.0, 2.0};

    SECTION("hand case: identical matrix elements") {
        QGModel m = QGModel::suq2(0.5);
        const DualElement a = fourier_of_perm(matrix_element(m, 1, 0, 1), m);
        for (const Exponent& p : ps)
            for (double x : xs) {
                const CheckReport rep = pairing_check(a, a, p, x, m);
                CHECK(rep.passed());
                CHECK(rep.lhs == Catch::Approx(0.2).epsilon(1e-12));
                CHECK(rep.rhs == Catch::Approx(0.2).epsilon(1e-12));
            }
    }

    SECTION("random elements, bundled and generic") {
        QGModel ms = QGModel::suq2(0.4);
        Rng rng(61);
        for (int c = 0; c < 30; ++c) {
            const DualElement f = random_dual_element(ms, 4, rng);
            const DualElement g = random_dual_element(ms, 4, rng);
            const Exponent p = ps[c % ps.size()];
            const double x = xs[c % xs.size()];
            CHECK(pairing_check(f, g, p, x, ms).passed());
        }
        for (int t = 0; t < 5; ++t) {
            QGModel mg = random_generic_model(rng);
            for (int c = 0; c < 10; ++c) {
                const DualElement f = random_dual_element(mg, 10, rng);
                const DualElement g = random_dual_element(mg, 10, rng);
                CHECK(pairing_check(f, g, ps[c % ps.size()], xs[c % xs.size()], mg)
                          .passed());
            }
        }
    }

    SECTION("disjoint supports pair to zero") {
        QGModel m = QGModel::suq2(0.5);
        DualElement f, g;
        f.blocks[1] = Matrix::Identity(2, 2);
        g.blocks[2] = Matrix::Identity(3, 3);
        const CheckReport rep = pairing_check(f, g, Exponent::finite(1.5), 0.7, m);
        CHECK(rep.passed());
        CHECK(rep.lhs == 0.0);
        CHECK(rep.rhs == 0.0);
    }
}

TEST_CASE("grid utilities") {
    const auto g = uniform_grid(0.0, 1.0, 4);
    REQUIRE(g.size() == 5);
    CHECK(g[1] == Catch::Approx(0.25));
    CHECK(g.back() == 1.0);
    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0), std::invalid_argument);
    CHECK(default_xgrid().size() == 33);

    SECTION("sup picks the first maximizer on ties") {
        // Kac data makes the twisted norm x-independent
        QGModel mk = QGModel::generic({make_irrep(0, RVector::Ones(1)),
                                       make_irrep(1, RVector::Ones(2))});
        DualElement f;
        f.blocks[1] = Matrix::Identity(2, 2);
        const SupResult s =
            inequality_lhs_sup(f, Exponent::finite(1), uniform_grid(0.25, 1.0, 3), mk);
        CHECK(s.argmax_x == 0.25);
    }
}
