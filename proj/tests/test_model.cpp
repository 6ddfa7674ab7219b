#include <catch2/catch_amalgamated.hpp>

#include "qg/qg.hpp"

using namespace qg;

TEST_CASE("suq2 irrep table") {
    QGModel m = QGModel::suq2(0.5);

    SECTION("dimensions and quantum dimensions") {
        CHECK(m.irrep(0).dim == 1);
        CHECK(m.irrep(1).dim == 2);
        CHECK(m.irrep(2).dim == 3);
        CHECK(m.irrep(0).qdim == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(m.irrep(1).qdim == Catch::Approx(2.5).epsilon(1e-14));
        CHECK(m.irrep(2).qdim == Catch::Approx(5.25).epsilon(1e-14));
        CHECK(m.irrep(3).qdim == Catch::Approx(10.625).epsilon(1e-14));
    }

    SECTION("qdiag is decreasing with reciprocal symmetry") {
        const RVector& q1 = m.irrep(1).qdiag;
        REQUIRE(q1.size() == 2);
        CHECK(q1[0] == Catch::Approx(2.0));
        CHECK(q1[1] == Catch::Approx(0.5));
        const RVector& q2 = m.irrep(2).qdiag;
        REQUIRE(q2.size() == 3);
        CHECK(q2[0] == Catch::Approx(4.0));
        CHECK(q2[1] == Catch::Approx(1.0));
        CHECK(q2[2] == Catch::Approx(0.25));
    }

    SECTION("admissibility: Tr Q = Tr Q^{-1} = d") {
        for (int k = 0; k <= 20; ++k) {
            const Irrep& r = m.irrep(k);
            CHECK(rel_err(r.qdiag.sum(), r.qdim) < 1e-12);
            CHECK(rel_err(r.qdiag.cwiseInverse().sum(), r.qdim) < 1e-12);
        }
    }

    SECTION("scalar invariants") {
        CHECK(m.irrep(5).norm_q == Catch::Approx(32.0));
        CHECK(m.irrep(5).norm_qinv == Catch::Approx(32.0));
    }

    SECTION("metadata") {
        CHECK_FALSE(m.is_kac());
        CHECK(m.has_length());
        CHECK(m.length(7) == 7);
        CHECK(m.describe() == "suq2(0.5)");
        CHECK_FALSE(m.bounded());
    }

    SECTION("validation is clean") {
        for (double q : {0.3, 0.5, 0.9})
            CHECK(validate_model(QGModel::suq2(q), 50).empty());
    }

    SECTION("parameter domain") {
        CHECK_THROWS_AS(QGModel::suq2(0.0), std::invalid_argument);
        CHECK_THROWS_AS(QGModel::suq2(1.0), std::invalid_argument);
        CHECK_THROWS_AS(QGModel::suq2(-0.5), std::invalid_argument);
    }
}

TEST_CASE("free orthogonal model") {
    QGModel m = QGModel::ofplus({1.0 / 1.05, 1.0, 1.05});

    SECTION("dimension recurrence, N = 3") {
        CHECK(m.irrep(0).dim == 1);
        CHECK(m.irrep(1).dim == 3);
        CHECK(m.irrep(2).dim == 8);
        CHECK(m.irrep(3).dim == 21);
        CHECK(m.irrep(4).dim == 55);
    }

    SECTION("quantum dimension recurrence") {
        const double d1 = m.irrep(1).qdim;
        CHECK(d1 == Catch::Approx(1.0 / 1.1025 + 1.0 + 1.1025).epsilon(1e-14));
        for (int k = 0; k <= 18; ++k)
            CHECK(rel_err(m.irrep(k + 2).qdim, d1 * m.irrep(k + 1).qdim - m.irrep(k).qdim) <
                  1e-12);
    }

    SECTION("first block spectrum is descending squares") {
        const RVector& q1 = m.irrep(1).qdiag;
        REQUIRE(q1.size() == 3);
        CHECK(q1[0] == Catch::Approx(1.1025));
        CHECK(q1[1] == Catch::Approx(1.0));
        CHECK(q1[2] == Catch::Approx(1.0 / 1.1025));
    }

    SECTION("deeper blocks carry scalar invariants only") {
        CHECK_FALSE(m.irrep(2).has_blocks());
        CHECK(m.irrep(2).norm_q == Catch::Approx(std::pow(1.05 * 1.05, 2)));
        CHECK(m.irrep(2).norm_qinv == Catch::Approx(std::pow(1.05 * 1.05, 2)));
        CHECK_THROWS_AS(m.irrep(2).require_qdiag("test"), not_applicable_error);
    }

    SECTION("synthetic spectra are admissible and flagged") {
        QGModel s = QGModel::ofplus({1.0 / 1.05, 1.0, 1.05}, 0, true);
        for (int k = 2; k <= 6; ++k) {
            const Irrep& r = s.irrep(k);
            REQUIRE(r.has_blocks());
            CHECK(r.synthetic);
            CHECK(rel_err(r.qdiag.sum(), r.qdim) < 1e-9);
            CHECK(rel_err(r.qdiag.cwiseInverse().sum(), r.qdim) < 1e-9);
            CHECK(r.qdiag.maxCoeff() == Catch::Approx(std::pow(1.05, 2 * k)));
        }
        CHECK(validate_model(s, 8).empty());
    }

    SECTION("sign handling") {
        CHECK(m.sign() == 1);
        QGModel neg = QGModel::ofplus({-0.5, 2.0});
        CHECK(neg.sign() == -1);
        CHECK(validate_model(neg, 10).empty());
        // odd count forces +1
        auto v = validate_model(QGModel::ofplus({-1.0, 1.0, 1.0}, -1), 5);
        CHECK_FALSE(v.empty());
    }

    SECTION("kac iff all lambdas unimodular") {
        CHECK_FALSE(m.is_kac());
        CHECK(QGModel::ofplus({1.0, 1.0, 1.0}).is_kac());
        CHECK(QGModel::ofplus({-1.0, 1.0}).is_kac());
    }

    SECTION("input contract") {
        CHECK_THROWS_AS(QGModel::ofplus({1.0}), std::invalid_argument);
        CHECK_THROWS_AS(QGModel::ofplus({0.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(QGModel::ofplus({1.0, 1.0}, 5), std::invalid_argument);
    }
}

TEST_CASE("generic models") {
    RVector q1(2);
    q1 << 2.0, 0.5;
    QGModel m = QGModel::generic({make_irrep(0, RVector::Ones(1)), make_irrep(1, q1)});

    SECTION("lookup and bounds") {
        CHECK(m.bounded());
        CHECK(m.labels() == std::vector<int>{0, 1});
        CHECK(m.has_label(1));
        CHECK_FALSE(m.has_label(2));
        CHECK(m.irrep(1).qdim == Catch::Approx(2.5));
    }

    SECTION("no length function unless provided") {
        CHECK_FALSE(m.has_length());
        CHECK_THROWS_AS(m.length(1), not_applicable_error);
        QGModel ml = QGModel::generic({make_irrep(0, RVector::Ones(1)), make_irrep(1, q1)},
                                      std::map<int, int>{{0, 0}, {1, 1}});
        CHECK(ml.has_length());
        CHECK(ml.length(1) == 1);
    }

    SECTION("validation flags inadmissible spectra") {
        RVector bad(2);
        bad << 2.0, 1.0;
        QGModel mb = QGModel::generic({make_irrep(0, bad)});
        auto v = validate_model(mb);
        REQUIRE(v.size() == 1);
        CHECK(v[0].label == 0);
    }

    SECTION("kac detection") {
        QGModel mk = QGModel::generic({make_irrep(0, RVector::Ones(1)),
                                       make_irrep(1, RVector::Ones(3))});
        CHECK(mk.is_kac());
        CHECK_FALSE(m.is_kac());
    }

    SECTION("duplicate labels rejected") {
        CHECK_THROWS_AS(QGModel::generic({make_irrep(0, RVector::Ones(1)),
                                          make_irrep(0, RVector::Ones(2))}),
                        std::invalid_argument);
    }
}

TEST_CASE("weight operator") {
    QGModel m = QGModel::suq2(0.5);
    DOperator d{m};
    const RVector w = d.diag(1);
    REQUIRE(w.size() == 2);
    CHECK(w[0] == Catch::Approx(2.5 / 2.0 * 2.0));
    CHECK(w[1] == Catch::Approx(2.5 / 2.0 * 0.5));
}

TEST_CASE("matrix element constructor") {
    QGModel m = QGModel::suq2(0.5);
    PermElement e = matrix_element(m, 1, 0, 1);
    REQUIRE(e.terms.count(1) == 1);
    const PermTerm& t = e.terms.at(1);
    CHECK(t.perm == std::vector<int>{1, 0});
    CHECK(t.y[0] == cplx(1.0, 0.0));
    CHECK(t.y[1] == cplx(0.0, 0.0));
    CHECK_NOTHROW(e.validate(m));
    CHECK_THROWS_AS(matrix_element(m, 1, 0, 2), std::invalid_argument);
}
