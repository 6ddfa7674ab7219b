#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "qg/qg.hpp"

using namespace qg;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path = "qg_io_test_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("model files") {
    SECTION("each kind round-trips") {
        for (const QGModel& m : {QGModel::suq2(0.37),
                                 QGModel::ofplus({0.5, 1.0, -2.0}),
                                 QGModel::generic({make_irrep(0, RVector::Ones(1)),
                                                   make_irrep(3, RVector::Ones(2))})}) {
            const QGModel back = model_from_json(model_to_json(m));
            CHECK(back.describe() == m.describe());
        }
    }

    SECTION("save and load through a file") {
        TempFile f("");
        save_model(QGModel::suq2(0.25), f.path);
        const QGModel back = load_model(f.path);
        CHECK(back.kind() == ModelKind::Suq2);
        CHECK(back.q() == 0.25);
    }

    SECTION("unknown fields are rejected") {
        CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"suq2","q":0.5,"extra":1})")),
                        io_error);
        CHECK_THROWS_MATCHES(
            model_from_json(json::parse(R"({"kind":"suq2","q":0.5,"extra":1})")), io_error,
            Catch::Matchers::MessageMatches(
                Catch::Matchers::ContainsSubstring("unknown field \"extra\"")));
    }

    SECTION("fields cannot cross kinds") {
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"kind":"suq2","q":0.5,"lambdas":[1]})")),
            io_error);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"kind":"ofplus","lambdas":[1,1],"q":0.5})")),
            io_error);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"kind":"generic","irreps":[],"sign":1})")),
            io_error);
    }

    SECTION("missing fields are named in the error") {
        CHECK_THROWS_MATCHES(model_from_json(json::parse(R"({"kind":"suq2"})")), io_error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("missing field \"q\"")));
        CHECK_THROWS_AS(model_from_json(json::parse(R"({"q":0.5})")), io_error);
        CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"nope"})")), io_error);
        CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind":"generic","irreps":[]})")),
                        io_error);
    }

    SECTION("unreadable or malformed files") {
        CHECK_THROWS_AS(load_model("does_not_exist.json"), io_error);
        TempFile bad("{ not json");
        CHECK_THROWS_AS(load_model(bad.path), io_error);
    }
}

TEST_CASE("coefficient array files") {
    SECTION("round-trip preserves blocks") {
        DualElement a;
        Matrix b(2, 2);
        b << cplx(1.0, -2.0), cplx(0.0, 0.5), cplx(3.0, 0.0), cplx(-1.25, 1.0);
        a.blocks[1] = b;
        a.blocks[4] = Matrix::Identity(3, 3);
        const DualElement back = dual_element_from_json(dual_element_to_json(a));
        REQUIRE(back.blocks.size() == 2);
        CHECK((back.blocks.at(1) - a.blocks.at(1)).norm() == 0.0);
        CHECK((back.blocks.at(4) - a.blocks.at(4)).norm() == 0.0);
    }

    SECTION("shape errors") {
        CHECK_THROWS_AS(dual_element_from_json(json::parse(
                            R"({"blocks":[{"label":0,"re":[[1,2]],"im":[[0,0]]}]})")),
                        io_error);
        CHECK_THROWS_AS(dual_element_from_json(json::parse(
                            R"({"blocks":[{"label":0,"re":[[1]],"im":[[0,0]]}]})")),
                        io_error);
        CHECK_THROWS_AS(dual_element_from_json(json::parse(
                            R"({"blocks":[{"label":0,"re":[[1]],"im":[[0]]},
                                          {"label":0,"re":[[2]],"im":[[0]]}]})")),
                        io_error);
        CHECK_THROWS_AS(dual_element_from_json(json::parse(R"({"wrong":[]})")), io_error);
    }
}

TEST_CASE("permutation element files") {
    SECTION("round-trip") {
        PermElement e = matrix_element(QGModel::suq2(0.5), 2, 0, 2);
        e.terms[2].y[1] = cplx(0.0, -3.5);
        const PermElement back = perm_element_from_json(perm_element_to_json(e));
        REQUIRE(back.terms.count(2) == 1);
        CHECK(back.terms.at(2).perm == e.terms.at(2).perm);
        CHECK((back.terms.at(2).y - e.terms.at(2).y).norm() == 0.0);
    }

    SECTION("non-bijections are rejected at parse time") {
        CHECK_THROWS_AS(perm_element_from_json(json::parse(
                            R"({"terms":[{"label":1,"perm":[0,0],"y_re":[1,0],"y_im":[0,0]}]})")),
                        io_error);
        CHECK_THROWS_AS(perm_element_from_json(json::parse(
                            R"({"terms":[{"label":1,"perm":[0,2],"y_re":[1,0],"y_im":[0,0]}]})")),
                        io_error);
    }

    SECTION("length mismatches are rejected") {
        CHECK_THROWS_AS(perm_element_from_json(json::parse(
                            R"({"terms":[{"label":1,"perm":[0,1],"y_re":[1],"y_im":[0]}]})")),
                        io_error);
    }
}

TEST_CASE("functional table files") {
    SECTION("round-trip") {
        QGModel m = QGModel::suq2(0.5);
        Rng rng(733);
        const FunctionalRep f = functional_from_element(m, random_dual_element(m, 2, rng));
        const FunctionalRep back = functional_from_json(functional_to_json(f));
        REQUIRE(back.P.size() == f.P.size());
        for (const auto& [lab, P] : f.P)
            CHECK((back.P.at(lab) - P).norm() == 0.0);
        for (const auto& [lab, M] : f.M)
            CHECK((back.M.at(lab) - M).norm() == 0.0);
    }

    SECTION("both tables are required") {
        CHECK_THROWS_AS(functional_from_json(json::parse(R"({"P":[]})")), io_error);
    }
}

TEST_CASE("report records") {
    CheckReport r;
    r.name = "pairing";
    r.with("model", "suq2(0.5)").with("p", "2");
    r.lhs = 1.0;
    r.rhs = 1.0 + 1e-15;
    r.slack = 1e-12;
    r.verdict = Verdict::Pass;

    SECTION("line records carry a fixed key set") {
        const json j = json::parse(report_to_json_line(r));
        CHECK(j.at("name") == "pairing");
        CHECK(j.at("params").at("model") == "suq2(0.5)");
        CHECK(j.at("verdict") == "pass");
        CHECK(j.contains("lhs"));
        CHECK(j.contains("rhs"));
        CHECK(j.contains("slack"));
        CHECK_FALSE(j.contains("witness"));
        CHECK_FALSE(j.contains("seed"));
    }

    SECTION("witness and seed appear only when set") {
        r.witness = "label 3";
        r.with_seed(7);
        const json j = json::parse(report_to_json_line(r));
        CHECK(j.at("witness") == "label 3");
        CHECK(j.at("seed") == 7);
    }

    SECTION("records are line-delimited") {
        CHECK(report_to_json_line(r).find('\n') == std::string::npos);
    }

    SECTION("csv header is versioned") {
        const std::string h = report_csv_header();
        CHECK(h.rfind("# qg-report-csv v1\n", 0) == 0);
        CHECK(h.find("name,params,lhs,rhs,slack,verdict,witness,seed") != std::string::npos);
        const std::string row = report_to_csv_row(r);
        CHECK(row.rfind("pairing,\"model=suq2(0.5);p=2\",1,", 0) == 0);
    }
}

TEST_CASE("sweep tables") {
    SweepTable t;
    t.meta = {"quantity=demo", "model=suq2(0.5)"};
    t.columns = {"x", "value"};
    t.rows = {{"0", "1"}, {"0.5", "0.25"}};
    const std::string s = t.str();
    CHECK(s ==
          "# qg-sweep-csv v1\n"
          "# quantity=demo\n"
          "# model=suq2(0.5)\n"
          "x,value\n"
          "0,1\n"
          "0.5,0.25\n");
}

TEST_CASE("number formatting is shortest round-trip") {
    CHECK(detail::fmt_num(1.0) == "1");
    CHECK(detail::fmt_num(0.5) == "0.5");
    CHECK(detail::fmt_num(1.1361159666408185) == "1.1361159666408185");
    const double v = 16.0 / 7.0;
    double back = 0.0;
    const std::string s = detail::fmt_num(v);
    CHECK(std::stod(s) == v);
    (void)back;
}
