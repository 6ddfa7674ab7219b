#pragma once

// File formats and report emission.
//
// Model files are structured data:
//   { "kind": "suq2",    "q": 0.5 }
//   { "kind": "ofplus",  "lambdas": [...], "sign": 1 }          (sign optional)
//   { "kind": "generic", "irreps": [{"label": 0, "qdiag": [...]}, ...] }
// Field names are fixed; unknown fields are rejected.
//
// Coefficient arrays: { "blocks": [{"label": k, "re": [[...]], "im": [[...]]}] }.
// Permutation elements: { "terms": [{"label": k, "perm": [...], "y_re": [...],
// "y_im": [...]}] }. Functional tables mirror the block array twice, under
// "P" and "M".
//
// Check reports are emitted as line-delimited structured records; sweeps as
// CSV with a versioned header comment, '.' decimal separator, no locale
// dependence.

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qg/common.hpp"
#include "qg/element.hpp"
#include "qg/model.hpp"
#include "qg/report.hpp"
#include "qg/similarity.hpp"

namespace qg {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

namespace detail {

// Shortest round-trip decimal form, locale-independent.
inline std::string fmt_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    return j;
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                           const std::string& ctx) {
    if (!j.is_object()) throw io_error(ctx + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) { ok = true; break; }
        if (!ok) throw io_error(ctx + ": unknown field \"" + it.key() + "\"");
    }
}

inline const json& need(const json& j, const char* field, const std::string& ctx) {
    auto it = j.find(field);
    if (it == j.end()) throw io_error(ctx + ": missing field \"" + field + "\"");
    return *it;
}

inline RVector rvector_from(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw io_error(ctx + ": expected an array of numbers");
    RVector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw io_error(ctx + ": expected a number");
        v[Eigen::Index(i)] = j[i].get<double>();
    }
    return v;
}

inline Matrix matrix_from(const json& jre, const json& jim, const std::string& ctx) {
    if (!jre.is_array() || !jim.is_array() || jre.size() != jim.size())
        throw io_error(ctx + ": re/im must be arrays of equal shape");
    const size_t rows = jre.size();
    if (rows == 0) throw io_error(ctx + ": empty matrix");
    const size_t cols = jre[0].is_array() ? jre[0].size() : 0;
    Matrix b(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!jre[i].is_array() || jre[i].size() != cols || !jim[i].is_array() ||
            jim[i].size() != cols)
            throw io_error(ctx + ": ragged matrix rows");
        for (size_t k = 0; k < cols; ++k) {
            if (!jre[i][k].is_number() || !jim[i][k].is_number())
                throw io_error(ctx + ": expected a number");
            b(Eigen::Index(i), Eigen::Index(k)) =
                cplx(jre[i][k].get<double>(), jim[i][k].get<double>());
        }
    }
    return b;
}

inline void matrix_to(const Matrix& b, json& jre, json& jim) {
    jre = json::array();
    jim = json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        json re_row = json::array(), im_row = json::array();
        for (Eigen::Index k = 0; k < b.cols(); ++k) {
            re_row.push_back(b(i, k).real());
            im_row.push_back(b(i, k).imag());
        }
        jre.push_back(std::move(re_row));
        jim.push_back(std::move(im_row));
    }
}

inline std::map<int, Matrix> block_array_from(const json& arr, const std::string& ctx) {
    if (!arr.is_array()) throw io_error(ctx + ": expected an array of blocks");
    std::map<int, Matrix> out;
    for (const json& e : arr) {
        reject_unknown(e, {"label", "re", "im"}, ctx);
        const int lab = need(e, "label", ctx).get<int>();
        if (out.count(lab)) throw io_error(ctx + ": duplicate label " + std::to_string(lab));
        Matrix b = matrix_from(need(e, "re", ctx), need(e, "im", ctx), ctx);
        if (b.rows() != b.cols()) throw io_error(ctx + ": block must be square");
        out[lab] = std::move(b);
    }
    return out;
}

inline json block_array_to(const std::map<int, Matrix>& blocks) {
    json arr = json::array();
    for (const auto& [lab, b] : blocks) {
        json e;
        e["label"] = lab;
        matrix_to(b, e["re"], e["im"]);
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace detail

// ---- models ----

inline QGModel model_from_json(const json& j) {
    detail::reject_unknown(j, {"kind", "q", "lambdas", "sign", "irreps"}, "model");
    const std::string kind = detail::need(j, "kind", "model").get<std::string>();
    auto forbid = [&](const char* f) {
        if (j.contains(f))
            throw io_error("model: field \"" + std::string(f) + "\" not valid for kind " + kind);
    };
    if (kind == "suq2") {
        forbid("lambdas"); forbid("sign"); forbid("irreps");
        return QGModel::suq2(detail::need(j, "q", "model").get<double>());
    }
    if (kind == "ofplus") {
        forbid("q"); forbid("irreps");
        std::vector<double> lambdas =
            detail::need(j, "lambdas", "model").get<std::vector<double>>();
        int sign = 0;
        if (j.contains("sign")) sign = j["sign"].get<int>();
        return QGModel::ofplus(std::move(lambdas), sign);
    }
    if (kind == "generic") {
        forbid("q"); forbid("lambdas"); forbid("sign");
        const json& arr = detail::need(j, "irreps", "model");
        if (!arr.is_array() || arr.empty())
            throw io_error("model: irreps must be a nonempty array");
        std::vector<Irrep> irreps;
        for (const json& e : arr) {
            detail::reject_unknown(e, {"label", "qdiag"}, "model.irreps");
            const int lab = detail::need(e, "label", "model.irreps").get<int>();
            RVector qd = detail::rvector_from(detail::need(e, "qdiag", "model.irreps"),
                                              "model.irreps.qdiag");
            irreps.push_back(make_irrep(lab, qd));
        }
        return QGModel::generic(std::move(irreps));
    }
    throw io_error("model: unknown kind \"" + kind + "\"");
}

inline QGModel load_model(const std::string& path) {
    return model_from_json(detail::parse_file(path));
}

inline json model_to_json(const QGModel& m) {
    json j;
    switch (m.kind()) {
        case ModelKind::Suq2:
            j["kind"] = "suq2";
            j["q"] = m.q();
            break;
        case ModelKind::OfPlus:
            j["kind"] = "ofplus";
            j["lambdas"] = m.lambdas();
            j["sign"] = m.sign();
            break;
        case ModelKind::Generic: {
            j["kind"] = "generic";
            json arr = json::array();
            for (int lab : m.labels()) {
                json e;
                e["label"] = lab;
                const RVector& qd = m.irrep(lab).qdiag;
                e["qdiag"] = std::vector<double>(qd.data(), qd.data() + qd.size());
                arr.push_back(std::move(e));
            }
            j["irreps"] = std::move(arr);
            break;
        }
    }
    return j;
}

inline void save_model(const QGModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    out << model_to_json(m).dump(2) << "\n";
}

// ---- coefficient arrays and permutation elements ----

inline DualElement dual_element_from_json(const json& j) {
    detail::reject_unknown(j, {"blocks"}, "element");
    DualElement a;
    a.blocks = detail::block_array_from(detail::need(j, "blocks", "element"), "element.blocks");
    return a;
}

inline json dual_element_to_json(const DualElement& a) {
    json j;
    j["blocks"] = detail::block_array_to(a.blocks);
    return j;
}

inline DualElement load_dual_element(const std::string& path) {
    return dual_element_from_json(detail::parse_file(path));
}

inline PermElement perm_element_from_json(const json& j) {
    detail::reject_unknown(j, {"terms"}, "perm element");
    const json& arr = detail::need(j, "terms", "perm element");
    if (!arr.is_array()) throw io_error("perm element: terms must be an array");
    PermElement f;
    for (const json& e : arr) {
        detail::reject_unknown(e, {"label", "perm", "y_re", "y_im"}, "perm element");
        const int lab = detail::need(e, "label", "perm element").get<int>();
        if (f.terms.count(lab))
            throw io_error("perm element: duplicate label " + std::to_string(lab));
        PermTerm t;
        t.perm = detail::need(e, "perm", "perm element").get<std::vector<int>>();
        const RVector yre = detail::rvector_from(detail::need(e, "y_re", "perm element"),
                                                 "perm element.y_re");
        const RVector yim = detail::rvector_from(detail::need(e, "y_im", "perm element"),
                                                 "perm element.y_im");
        if (yre.size() != yim.size() || size_t(yre.size()) != t.perm.size())
            throw io_error("perm element: perm/y length mismatch");
        t.y = Vector(yre.size());
        for (Eigen::Index i = 0; i < yre.size(); ++i) t.y[i] = cplx(yre[i], yim[i]);
        f.terms[lab] = std::move(t);
    }
    try {
        f.validate_structure();
    } catch (const std::invalid_argument& e) {
        throw io_error(e.what());
    }
    return f;
}

inline json perm_element_to_json(const PermElement& f) {
    json arr = json::array();
    for (const auto& [lab, t] : f.terms) {
        json e;
        e["label"] = lab;
        e["perm"] = t.perm;
        std::vector<double> yre, yim;
        for (Eigen::Index i = 0; i < t.y.size(); ++i) {
            yre.push_back(t.y[i].real());
            yim.push_back(t.y[i].imag());
        }
        e["y_re"] = std::move(yre);
        e["y_im"] = std::move(yim);
        arr.push_back(std::move(e));
    }
    json j;
    j["terms"] = std::move(arr);
    return j;
}

inline PermElement load_perm_element(const std::string& path) {
    return perm_element_from_json(detail::parse_file(path));
}

// ---- functional tables ----

inline FunctionalRep functional_from_json(const json& j) {
    detail::reject_unknown(j, {"P", "M"}, "functional");
    FunctionalRep f;
    f.P = detail::block_array_from(detail::need(j, "P", "functional"), "functional.P");
    f.M = detail::block_array_from(detail::need(j, "M", "functional"), "functional.M");
    return f;
}

inline json functional_to_json(const FunctionalRep& f) {
    json j;
    j["P"] = detail::block_array_to(f.P);
    j["M"] = detail::block_array_to(f.M);
    return j;
}

// ---- report emission ----

// One structured record per line; object keys sorted, so byte-stable for a
// fixed build.
inline std::string report_to_json_line(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["verdict"] = verdict_str(r.verdict);
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (r.has_seed) j["seed"] = r.seed;
    return j.dump();
}

inline const char* report_csv_version() { return "# qg-report-csv v1"; }

inline std::string report_csv_header() {
    return std::string(report_csv_version()) + "\nname,params,lhs,rhs,slack,verdict,witness,seed\n";
}

inline std::string report_to_csv_row(const CheckReport& r) {
    std::ostringstream os;
    os << r.name << ",\"";
    for (size_t i = 0; i < r.params.size(); ++i)
        os << (i ? ";" : "") << r.params[i].first << "=" << r.params[i].second;
    os << "\"," << detail::fmt_num(r.lhs) << "," << detail::fmt_num(r.rhs) << ","
       << detail::fmt_num(r.slack) << "," << verdict_str(r.verdict) << ",\"" << r.witness
       << "\",";
    if (r.has_seed) os << r.seed;
    os << "\n";
    return os.str();
}

// ---- sweep CSV ----

struct SweepTable {
    std::vector<std::string> meta;                 // comment lines, sans '#'
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;    // grid order

    void write(std::ostream& os) const {
        os << "# qg-sweep-csv v1\n";
        for (const std::string& m : meta) os << "# " << m << "\n";
        for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
    }

    std::string str() const {
        std::ostringstream os;
        write(os);
        return os.str();
    }
};

}  // namespace qg
