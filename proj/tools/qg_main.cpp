// Command-line front end: model I/O, check suites, interval analysis, and
// parameter sweeps with CSV output.
//
// Exit codes: 0 all checks pass, 1 check failures, 2 input error.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qg/qg.hpp"

namespace {

using namespace qg;

// ---- shared plumbing ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad number \"" + s + "\"");
    }
}

int parse_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad integer \"" + s + "\"");
    }
}

struct ModelOpts {
    std::optional<double> suq2;
    std::string ofplus;
    int sign = 0;
    bool synthetic = false;
    std::string path;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--suq2", suq2, "bundled model, deformation parameter in (0,1)");
        cmd->add_option("--ofplus", ofplus, "bundled free orthogonal model, comma-separated lambdas");
        cmd->add_option("--sign", sign, "free orthogonal sign (+1/-1; inferred when omitted)");
        cmd->add_option("--model", path, "model file");
        cmd->add_flag("--synthetic-spectra", synthetic,
                      "materialize full diagonal blocks on deep free orthogonal labels");
    }

    QGModel resolve() const {
        if (!path.empty()) return load_model(path);
        if (!ofplus.empty()) {
            std::vector<double> lambdas;
            for (const std::string& tok : split(ofplus, ','))
                lambdas.push_back(parse_double(tok, "--ofplus"));
            return QGModel::ofplus(std::move(lambdas), sign, synthetic);
        }
        if (suq2) return QGModel::suq2(*suq2);
        return QGModel::suq2(0.5);
    }
};

std::vector<Exponent> parse_p_list(const std::vector<std::string>& raw,
                                   std::vector<std::string> fallback) {
    const std::vector<std::string>& src = raw.empty() ? fallback : raw;
    std::vector<Exponent> out;
    for (const std::string& s : src) out.push_back(Exponent::parse(s));
    if (out.empty()) throw std::invalid_argument("empty p list");
    return out;
}

std::vector<double> parse_xgrid(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("--xgrid expects a:b:n");
    const double a = parse_double(parts[0], "--xgrid");
    const double b = parse_double(parts[1], "--xgrid");
    const int n = parse_int(parts[2], "--xgrid");
    return uniform_grid(a, b, n);
}

// u:<k>:<i>:<j> names a single matrix element.
PermElement parse_element(const QGModel& m, const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 4 || parts[0] != "u")
        throw std::invalid_argument("--element expects u:<k>:<i>:<j>");
    return matrix_element(m, parse_int(parts[1], "--element"),
                          parse_int(parts[2], "--element"),
                          parse_int(parts[3], "--element"));
}

int thread_budget(int njobs) {
    int n = int(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("QG_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(1, std::min(n, njobs));
}

// Fan out f(0..n-1) to a pool; results are slotted by index, so output order
// never depends on scheduling.
template <typename F>
void parallel_for(int n, F&& f) {
    const int nt = thread_budget(n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw io_error("cannot write " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

// ---- verify suites ----

struct SuiteStats {
    int pass = 0, fail = 0, na = 0;

    void absorb(const CheckReport& r) {
        switch (r.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::NotApplicable: ++na; break;
        }
    }
};

struct VerifyOpts {
    ModelOpts model;
    std::uint64_t seed = 7;
    int cases = 100;
    int kmax = 5;
    std::vector<std::string> p_raw;
    std::vector<double> x_list;
    std::string xgrid = "0:1:32";
    std::string out;
};

void add_verify_flags(CLI::App* cmd, VerifyOpts& vo) {
    vo.model.add_to(cmd);
    cmd->add_option("--seed", vo.seed, "base RNG seed, recorded in every record");
    cmd->add_option("--cases", vo.cases, "random cases per suite");
    cmd->add_option("--kmax", vo.kmax, "support cap for random elements");
    cmd->add_option("--p", vo.p_raw, "exponent list (numbers or inf)");
    cmd->add_option("--x", vo.x_list, "twist parameter list");
    cmd->add_option("--xgrid", vo.xgrid, "a:b:n grid for sup/min over x");
    cmd->add_option("--out", vo.out, "write records to this file instead of stdout");
}

Rng suite_rng(std::uint64_t seed, std::uint64_t suite_index) {
    return Rng(seed * 0x9E3779B97F4A7C15ULL + suite_index);
}

void emit(std::ostream& os, const CheckReport& r, SuiteStats& st) {
    os << report_to_json_line(r) << "\n";
    st.absorb(r);
}

// Each case draws one element; the (p, x) cell advances cyclically with the
// case index, so a run covers the whole grid with any case count.
void run_oracle(const QGModel& m, const VerifyOpts& vo,
                const std::vector<Exponent>& ps, const std::vector<double>& xs,
                std::ostream& os, SuiteStats& st) {
    Rng rng = suite_rng(vo.seed, 1);
    for (int c = 0; c < vo.cases; ++c) {
        const Exponent p = ps[c % ps.size()];
        const double x = xs[(c / ps.size()) % xs.size()];
        const PermElement f = random_perm_element(m, vo.kmax, rng);
        const double lhs = closed_form_perm_norm(f, p, x, m);
        const double rhs = twisted_norm(fourier_of_perm(f, m), p, x, m);
        CheckReport rep;
        rep.name = "oracle_perm_norm";
        rep.with("model", m.describe()).with("p", p.str())
           .with("x", detail::fmt_num(x)).with("case", std::to_string(c));
        rep.lhs = lhs;
        rep.rhs = rhs;
        rep.slack = tol::rel_oracle;
        rep.verdict = rel_err(lhs, rhs) <= tol::rel_oracle ? Verdict::Pass : Verdict::Fail;
        rep.with_seed(vo.seed);
        emit(os, rep, st);
    }
}

void run_pairing(const QGModel& m, const VerifyOpts& vo,
                 const std::vector<Exponent>& ps, const std::vector<double>& xs,
                 std::ostream& os, SuiteStats& st) {
    Rng rng = suite_rng(vo.seed, 2);
    for (int c = 0; c < vo.cases; ++c) {
        const Exponent p = ps[c % ps.size()];
        const double x = xs[(c / ps.size()) % xs.size()];
        const DualElement f = random_dual_element(m, vo.kmax, rng);
        const DualElement g = random_dual_element(m, vo.kmax, rng);
        CheckReport rep = pairing_check(f, g, p, x, m);
        rep.with("case", std::to_string(c)).with_seed(vo.seed);
        emit(os, rep, st);
    }
}

void run_hy(const QGModel& m, const VerifyOpts& vo, const std::vector<Exponent>& ps,
            const std::vector<double>& xgrid, bool dual, std::ostream& os,
            SuiteStats& st) {
    for (Exponent p : ps)
        if (p.is_inf() || p.value() > 2.0)
            throw std::invalid_argument("verify hy: requires p in [1,2]");
    Rng rng = suite_rng(vo.seed, dual ? 4 : 3);
    for (int c = 0; c < vo.cases; ++c) {
        const Exponent p = ps[c % ps.size()];
        const DualElement f = random_dual_element(m, vo.kmax, rng);
        CheckReport rep = dual ? check_dual_hy_cap(f, p, xgrid, m)
                               : check_strong_hy_cap(f, p, xgrid, m);
        rep.with("case", std::to_string(c)).with_seed(vo.seed);
        emit(os, rep, st);
    }
}

void run_rd(const QGModel& m, const VerifyOpts& vo, const std::vector<Exponent>& ps,
            const std::vector<double>& xs, std::ostream& os, SuiteStats& st) {
    Rng rng = suite_rng(vo.seed, 5);
    for (int c = 0; c < vo.cases; ++c) {
        const Exponent p = ps[c % ps.size()];
        const double x = xs[(c / ps.size()) % xs.size()];
        const DualElement f = random_dual_element(m, vo.kmax, rng);
        CheckReport rep = check_twisted_rd(f, p, x, m);
        rep.with("case", std::to_string(c)).with_seed(vo.seed);
        emit(os, rep, st);
    }
}

void run_kms(const QGModel& m, const VerifyOpts& vo, std::ostream& os, SuiteStats& st) {
    for (int lab : m.labels_up_to(std::min(vo.kmax, 3))) {
        const Irrep& r = m.irrep(lab);
        if (!r.has_blocks()) continue;
        const int n = r.block_dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CheckReport rep = kms_check(m, lab, i, j);
                rep.with_seed(vo.seed);
                emit(os, rep, st);
            }
    }
}

int cmd_verify(const std::string& suite, const VerifyOpts& vo) {
    const QGModel m = vo.model.resolve();
    OutStream out(vo.out);
    SuiteStats st;

    const std::vector<double> xs_wide =
        vo.x_list.empty() ? std::vector<double>{-1.0, 0.0, 0.5, 1.0, 2.0} : vo.x_list;
    const std::vector<double> xs_unit =
        vo.x_list.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : vo.x_list;
    const std::vector<double> xgrid = parse_xgrid(vo.xgrid);

    const auto ps_wide = parse_p_list(vo.p_raw, {"1", "1.2", "1.5", "2", "3", "inf"});
    const auto ps_cap = parse_p_list(vo.p_raw, {"1", "1.2", "1.5", "1.8", "2"});
    const auto ps_rd = parse_p_list(vo.p_raw, {"1", "1.2", "1.5", "2"});

    if (suite == "oracle" || suite == "all")
        run_oracle(m, vo, ps_wide, xs_wide, out.get(), st);
    if (suite == "pairing" || suite == "all")
        run_pairing(m, vo, ps_wide, xs_wide, out.get(), st);
    if (suite == "hy" || suite == "all")
        run_hy(m, vo, ps_cap, xgrid, false, out.get(), st);
    if (suite == "dual-hy" || suite == "all")
        run_hy(m, vo, ps_cap, xgrid, true, out.get(), st);
    if (suite == "rd" || suite == "all")
        run_rd(m, vo, ps_rd, xs_unit, out.get(), st);
    if (suite == "kms" || suite == "all")
        run_kms(m, vo, out.get(), st);

    std::cerr << "verify " << suite << ": pass=" << st.pass << " fail=" << st.fail
              << " not-applicable=" << st.na << "\n";
    return st.fail == 0 ? 0 : 1;
}

// ---- model subcommands ----

int cmd_model_validate(const std::string& path, int kmax) {
    const QGModel m = load_model(path);
    const auto violations = validate_model(m, kmax);
    for (const Violation& v : violations)
        std::cout << "violation: label=" << v.label << " " << v.what
                  << " (magnitude=" << detail::fmt_num(v.magnitude) << ")\n";
    if (violations.empty()) {
        std::cout << "ok: " << m.describe() << "\n";
        return 0;
    }
    return 1;
}

int cmd_model_show(const ModelOpts& mo, int kmax) {
    const QGModel m = mo.resolve();
    std::cout << "model: " << m.describe() << "\n";
    std::cout << "label,n,d,normQ,normQinv\n";
    for (int lab : m.labels_up_to(kmax)) {
        const Irrep& r = m.irrep(lab);
        std::cout << lab << "," << detail::fmt_num(r.dim) << "," << detail::fmt_num(r.qdim) << ","
                  << detail::fmt_num(r.norm_q) << "," << detail::fmt_num(r.norm_qinv)
                  << "\n";
    }
    return 0;
}

int cmd_model_gen(const ModelOpts& mo, const std::string& out) {
    const QGModel m = mo.resolve();
    save_model(m, out);
    std::cout << "wrote " << out << " (" << m.describe() << ")\n";
    return 0;
}

// ---- interval ----

int cmd_interval(const ModelOpts& mo, std::optional<double> d1,
                 std::optional<double> fnorm, double p_val) {
    const Exponent p = Exponent::finite(p_val);
    OfInvariants inv;
    if (d1 || fnorm) {
        if (!d1 || !fnorm)
            throw std::invalid_argument("interval: --d1 and --fnorm go together");
        inv = OfInvariants::from_values(*d1, *fnorm);
    } else if (!mo.ofplus.empty()) {
        std::vector<double> lambdas;
        for (const std::string& tok : split(mo.ofplus, ','))
            lambdas.push_back(parse_double(tok, "--ofplus"));
        inv = OfInvariants::from_lambdas(lambdas);
    } else if (mo.suq2) {
        inv = OfInvariants::from_suq2(*mo.suq2);
    } else {
        throw std::invalid_argument("interval: give --ofplus, --suq2, or --d1/--fnorm");
    }

    const IntervalBounds b = of_interval_bounds(inv, p);
    const StrictInclusion s = cor_strict_inclusion(inv, p);

    json j;
    auto set_of = [](const IntervalSet& is) {
        json arr = json::array();
        for (const Interval& i : is.intervals()) arr.push_back({i.lo, i.hi});
        return arr;
    };
    j["inner"] = set_of(b.inner);
    j["outer"] = set_of(b.outer);
    j["r"] = b.r;
    j["predicate_cor"] = s.predicate;
    if (s.witness)
        j["witness"] = *s.witness;
    else
        j["witness"] = nullptr;
    std::cout << j.dump() << "\n";
    return 0;
}

// ---- sweeps ----

struct SweepOpts {
    ModelOpts model;
    std::string out;
    int kmax = 20;
    std::string p_raw = "2";
    double x = 0.0;
    std::string xgrid = "0:1:32";
    std::string element;
    std::string element_file;
    double threshold = 1e6;
};

int cmd_sweep_twisted_norm(const SweepOpts& so) {
    const QGModel m = so.model.resolve();
    const Exponent p = Exponent::parse(so.p_raw);
    const std::vector<double> grid = parse_xgrid(so.xgrid);
    PermElement el;
    if (!so.element_file.empty())
        el = load_perm_element(so.element_file);
    else if (!so.element.empty())
        el = parse_element(m, so.element);
    else
        throw std::invalid_argument("sweep twisted-norm: give --element or --element-file");
    el.validate(m);
    const DualElement fhat = fourier_of_perm(el, m);

    SweepTable t;
    t.meta = {"quantity=twisted-norm", "model=" + m.describe(), "p=" + p.str(),
              "element=" + (so.element.empty() ? so.element_file : so.element)};
    t.columns = {"x", "value"};
    t.rows.resize(grid.size());
    parallel_for(int(grid.size()), [&](int i) {
        const double v = twisted_norm(fhat, p, grid[i], m);
        t.rows[i] = {detail::fmt_num(grid[i]), detail::fmt_num(v)};
    });
    OutStream out(so.out);
    t.write(out.get());
    return 0;
}

int cmd_sweep_cb(const SweepOpts& so) {
    const QGModel m = so.model.resolve();
    if (so.kmax < 0) throw std::invalid_argument("sweep cb-obstruction: kmax must be >= 0");
    const CbObstructionResult res = cb_obstruction_scan(m, so.kmax, so.threshold);
    SweepTable t;
    t.meta = {"quantity=cb-obstruction", "model=" + m.describe(),
              std::string("status=") +
                  (res.status == CbObstructionResult::Status::Diverges ? "diverges (empirical)"
                                                                       : "bounded")};
    t.columns = {"label", "n", "d", "maxq", "value"};
    for (const CbObstructionRow& r : res.rows)
        t.rows.push_back({std::to_string(r.label), detail::fmt_num(r.dim),
                          detail::fmt_num(r.qdim), detail::fmt_num(r.maxq),
                          detail::fmt_num(r.value)});
    OutStream out(so.out);
    t.write(out.get());
    return 0;
}

int cmd_sweep_condition5(const SweepOpts& so) {
    const QGModel m = so.model.resolve();
    if (so.kmax < 0) throw std::invalid_argument("sweep condition5: kmax must be >= 0");
    const Exponent p = Exponent::parse(so.p_raw);
    const Condition5Result res = condition5_scan(m, p, so.x, so.kmax);
    SweepTable t;
    t.meta = {"quantity=condition5", "model=" + m.describe(), "p=" + p.str(),
              "x=" + detail::fmt_num(so.x),
              std::string("status=") +
                  (res.status == Condition5Result::Status::Diverges
                       ? "diverges (empirical)"
                       : "bounded, sup=" + detail::fmt_num(res.sup) + " at label " +
                             std::to_string(res.arg))};
    t.columns = {"label", "value"};
    for (const auto& [lab, v] : res.profile)
        t.rows.push_back({std::to_string(lab), detail::fmt_num(v)});
    OutStream out(so.out);
    t.write(out.get());
    return 0;
}

int cmd_sweep_growth(const SweepOpts& so) {
    const QGModel m = so.model.resolve();
    if (so.kmax < 1) throw std::invalid_argument("sweep growth-profile: kmax must be >= 1");
    const GrowthProfile prof = subexp_growth_profile(m, so.kmax);
    SweepTable t;
    t.meta = {"quantity=growth-profile", "model=" + m.describe(),
              std::string("class=") + growth_class_str(prof.cls)};
    t.columns = {"k", "value"};
    for (const auto& [k, v] : prof.values)
        t.rows.push_back({std::to_string(k), detail::fmt_num(v)});
    OutStream out(so.out);
    t.write(out.get());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computable twisted Fourier analysis on discrete quantum-group duals"};
    app.require_subcommand(1);
    int exit_code = 0;

    // model
    auto* mc = app.add_subcommand("model", "model files and invariant tables");
    mc->require_subcommand(1);

    auto* mv = mc->add_subcommand("validate", "check admissibility of a model file");
    std::string mv_path;
    int mv_kmax = 25;
    mv->add_option("path", mv_path, "model file")->required();
    mv->add_option("--kmax", mv_kmax, "scan depth for bundled models");
    mv->callback([&] { exit_code = cmd_model_validate(mv_path, mv_kmax); });

    auto* ms = mc->add_subcommand("show", "print the invariant table");
    ModelOpts ms_model;
    int ms_kmax = 10;
    ms_model.add_to(ms);
    ms->add_option("--kmax", ms_kmax, "table depth");
    ms->callback([&] { exit_code = cmd_model_show(ms_model, ms_kmax); });

    auto* mg = mc->add_subcommand("gen", "write a bundled model to a file");
    ModelOpts mg_model;
    std::string mg_out;
    mg_model.add_to(mg);
    mg->add_option("--out", mg_out, "output path")->required();
    mg->callback([&] { exit_code = cmd_model_gen(mg_model, mg_out); });

    // verify
    auto* vc = app.add_subcommand("verify", "run check suites");
    vc->require_subcommand(1);
    static const char* suites[] = {"hy", "dual-hy", "rd", "pairing", "kms", "oracle", "all"};
    std::vector<VerifyOpts> vopts(std::size(suites));
    for (size_t i = 0; i < std::size(suites); ++i) {
        auto* sc = vc->add_subcommand(suites[i], std::string("suite: ") + suites[i]);
        add_verify_flags(sc, vopts[i]);
        const std::string name = suites[i];
        VerifyOpts* vo = &vopts[i];
        sc->callback([&exit_code, name, vo] { exit_code = cmd_verify(name, *vo); });
    }

    // interval
    auto* ic = app.add_subcommand("interval", "inner/outer bounds for the twist-parameter set");
    ModelOpts ic_model;
    std::optional<double> ic_d1, ic_fnorm;
    double ic_p = 1.0;
    ic_model.add_to(ic);
    ic->add_option("--d1", ic_d1, "first quantum dimension (with --fnorm)");
    ic->add_option("--fnorm", ic_fnorm, "deformation operator norm (with --d1)");
    ic->add_option("--p", ic_p, "exponent in [1,2)");
    ic->callback([&] { exit_code = cmd_interval(ic_model, ic_d1, ic_fnorm, ic_p); });

    // sweep
    auto* sc = app.add_subcommand("sweep", "grid sweeps with CSV output");
    sc->require_subcommand(1);
    static const char* quantities[] = {"twisted-norm", "cb-obstruction", "condition5",
                                       "growth-profile"};
    std::vector<SweepOpts> sopts(std::size(quantities));
    for (size_t i = 0; i < std::size(quantities); ++i) {
        auto* qc = sc->add_subcommand(quantities[i], std::string("sweep ") + quantities[i]);
        SweepOpts* so = &sopts[i];
        so->model.add_to(qc);
        qc->add_option("--out", so->out, "CSV output path (default stdout)");
        qc->add_option("--kmax", so->kmax, "label depth");
        qc->add_option("--p", so->p_raw, "exponent (number or inf)");
        qc->add_option("--x", so->x, "twist parameter");
        qc->add_option("--xgrid", so->xgrid, "a:b:n grid over x");
        qc->add_option("--element", so->element, "matrix element u:<k>:<i>:<j>");
        qc->add_option("--element-file", so->element_file, "permutation element file");
        qc->add_option("--threshold", so->threshold, "divergence cutoff");
        const std::string name = quantities[i];
        qc->callback([&exit_code, name, so] {
            if (name == "twisted-norm") exit_code = cmd_sweep_twisted_norm(*so);
            else if (name == "cb-obstruction") exit_code = cmd_sweep_cb(*so);
            else if (name == "condition5") exit_code = cmd_sweep_condition5(*so);
            else exit_code = cmd_sweep_growth(*so);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_applicable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
