#pragma once

// Desk-scale checks of the inequality consequences that are computable from
// spectral data alone.
//
// The strong Hausdorff-Young inequality bounds sup_{0<=x<=1} of the twisted
// norm by the L^p norm. L^p norms of general elements are not computable
// here, but the Haar state is normalized, so |f|_p <= |f|_2 for p <= 2 and
// |g|_{p'} >= |g|_2 for p' >= 2. Substituting L^2 on the appropriate side
// yields necessary consequences that every admissible model must satisfy:
//
//   strong cap   sup_x |F^{(x)}_p(f)|_{p'}  <=  |f|_2          (p <= 2)
//   dual cap     |g|_2  <=  |F^{(x)}_{p'}(g)|_p                (x in [0,1])
//   twisted RD   |f|_2  <=  (sum_supp n^2)^{1/p-1/2}
//                           |D^{ex} f_hat D^{e(1-x)}|_{ell^2}, e = 1/p-1/2
//
// For p > 2 no such bound survives; divergence_witness exhibits the scalar
// ratios [|Q||Q^{-1}|]^{(1/2-1/p) e(x)} that certify unboundedness, and
// w_lower_bound gives the growth floor for admissible weight functions.

#include <cmath>
#include <string>
#include <vector>

#include "qg/common.hpp"
#include "qg/element.hpp"
#include "qg/exponent.hpp"
#include "qg/model.hpp"
#include "qg/norms.hpp"
#include "qg/report.hpp"
#include "qg/transform.hpp"

namespace qg {

namespace detail {
inline void require_p_at_most_two(Exponent p, const char* who) {
    if (p.is_inf() || p.value() > 2.0)
        throw std::invalid_argument(std::string(who) + ": p must lie in [1,2]");
}
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
}  // namespace detail

// sup_x |F^{(x)}_p(f)|_{p'} <= |f|_2 over an x-grid in [0,1].
inline CheckReport check_strong_hy_cap(const DualElement& fhat, Exponent p,
                                       const std::vector<double>& xgrid,
                                       const QGModel& m) {
    detail::require_p_at_most_two(p, "check_strong_hy_cap");
    CheckReport rep;
    rep.name = "strong_hy_cap";
    rep.with("model", m.describe()).with("p", p.str());
    const SupResult sup = inequality_lhs_sup(fhat, p, xgrid, m);
    rep.lhs = sup.value;
    rep.rhs = l2_norm(fhat, m);
    rep.slack = tol::rel_slack * std::max(rep.lhs, rep.rhs);
    rep.verdict = rep.lhs <= rep.rhs + rep.slack ? Verdict::Pass : Verdict::Fail;
    rep.witness = "argmax x = " + detail::fmt_double(sup.argmax_x);
    return rep;
}

// |g|_2 <= |F^{(x)}_{p'}(g)|_{ell^p} for every x in the grid; the report
// keeps the minimizing grid point.
inline CheckReport check_dual_hy_cap(const DualElement& ghat, Exponent p,
                                     const std::vector<double>& xgrid,
                                     const QGModel& m) {
    detail::require_p_at_most_two(p, "check_dual_hy_cap");
    if (xgrid.empty()) throw std::invalid_argument("check_dual_hy_cap: empty grid");
    CheckReport rep;
    rep.name = "dual_hy_cap";
    rep.with("model", m.describe()).with("p", p.str());
    double min_rhs = 0.0, arg = 0.0;
    bool first = true;
    for (double x : xgrid) {
        const double v = lp_norm_dual(twist_forward(ghat, p.conjugate(), x, m), p, m);
        if (first || v < min_rhs) {
            min_rhs = v;
            arg = x;
            first = false;
        }
    }
    rep.lhs = l2_norm(ghat, m);
    rep.rhs = min_rhs;
    rep.slack = tol::rel_slack * std::max(rep.lhs, rep.rhs);
    rep.verdict = rep.lhs <= rep.rhs + rep.slack ? Verdict::Pass : Verdict::Fail;
    rep.witness = "argmin x = " + detail::fmt_double(arg);
    return rep;
}

// |f|_2 <= (sum_supp n^2)^{1/p-1/2} |D^{ex} f_hat D^{e(1-x)}|_{ell^2}.
// Support on scalar-only labels reports "not applicable".
inline CheckReport check_twisted_rd(const DualElement& fhat, Exponent p, double x,
                                    const QGModel& m) {
    detail::require_p_at_most_two(p, "check_twisted_rd");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("check_twisted_rd: x must lie in [0,1]");
    CheckReport rep;
    rep.name = "twisted_rd";
    rep.with("model", m.describe()).with("p", p.str()).with("x", detail::fmt_double(x));
    const double e = p.reciprocal() - 0.5;
    try {
        double dim_sq = 0.0;
        DualElement twisted;
        for (const auto& [lab, b] : fhat.blocks) {
            const Irrep& r = m.irrep(lab);
            const RVector& q = r.require_qdiag("check_twisted_rd");
            dim_sq += r.dim * r.dim;
            RVector dw = (r.qdim / r.dim) * q;
            twisted.blocks.emplace(lab, scale_rows(scale_cols(b, dw, e * (1.0 - x)),
                                                   dw, e * x));
        }
        rep.lhs = l2_norm(fhat, m);
        rep.rhs = std::pow(dim_sq, e) * l2_norm(twisted, m);
        rep.slack = tol::rel_slack * std::max(rep.lhs, rep.rhs);
        rep.verdict = rep.lhs <= rep.rhs + rep.slack ? Verdict::Pass : Verdict::Fail;
    } catch (const not_applicable_error& err) {
        rep.verdict = Verdict::NotApplicable;
        rep.witness = err.what();
    }
    return rep;
}

// sum of n_alpha^2 over labels of each length k = 0..kmax. Requires a
// length function.
inline std::vector<std::pair<int, double>> rd_growth_data(const QGModel& m, int kmax) {
    if (!m.has_length())
        throw not_applicable_error("rd_growth_data: model carries no length function");
    std::vector<std::pair<int, double>> rows(kmax + 1);
    for (int k = 0; k <= kmax; ++k) rows[k] = {k, 0.0};
    const auto labels = m.bounded() ? m.labels() : m.labels_up_to(kmax);
    for (int lab : labels) {
        const int len = m.length(lab);
        if (len > kmax) continue;
        const double n = m.irrep(lab).dim;
        rows[len].second += n * n;
    }
    return rows;
}

struct DivergenceWitness {
    enum class Status { Found, NotFound, Kac };
    Status status = Status::NotFound;
    int label = -1;
    double threshold = 0.0;
    std::vector<std::pair<int, double>> trail;  // (label, ratio) scanned

    std::string describe() const {
        switch (status) {
            case Status::Kac: return "no divergence (Kac)";
            case Status::NotFound: return "none up to depth";
            case Status::Found:
                return "ratio exceeds threshold at label " + std::to_string(label);
        }
        return "?";
    }
};

// Norm ratios certifying divergence for p > 2: at label alpha the twisted
// transform admits matrix elements with
//   ratio = [ |Q_alpha| |Q_alpha^{-1}| ]^{(1/2 - 1/p) e(x)},
//   e(x) = x for x > 0, 1 - x otherwise.
// Scans the label order and stops at the first ratio strictly above the
// threshold. Ratios are evaluated in log space.
inline DivergenceWitness divergence_witness(const QGModel& m, Exponent p, double x,
                                            double threshold, int depth = 200) {
    if (!p.is_inf() && p.value() <= 2.0)
        throw std::invalid_argument("divergence_witness: requires p > 2");
    DivergenceWitness w;
    w.threshold = threshold;
    if (m.is_kac()) {
        w.status = DivergenceWitness::Status::Kac;
        return w;
    }
    const double coef = (0.5 - p.reciprocal()) * (x > 0.0 ? x : 1.0 - x);
    for (int lab : m.labels_up_to(depth)) {
        const Irrep& r = m.irrep(lab);
        const double ratio = std::exp(coef * (std::log(r.norm_q) + std::log(r.norm_qinv)));
        w.trail.emplace_back(lab, ratio);
        if (ratio > threshold) {
            w.status = DivergenceWitness::Status::Found;
            w.label = lab;
            return w;
        }
    }
    w.status = DivergenceWitness::Status::NotFound;
    return w;
}

// Growth floor for admissible weight functions at p in [1,2):
//   (n |Q^{-1}| / d)^{1/p-1/2} [ |Q| |Q^{-1}| ]^{(1/p-1/2) max(-x, x-1)}.
// The bracket multiplier is 1 exactly at x in {0,1}, below 1 inside (0,1),
// above 1 outside.
inline double w_lower_bound(const QGModel& m, int label, Exponent p, double x) {
    if (p.is_inf() || p.value() >= 2.0)
        throw std::invalid_argument("w_lower_bound: requires p in [1,2)");
    const Irrep& r = m.irrep(label);
    const double e = p.reciprocal() - 0.5;
    const double xi = std::max(-x, x - 1.0);
    const double base = std::pow(r.dim * r.norm_qinv / r.qdim, e);
    // bracket multiplier drops out at x in {0,1}; elsewhere it stays in log
    // space since the bracket itself can overflow at depth
    if (xi == 0.0) return base;
    return base * std::exp(e * xi * (std::log(r.norm_q) + std::log(r.norm_qinv)));
}

}  // namespace qg
