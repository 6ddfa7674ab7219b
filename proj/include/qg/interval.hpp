#pragma once

// Interval analysis for the set I of twist parameters x at which the
// twisted Hausdorff-Young inequality can hold with some constant on a free
// orthogonal model with d_1 > 2 and |F| > 1. With
//
//   phi_d = (d_1 + sqrt(d_1^2 - 4)) / 2,   L = ln phi_d,
//   r = L / (2 ln |F|),
//
// the computable bounds are
//
//   inner = [0,1] union { x : |2x-1| <= r - 2 }   (subset of I)
//   outer = { x : |2x-1| <= r }                   (superset of I).
//
// Strict inclusion [0,1] in the interior of I is equivalent to |F|^6 < phi_d,
// i.e. r > 3; any x with 1 < |2x-1| < r - 2 witnesses it.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qg/common.hpp"
#include "qg/element.hpp"
#include "qg/exponent.hpp"
#include "qg/model.hpp"
#include "qg/norms.hpp"
#include "qg/report.hpp"

namespace qg {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Disjoint closed intervals, sorted; overlapping or touching inputs merge.
class IntervalSet {
public:
    IntervalSet() = default;

    explicit IntervalSet(std::vector<Interval> iv) {
        for (const Interval& i : iv)
            if (i.lo <= i.hi) iv_.push_back(i);
        std::sort(iv_.begin(), iv_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Interval> merged;
        for (const Interval& i : iv_) {
            if (!merged.empty() && i.lo <= merged.back().hi) {
                merged.back().hi = std::max(merged.back().hi, i.hi);
            } else {
                merged.push_back(i);
            }
        }
        iv_ = std::move(merged);
    }

    // { x : |2x - 1| <= s }; empty for s < 0.
    static IntervalSet band(double s) {
        if (s < 0.0) return IntervalSet();
        return IntervalSet({Interval{(1.0 - s) / 2.0, (1.0 + s) / 2.0}});
    }

    static IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
        std::vector<Interval> all = a.iv_;
        all.insert(all.end(), b.iv_.begin(), b.iv_.end());
        return IntervalSet(std::move(all));
    }

    const std::vector<Interval>& intervals() const { return iv_; }
    bool empty() const { return iv_.empty(); }

    bool contains(double x) const {
        for (const Interval& i : iv_)
            if (i.lo <= x && x <= i.hi) return true;
        return false;
    }

    // [a,b] inside the open interior of a single member.
    bool strictly_contains(const Interval& t) const {
        for (const Interval& i : iv_)
            if (i.lo < t.lo && t.hi < i.hi) return true;
        return false;
    }

    bool contains_set(const IntervalSet& other) const {
        for (const Interval& t : other.iv_) {
            bool ok = false;
            for (const Interval& i : iv_)
                if (i.lo <= t.lo && t.hi <= i.hi) { ok = true; break; }
            if (!ok) return false;
        }
        return true;
    }

private:
    std::vector<Interval> iv_;
};

// Scalar invariants of a free orthogonal model with d1 > 2, |F| > 1.
// Consistency demands |F|^2 <= phi_d (equivalently r >= 1), which holds for
// any genuine spectral data; inconsistent pairs are rejected.
struct OfInvariants {
    double d1 = 0.0;
    double fnorm = 0.0;
    double phi_d = 0.0;
    double L = 0.0;
    double r = 0.0;

    static OfInvariants from_values(double d1, double fnorm) {
        if (!(d1 > 2.0))
            throw std::invalid_argument("OfInvariants: d1 <= 2 is degenerate");
        if (!(fnorm > 1.0))
            throw std::invalid_argument("OfInvariants: |F| <= 1 is degenerate (Kac)");
        OfInvariants v;
        v.d1 = d1;
        v.fnorm = fnorm;
        v.phi_d = (d1 + std::sqrt(d1 * d1 - 4.0)) / 2.0;
        v.L = std::log(v.phi_d);
        v.r = v.L / (2.0 * std::log(fnorm));
        if (v.r < 1.0 - 1e-12)
            throw std::invalid_argument(
                "OfInvariants: |F|^2 > phi_d is inconsistent with spectral data");
        return v;
    }

    static OfInvariants from_lambdas(const std::vector<double>& lambdas) {
        double d1 = 0.0, fn = 0.0;
        for (double l : lambdas) {
            d1 += l * l;
            fn = std::max(fn, std::abs(l));
        }
        return from_values(d1, fn);
    }

    // SU_q(2) as a free orthogonal model: d1 = q + 1/q, |F|^2 = 1/q; here
    // phi_d = 1/q and r = 1 in closed form, which this constructor uses
    // directly so the endpoints carry no rounding noise. Agreement with the
    // generic formula is asserted to 1e-12.
    static OfInvariants from_suq2(double q) {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("OfInvariants: q must lie in (0,1)");
        OfInvariants v;
        v.d1 = q + 1.0 / q;
        v.fnorm = std::sqrt(1.0 / q);
        v.phi_d = 1.0 / q;
        v.L = std::log(v.phi_d);
        v.r = 1.0;
        const OfInvariants generic = from_values(v.d1, v.fnorm);
        if (rel_err(generic.phi_d, v.phi_d) > 1e-12 || rel_err(generic.r, v.r) > 1e-12)
            throw std::logic_error("OfInvariants: closed form drifted from generic formula");
        return v;
    }
};

struct IntervalBounds {
    IntervalSet inner;
    IntervalSet outer;
    double r = 0.0;
};

inline void require_p_in_1_2(Exponent p, const char* who) {
    if (p.is_inf() || p.value() >= 2.0 || p.value() < 1.0)
        throw std::invalid_argument(std::string(who) + ": p must lie in [1,2)");
}

inline IntervalBounds of_interval_bounds(const OfInvariants& inv, Exponent p) {
    require_p_in_1_2(p, "of_interval_bounds");
    IntervalBounds b;
    b.r = inv.r;
    b.inner = IntervalSet::unite(IntervalSet::band(1.0), IntervalSet::band(inv.r - 2.0));
    b.outer = IntervalSet::band(inv.r);
    return b;
}

struct StrictInclusion {
    bool predicate = false;       // |F|^6 < phi_d
    std::optional<double> witness;  // some x with 1 < |2x-1| < r-2
    double fnorm6 = 0.0;
    double phi_d = 0.0;
};

inline StrictInclusion cor_strict_inclusion(const OfInvariants& inv, Exponent p) {
    require_p_in_1_2(p, "cor_strict_inclusion");
    StrictInclusion s;
    s.fnorm6 = std::pow(inv.fnorm, 6.0);
    s.phi_d = inv.phi_d;
    s.predicate = s.fnorm6 < inv.phi_d;
    if (s.predicate) {
        // midpoint of (1, r-2), capped at 3; stays inside the open band
        const double mag = std::min(3.0, (1.0 + (inv.r - 2.0)) / 2.0);
        s.witness = (1.0 + mag) / 2.0;
    }
    return s;
}

// ---- theorem condition (5) scan ----

struct Condition5Result {
    enum class Status { Bounded, Diverges };
    Status status = Status::Bounded;
    double sup = 0.0;
    int arg = 0;               // argmax label, or first exceeding label
    double cutoff = 1e6;
    std::vector<std::pair<int, double>> profile;  // (label, value)
};

// value(alpha) = (n |Q^{-1}| / d) [ |Q^{-1}| |Q| ]^{max(-x, x-1)} / n^2.
// "Diverges" when a value strictly exceeds the cutoff and the tail stays
// nondecreasing through the scan horizon; otherwise reports the sup.
inline Condition5Result condition5_scan(const QGModel& m, Exponent p, double x,
                                        int kmax) {
    require_p_in_1_2(p, "condition5_scan");
    const double xi = std::max(-x, x - 1.0);
    Condition5Result res;
    for (int lab : m.labels_up_to(kmax)) {
        const Irrep& r = m.irrep(lab);
        const double n = r.dim;
        const double v = std::exp(std::log(n * r.norm_qinv / r.qdim) +
                                  xi * (std::log(r.norm_q) + std::log(r.norm_qinv)) -
                                  2.0 * std::log(n));
        res.profile.emplace_back(lab, v);
    }
    if (res.profile.empty()) return res;
    size_t best = 0;
    for (size_t i = 1; i < res.profile.size(); ++i)
        if (res.profile[i].second > res.profile[best].second) best = i;
    res.sup = res.profile[best].second;
    res.arg = res.profile[best].first;
    for (size_t i = 0; i < res.profile.size(); ++i) {
        if (res.profile[i].second <= res.cutoff) continue;
        bool rising = true;
        for (size_t j = i + 1; j < res.profile.size(); ++j)
            if (res.profile[j].second < res.profile[j - 1].second) { rising = false; break; }
        if (rising) {
            res.status = Condition5Result::Status::Diverges;
            res.arg = res.profile[i].first;
        }
        break;
    }
    return res;
}

// ---- sub-exponential growth profile ----

enum class GrowthClass { SubExponentialCandidate, ExponentialEmpirical, Inconclusive };

struct GrowthProfile {
    std::vector<std::pair<int, double>> values;  // (k, (sum_{|a|<=k} n^2)^{1/k})
    GrowthClass cls = GrowthClass::Inconclusive;
};

inline GrowthProfile subexp_growth_profile(const QGModel& m, int kmax) {
    if (kmax < 1) throw std::invalid_argument("subexp_growth_profile: kmax must be >= 1");
    if (!m.has_length())
        throw not_applicable_error("subexp_growth_profile: model carries no length function");
    GrowthProfile prof;
    const auto labels = m.bounded() ? m.labels() : m.labels_up_to(kmax);
    std::vector<double> by_len(kmax + 1, 0.0);
    for (int lab : labels) {
        const int len = m.length(lab);
        if (len <= kmax) {
            const double n = m.irrep(lab).dim;
            by_len[len] += n * n;
        }
    }
    double cum = by_len[0];
    for (int k = 1; k <= kmax; ++k) {
        cum += by_len[k];
        prof.values.emplace_back(k, std::pow(cum, 1.0 / double(k)));
    }
    const size_t nvals = prof.values.size();
    const size_t start = (3 * nvals) / 4;
    bool nonincreasing = true;
    for (size_t i = start + 1; i < nvals; ++i)
        if (prof.values[i].second > prof.values[i - 1].second + 1e-15)
            nonincreasing = false;
    const double last = prof.values.back().second;
    if (last >= 1.2)
        prof.cls = GrowthClass::ExponentialEmpirical;
    else if (nonincreasing)
        prof.cls = GrowthClass::SubExponentialCandidate;
    else
        prof.cls = GrowthClass::Inconclusive;
    return prof;
}

inline const char* growth_class_str(GrowthClass c) {
    switch (c) {
        case GrowthClass::SubExponentialCandidate: return "sub-exponential candidate";
        case GrowthClass::ExponentialEmpirical: return "exponential (empirical)";
        case GrowthClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

// ---- Haagerup-style chain bound ----

// |Q^{-x/2} f Q^{x/2}|_op <= |F|^{gamma k} |f Q^{1/2}|_op with
// gamma = max(|2x-1|, 1), for blocks with |Q| = |Q^{-1}| = |F|^{2k}.
// Blocks violating that precondition report "inadmissible block".
inline CheckReport haagerup_chain_check(const RVector& qdiag, const Matrix& fk,
                                        double x, double fnorm, int k) {
    CheckReport rep;
    rep.name = "haagerup_chain";
    rep.with("x", std::to_string(x)).with("k", std::to_string(k));
    if (qdiag.size() == 0 || fk.rows() != qdiag.size() || fk.cols() != qdiag.size())
        throw std::invalid_argument("haagerup_chain_check: shape mismatch");
    for (int i = 0; i < qdiag.size(); ++i)
        if (!(qdiag[i] > 0.0))
            throw std::invalid_argument("haagerup_chain_check: qdiag must be positive");
    const double R = std::pow(fnorm, 2.0 * double(k));
    const double nq = qdiag.maxCoeff();
    const double nqi = 1.0 / qdiag.minCoeff();
    if (rel_err(nq, R) > 1e-10 || rel_err(nqi, R) > 1e-10) {
        rep.verdict = Verdict::NotApplicable;
        rep.witness = "inadmissible block";
        return rep;
    }
    const double gamma = std::max(std::abs(2.0 * x - 1.0), 1.0);
    rep.lhs = operator_norm(scale_rows(scale_cols(fk, qdiag, 0.5 * x), qdiag, -0.5 * x));
    rep.rhs = std::pow(fnorm, gamma * double(k)) *
              operator_norm(scale_cols(fk, qdiag, 0.5));
    rep.slack = tol::rel_slack * std::max(rep.lhs, rep.rhs);
    rep.verdict = rep.lhs <= rep.rhs + rep.slack ? Verdict::Pass : Verdict::Fail;
    return rep;
}

// ---- doubling sequences ----

struct DoublingResult {
    enum class Status { Found, NotFound, Kac };
    Status status = Status::NotFound;
    std::vector<std::pair<int, double>> sequence;  // (label, |Q_label|)

    std::string describe() const {
        switch (status) {
            case Status::Kac: return "not found (Kac)";
            case Status::NotFound: return "not found";
            case Status::Found: return "found";
        }
        return "?";
    }
};

// Greedy search for labels a_1, a_2, ... with |Q_{a_1}| > 1,
// |a_{j+1}| <= 2 |a_j| and |Q_{a_{j+1}}| = |Q_{a_j}|^2 (1e-9 relative).
// Bundled models yield labels 1, 2, 4, ..., 2^{depth-1}.
inline DoublingResult doubling_sequence_search(const QGModel& m, int depth) {
    if (depth < 1) throw std::invalid_argument("doubling_sequence_search: depth >= 1");
    DoublingResult res;
    if (m.is_kac()) {
        res.status = DoublingResult::Status::Kac;
        return res;
    }
    if (!m.has_length()) {
        res.status = DoublingResult::Status::NotFound;
        return res;
    }
    const int horizon = m.bounded() ? 0 : (1 << (depth - 1));
    const auto labels = m.bounded() ? m.labels() : m.labels_up_to(horizon);

    int cur = -1;
    for (int lab : labels) {
        if (m.irrep(lab).norm_q > 1.0) { cur = lab; break; }
    }
    if (cur < 0) return res;
    res.sequence.emplace_back(cur, m.irrep(cur).norm_q);
    while (static_cast<int>(res.sequence.size()) < depth) {
        const double want = res.sequence.back().second * res.sequence.back().second;
        const int max_len = 2 * m.length(res.sequence.back().first);
        int next = -1;
        for (int lab : labels) {
            if (m.length(lab) > max_len) continue;
            if (rel_err(m.irrep(lab).norm_q, want) <= 1e-9) { next = lab; break; }
        }
        if (next < 0) return res;  // NotFound with partial sequence
        res.sequence.emplace_back(next, m.irrep(next).norm_q);
    }
    res.status = DoublingResult::Status::Found;
    return res;
}

}  // namespace qg
