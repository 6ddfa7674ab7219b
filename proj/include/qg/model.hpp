#pragma once

// Spectral data models for duals of compact quantum groups.
//
// An irrep carries its dimension n, the diagonal of the positive modular
// matrix Q (when available), the quantum dimension d = Tr Q, and the
// operator norms of Q and Q^{-1}. Admissibility means Tr Q = Tr Q^{-1}.
//
// Three model kinds:
//   generic - finite explicit list of irreps, optional length function;
//   suq2(q) - irrep k has dim k+1 and qdiag[i] = q^{2i-k}, 0 < q < 1;
//   ofplus  - free orthogonal data F = sum_i lambda_i e_{i,N+1-i} with
//             F^2 = sign * Id; dims and quantum dims follow the
//             second-order recurrences n_{k+2} = n_1 n_{k+1} - n_k and
//             d_{k+2} = d_1 d_{k+1} - d_k, and |Q_k| = |Q_k^{-1}| = |F|^{2k}.
//             Full Q spectra exist for k in {0,1}; for k >= 2 they are
//             either absent (scalar invariants only) or synthesized on
//             request as flagged reciprocal-symmetric ladders.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include "qg/common.hpp"

namespace qg {

struct Irrep {
    int label = 0;
    // Dimension n. A double because recurrence-defined families outgrow any
    // integer type long before the scan horizons used here; exact while the
    // value stays within the 2^53 integer range.
    double dim = 0.0;
    // Diagonal of Q in a fixed basis order; empty when the model carries
    // only scalar invariants for this label.
    RVector qdiag;
    double qdim = 0.0;      // Tr Q (= Tr Q^{-1} for admissible blocks)
    double norm_q = 1.0;    // |Q|
    double norm_qinv = 1.0; // |Q^{-1}|
    bool synthetic = false; // qdiag synthesized from scalar invariants

    bool has_blocks() const { return qdiag.size() > 0; }

    // Shape of an explicit matrix block for this label. Only meaningful at
    // desk scale; anything larger can never be materialized.
    int block_dim() const {
        if (!(dim >= 1.0) || dim > 1e8 || dim != std::floor(dim))
            throw not_applicable_error("block_dim: label " + std::to_string(label) +
                                       " has no materializable block shape");
        return static_cast<int>(dim);
    }

    const RVector& require_qdiag(const char* who) const {
        if (!has_blocks())
            throw not_applicable_error(std::string(who) +
                                       ": label " + std::to_string(label) +
                                       " carries scalar invariants only");
        return qdiag;
    }
};

// Builds a full irrep from an explicit diagonal; qdim and the norms derive
// from the entries as computed.
inline Irrep make_irrep(int label, RVector qdiag) {
    if (qdiag.size() == 0)
        throw std::invalid_argument("make_irrep: empty qdiag");
    for (int i = 0; i < qdiag.size(); ++i)
        if (!(qdiag[i] > 0.0))
            throw std::invalid_argument("make_irrep: qdiag entries must be positive");
    Irrep r;
    r.label = label;
    r.dim = static_cast<double>(qdiag.size());
    r.qdiag = std::move(qdiag);
    r.qdim = r.qdiag.sum();
    r.norm_q = r.qdiag.maxCoeff();
    r.norm_qinv = 1.0 / r.qdiag.minCoeff();
    return r;
}

enum class ModelKind { Generic, Suq2, OfPlus };

namespace detail {

// Reciprocal-symmetric ladder with extremes R^{+-1}, n entries, and
// Tr Q = Tr Q^{-1} = target. The interior pair values follow a geometric
// interpolation whose slope is bisected until the trace matches.
inline RVector synthetic_qdiag(int n, double target, double R) {
    if (R < 1.0)
        throw std::invalid_argument("synthetic_qdiag: R must be >= 1");
    auto g = [](double t) { return t + 1.0 / t; };
    if (n == 1) {
        if (rel_err(target, 1.0) > 1e-9 || rel_err(R, 1.0) > 1e-9)
            throw std::invalid_argument("synthetic_qdiag: dim 1 forces trivial data");
        RVector v(1);
        v[0] = 1.0;
        return v;
    }
    const int m = n / 2;
    const bool odd = (n % 2) != 0;
    double rest = target - g(R) - (odd ? 1.0 : 0.0);
    const double lo = 2.0 * (m - 1), hi = (m - 1) * g(R);
    if (rest < lo - 1e-9 * target || rest > hi + 1e-9 * target)
        throw std::invalid_argument("synthetic_qdiag: invariants infeasible");
    rest = std::clamp(rest, lo, hi);

    std::vector<double> t(m - 1, 1.0);
    if (m > 1 && R > 1.0) {
        const double lnR = std::log(R);
        auto fill = [&](double s) {
            double sum = 0.0;
            for (int j = 1; j <= m - 1; ++j) {
                double e = std::min(1.0, s * j / (m - 1));
                t[j - 1] = std::exp(e * lnR);
                sum += g(t[j - 1]);
            }
            return sum;
        };
        double shi = 1.0;
        for (int it = 0; it < 200 && fill(shi) < rest; ++it) shi *= 2.0;
        double slo = 0.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (slo + shi);
            if (fill(mid) < rest) slo = mid; else shi = mid;
        }
        fill(shi);
    }

    std::vector<double> entries;
    entries.reserve(n);
    entries.push_back(R);
    for (double v : t) entries.push_back(v);
    if (odd) entries.push_back(1.0);
    for (double v : t) entries.push_back(1.0 / v);
    entries.push_back(1.0 / R);
    std::sort(entries.begin(), entries.end(), std::greater<double>());
    RVector out(n);
    for (int i = 0; i < n; ++i) out[i] = entries[i];
    return out;
}

}  // namespace detail

// Immutable after construction; irrep generation for the bundled kinds is
// lazy, memoized, and internally synchronized. Copies share the cache.
class QGModel {
public:
    static QGModel suq2(double q) {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("suq2: q must lie in (0,1)");
        QGModel m;
        m.kind_ = ModelKind::Suq2;
        m.q_ = q;
        return m;
    }

    static QGModel ofplus(std::vector<double> lambdas, int sign = 0,
                          bool synthetic_spectra = false) {
        if (lambdas.size() < 2)
            throw std::invalid_argument("ofplus: need at least two lambdas");
        for (double l : lambdas)
            if (l == 0.0 || !std::isfinite(l))
                throw std::invalid_argument("ofplus: lambdas must be nonzero finite");
        if (sign == 0) sign = (lambdas.front() * lambdas.back() < 0.0) ? -1 : 1;
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("ofplus: sign must be +1 or -1");
        QGModel m;
        m.kind_ = ModelKind::OfPlus;
        m.lambdas_ = std::move(lambdas);
        m.sign_ = sign;
        m.synthetic_ = synthetic_spectra;
        return m;
    }

    static QGModel generic(std::vector<Irrep> irreps,
                           std::optional<std::map<int, int>> lengths = std::nullopt) {
        if (irreps.empty())
            throw std::invalid_argument("generic: need at least one irrep");
        QGModel m;
        m.kind_ = ModelKind::Generic;
        for (auto& r : irreps) {
            if (m.table_.count(r.label))
                throw std::invalid_argument("generic: duplicate label " +
                                            std::to_string(r.label));
            m.table_.emplace(r.label, std::move(r));
        }
        if (lengths) {
            for (const auto& [lab, len] : *lengths)
                if (!m.table_.count(lab) || len < 0)
                    throw std::invalid_argument("generic: bad length entry");
            m.lengths_ = std::move(*lengths);
        }
        return m;
    }

    ModelKind kind() const { return kind_; }
    double q() const { return q_; }
    const std::vector<double>& lambdas() const { return lambdas_; }
    int sign() const { return sign_; }
    bool synthetic_spectra() const { return synthetic_; }

    bool bounded() const { return kind_ == ModelKind::Generic; }

    // Generic labels in sorted order.
    std::vector<int> labels() const {
        if (!bounded())
            throw std::logic_error("labels: unbounded model, use labels_up_to");
        std::vector<int> v;
        for (const auto& [lab, r] : table_) v.push_back(lab);
        return v;
    }

    // Scan order for bounded-and-unbounded alike: bundled kinds walk
    // 0..kmax, generic walks its sorted labels capped at kmax.
    std::vector<int> labels_up_to(int kmax) const {
        std::vector<int> v;
        if (bounded()) {
            for (const auto& [lab, r] : table_)
                if (lab <= kmax) v.push_back(lab);
        } else {
            for (int k = 0; k <= kmax; ++k) v.push_back(k);
        }
        return v;
    }

    bool has_label(int label) const {
        if (bounded()) return table_.count(label) != 0;
        return label >= 0;
    }

    const Irrep& irrep(int label) const {
        if (kind_ == ModelKind::Generic) {
            auto it = table_.find(label);
            if (it == table_.end())
                throw std::out_of_range("irrep: unknown label " + std::to_string(label));
            return it->second;
        }
        if (label < 0)
            throw std::out_of_range("irrep: negative label");
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->table.find(label);
        if (it == cache_->table.end())
            it = cache_->table.emplace(label, build(label)).first;
        return it->second;
    }

    bool is_kac() const {
        switch (kind_) {
            case ModelKind::Suq2:
                return false;
            case ModelKind::OfPlus:
                return std::all_of(lambdas_.begin(), lambdas_.end(),
                                   [](double l) { return std::abs(l) == 1.0; });
            case ModelKind::Generic:
                for (const auto& [lab, r] : table_) {
                    if (!r.has_blocks()) {
                        if (r.norm_q != 1.0 || r.norm_qinv != 1.0) return false;
                        continue;
                    }
                    for (int i = 0; i < r.qdiag.size(); ++i)
                        if (r.qdiag[i] != 1.0) return false;
                }
                return true;
        }
        return false;
    }

    bool has_length() const {
        return kind_ != ModelKind::Generic || !lengths_.empty();
    }

    int length(int label) const {
        if (kind_ != ModelKind::Generic) {
            if (label < 0) throw std::out_of_range("length: negative label");
            return label;
        }
        auto it = lengths_.find(label);
        if (it == lengths_.end())
            throw not_applicable_error("length: model carries no length for label " +
                                       std::to_string(label));
        return it->second;
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
            case ModelKind::Suq2:
                os << "suq2(" << fmt(q_) << ")";
                break;
            case ModelKind::OfPlus: {
                os << "ofplus(";
                for (size_t i = 0; i < lambdas_.size(); ++i)
                    os << (i ? "," : "") << fmt(lambdas_[i]);
                os << ";sign=" << (sign_ > 0 ? "+1" : "-1");
                if (synthetic_) os << ";synthetic";
                os << ")";
                break;
            }
            case ModelKind::Generic:
                os << "generic(n=" << table_.size() << ")";
                break;
        }
        return os.str();
    }

private:
    QGModel() : cache_(std::make_shared<Cache>()) {}

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    Irrep build(int k) const {
        if (kind_ == ModelKind::Suq2) {
            RVector d(k + 1);
            for (int i = 0; i <= k; ++i) d[i] = std::pow(q_, double(2 * i - k));
            return make_irrep(k, std::move(d));
        }
        // OfPlus
        if (k == 0) {
            RVector d(1);
            d[0] = 1.0;
            return make_irrep(0, std::move(d));
        }
        if (k == 1) {
            const int N = static_cast<int>(lambdas_.size());
            RVector d(N);
            for (int i = 0; i < N; ++i) {
                double l = lambdas_[N - 1 - i];
                d[i] = l * l;
            }
            return make_irrep(1, std::move(d));
        }
        const double d1 = of_d1();
        const double n1 = static_cast<double>(lambdas_.size());
        double n_prev = 1.0, n_cur = n1, d_prev = 1.0, d_cur = d1;
        for (int j = 2; j <= k; ++j) {
            double n_next = n1 * n_cur - n_prev;
            double d_next = d1 * d_cur - d_prev;
            n_prev = n_cur; n_cur = n_next;
            d_prev = d_cur; d_cur = d_next;
        }
        const double fn = of_fnorm();
        const double R = std::pow(fn * fn, double(k));
        Irrep r;
        r.label = k;
        r.dim = n_cur;
        r.qdim = d_cur;
        r.norm_q = R;
        r.norm_qinv = R;
        if (synthetic_) {
            r.qdiag = detail::synthetic_qdiag(r.block_dim(), d_cur, R);
            r.qdim = r.qdiag.sum();
            r.norm_q = r.qdiag.maxCoeff();
            r.norm_qinv = 1.0 / r.qdiag.minCoeff();
            r.synthetic = true;
        }
        return r;
    }

    double of_d1() const {
        double s = 0.0;
        for (double l : lambdas_) s += l * l;
        return s;
    }
    double of_fnorm() const {
        double m = 0.0;
        for (double l : lambdas_) m = std::max(m, std::abs(l));
        return m;
    }

    struct Cache {
        std::mutex mu;
        std::map<int, Irrep> table;
    };

    ModelKind kind_ = ModelKind::Generic;
    double q_ = 0.0;
    std::vector<double> lambdas_;
    int sign_ = 1;
    bool synthetic_ = false;
    std::map<int, Irrep> table_;
    std::map<int, int> lengths_;
    std::shared_ptr<Cache> cache_;
};

// Diagonal weights (d/n) Q per irrep; feeds the twisted rapid-decay bound.
struct DOperator {
    const QGModel* model;

    explicit DOperator(const QGModel& m) : model(&m) {}

    RVector diag(int label) const {
        const Irrep& r = model->irrep(label);
        const RVector& q = r.require_qdiag("DOperator");
        return (r.qdim / double(r.dim)) * q;
    }
};

// ---- validation ----

struct Violation {
    int label;
    std::string what;
    double magnitude;
};

// Checks per-irrep admissibility and the kind-specific structure. For the
// bundled kinds the scan covers labels 0..kmax. Violations are returned as
// data in deterministic order; nothing throws for soft breaches.
inline std::vector<Violation> validate_model(const QGModel& m, int kmax = 25) {
    std::vector<Violation> out;
    auto add = [&](int label, const std::string& what, double mag) {
        out.push_back({label, what, mag});
    };

    if (m.kind() == ModelKind::OfPlus) {
        const auto& ls = m.lambdas();
        const int N = static_cast<int>(ls.size());
        for (int i = 0; i + 1 < N; ++i)
            if (std::abs(ls[i]) > std::abs(ls[i + 1]) + 1e-15)
                add(1, "lambda moduli must be nondecreasing", std::abs(ls[i]) - std::abs(ls[i + 1]));
        for (int i = 0; i < N; ++i) {
            double p = ls[i] * ls[N - 1 - i];
            if (rel_err(p, double(m.sign())) > tol::rel_admissible)
                add(1, "lambda_i * lambda_{N+1-i} must equal sign",
                    std::abs(p - double(m.sign())));
        }
        if (N % 2 == 1 && m.sign() == -1)
            add(1, "odd N forces sign +1", 1.0);
    }

    const auto labels = m.labels_up_to(kmax);
    for (int lab : labels) {
        const Irrep& r = m.irrep(lab);
        if (!(r.dim >= 1.0)) add(lab, "dim must be positive", r.dim);
        if (r.has_blocks()) {
            if (double(r.qdiag.size()) != r.dim)
                add(lab, "qdiag size differs from dim", double(r.qdiag.size()) - r.dim);
            double tq = 0.0, tqi = 0.0;
            bool pos = true;
            for (int i = 0; i < r.qdiag.size(); ++i) {
                if (!(r.qdiag[i] > 0.0)) { pos = false; continue; }
                tq += r.qdiag[i];
                tqi += 1.0 / r.qdiag[i];
            }
            if (!pos) add(lab, "qdiag entries must be positive", 0.0);
            if (pos && rel_err(tq, tqi) > tol::rel_admissible)
                add(lab, "Tr Q must equal Tr Q^{-1}", std::abs(tq - tqi));
            if (pos && rel_err(tq, r.qdim) > tol::rel_admissible)
                add(lab, "qdim must equal Tr Q", std::abs(tq - r.qdim));
            if (pos && rel_err(r.norm_q, r.qdiag.maxCoeff()) > tol::rel_admissible)
                add(lab, "norm_q must equal max qdiag", 0.0);
            if (pos && rel_err(r.norm_qinv, 1.0 / r.qdiag.minCoeff()) > tol::rel_admissible)
                add(lab, "norm_qinv must equal 1/min qdiag", 0.0);
        }
        if (m.kind() == ModelKind::Suq2) {
            const double q = m.q();
            if (r.dim != double(lab + 1)) add(lab, "suq2 dim must be k+1", r.dim);
            double closed = (std::pow(q, -(lab + 1)) - std::pow(q, lab + 1)) /
                            (1.0 / q - q);
            if (rel_err(r.qdim, closed) > tol::rel_admissible)
                add(lab, "suq2 qdim must match the quantum integer", std::abs(r.qdim - closed));
        }
    }

    if (m.kind() == ModelKind::OfPlus) {
        double n1 = double(m.lambdas().size()), d1 = 0.0;
        for (double l : m.lambdas()) d1 += l * l;
        std::vector<double> nn(kmax + 1), dd(kmax + 1);
        for (int k = 0; k <= kmax; ++k) {
            if (k == 0) { nn[k] = 1.0; dd[k] = 1.0; }
            else if (k == 1) { nn[k] = n1; dd[k] = d1; }
            else {
                nn[k] = n1 * nn[k - 1] - nn[k - 2];
                dd[k] = d1 * dd[k - 1] - dd[k - 2];
            }
            const Irrep& r = m.irrep(k);
            if (r.dim != nn[k])
                add(k, "ofplus dim recurrence breach", r.dim - nn[k]);
            if (rel_err(r.qdim, dd[k]) > tol::rel_admissible)
                add(k, "ofplus qdim recurrence breach", std::abs(r.qdim - dd[k]));
        }
    }

    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return a.label != b.label ? a.label < b.label : a.what < b.what;
    });
    return out;
}

}  // namespace qg
