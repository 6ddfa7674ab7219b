#pragma once

// Deterministic random generation for the verification suites. All draws
// go through explicit uniform-bits-to-double conversion and Box-Muller so
// a seed reproduces byte-identical reports across platforms.

#include <cstdint>
#include <random>
#include <vector>

#include "qg/common.hpp"
#include "qg/element.hpp"
#include "qg/model.hpp"

namespace qg {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with 53 bits.
    double uniform() {
        return double(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in {0, ..., n-1} by rejection; exact and deterministic.
    int uniform_int(int n) {
        if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return static_cast<int>(v % un);
    }

    // Standard normal via Box-Muller.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do { u1 = uniform(); } while (u1 == 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx cgauss() {
        const double re = gauss();
        const double im = gauss();
        return cplx(re, im);
    }

    // Fisher-Yates permutation of 0..n-1.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(p[i], p[uniform_int(i + 1)]);
        return p;
    }

    // k distinct values from 0..n-1, ascending.
    std::vector<int> sample(int n, int k) {
        std::vector<int> p = permutation(n);
        p.resize(k);
        std::sort(p.begin(), p.end());
        return p;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Labels <= kmax that carry full Q blocks.
inline std::vector<int> full_block_labels(const QGModel& m, int kmax) {
    std::vector<int> out;
    for (int lab : m.labels_up_to(kmax))
        if (m.irrep(lab).has_blocks()) out.push_back(lab);
    return out;
}

// Random Fourier data: support drawn uniformly from the full-block labels
// <= kmax, complex Gaussian entries.
inline DualElement random_dual_element(const QGModel& m, int kmax, Rng& rng) {
    const auto labels = full_block_labels(m, kmax);
    if (labels.empty())
        throw not_applicable_error("random_dual_element: no full-block labels");
    const int count = 1 + rng.uniform_int(static_cast<int>(labels.size()));
    DualElement out;
    for (int idx : rng.sample(static_cast<int>(labels.size()), count)) {
        const int lab = labels[idx];
        const int n = m.irrep(lab).block_dim();
        Matrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = rng.cgauss();
        out.blocks.emplace(lab, std::move(b));
    }
    return out;
}

// Random permutation element with Gaussian coefficients.
inline PermElement random_perm_element(const QGModel& m, int kmax, Rng& rng) {
    const auto labels = full_block_labels(m, kmax);
    if (labels.empty())
        throw not_applicable_error("random_perm_element: no full-block labels");
    const int count = 1 + rng.uniform_int(static_cast<int>(labels.size()));
    PermElement out;
    for (int idx : rng.sample(static_cast<int>(labels.size()), count)) {
        const int lab = labels[idx];
        const int n = m.irrep(lab).block_dim();
        PermTerm t;
        t.perm = rng.permutation(n);
        t.y = Vector(n);
        for (int i = 0; i < n; ++i) t.y[i] = rng.cgauss();
        out.terms.emplace(lab, std::move(t));
    }
    return out;
}

// Admissible random diagonal: reciprocal pairs exp(+-u), optional middle 1,
// shuffled; Tr Q = Tr Q^{-1} holds by construction.
inline RVector random_admissible_qdiag(int dim, Rng& rng, double spread = 1.2) {
    std::vector<double> v;
    for (int i = 0; i < dim / 2; ++i) {
        const double t = std::exp(rng.uniform(-spread, spread));
        v.push_back(t);
        v.push_back(1.0 / t);
    }
    if (dim % 2) v.push_back(1.0);
    const auto p = rng.permutation(dim);
    RVector out(dim);
    for (int i = 0; i < dim; ++i) out[i] = v[p[i]];
    return out;
}

// Small admissible generic model with labels 0..count-1 (label = length).
inline QGModel random_generic_model(Rng& rng, int count = 4, int max_dim = 5) {
    std::vector<Irrep> irreps;
    std::map<int, int> lengths;
    for (int lab = 0; lab < count; ++lab) {
        const int dim = lab == 0 ? 1 : 1 + rng.uniform_int(max_dim);
        irreps.push_back(make_irrep(lab, lab == 0 ? RVector::Ones(1)
                                                  : random_admissible_qdiag(dim, rng)));
        lengths[lab] = lab;
    }
    return QGModel::generic(std::move(irreps), lengths);
}

}  // namespace qg
