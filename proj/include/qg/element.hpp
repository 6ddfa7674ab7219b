#pragma once

// Finitely supported elements over the dual.
//
// DualElement doubles as a Fourier coefficient table and as a coefficient
// table over matrix elements: blocks[alpha](i,j) is either f_hat(alpha)_{ij}
// or the coefficient of u^alpha_{ij}, depending on the operation.
//
// PermElement encodes f = sum_alpha sum_i y^alpha_i u^alpha_{i,tau_alpha(i)}
// with tau_alpha a permutation; this family admits closed-form twisted norms.

#include <map>
#include <vector>

#include "qg/common.hpp"
#include "qg/model.hpp"

namespace qg {

struct DualElement {
    std::map<int, Matrix> blocks;

    bool empty() const { return blocks.empty(); }

    // Shape check against a model; rejects non-square and mismatched blocks.
    void validate(const QGModel& m) const {
        for (const auto& [lab, b] : blocks) {
            if (!m.has_label(lab))
                throw std::invalid_argument("DualElement: unknown label " +
                                            std::to_string(lab));
            const Irrep& r = m.irrep(lab);
            if (double(b.rows()) != r.dim || double(b.cols()) != r.dim)
                throw std::invalid_argument("DualElement: block shape mismatch at label " +
                                            std::to_string(lab));
        }
    }
};

struct PermTerm {
    std::vector<int> perm;  // bijection on 0..n-1
    Vector y;               // coefficients, one per index
};

struct PermElement {
    std::map<int, PermTerm> terms;

    // Model-free structural check: perm a bijection, y matched in length.
    void validate_structure() const {
        for (const auto& [lab, t] : terms) {
            const int n = static_cast<int>(t.perm.size());
            if (t.y.size() != n)
                throw std::invalid_argument("PermElement: size mismatch at label " +
                                            std::to_string(lab));
            std::vector<bool> seen(n, false);
            for (int v : t.perm) {
                if (v < 0 || v >= n || seen[v])
                    throw std::invalid_argument("PermElement: perm is not a bijection at label " +
                                                std::to_string(lab));
                seen[v] = true;
            }
        }
    }

    void validate(const QGModel& m) const {
        validate_structure();
        for (const auto& [lab, t] : terms) {
            if (!m.has_label(lab))
                throw std::invalid_argument("PermElement: unknown label " +
                                            std::to_string(lab));
            if (double(t.perm.size()) != m.irrep(lab).dim)
                throw std::invalid_argument("PermElement: size mismatch at label " +
                                            std::to_string(lab));
        }
    }
};

// Single matrix element u^alpha_{ij} as a PermElement: tau maps i to j and
// fixes an arbitrary completion with zero coefficients.
inline PermElement matrix_element(const QGModel& m, int label, int i, int j) {
    const int n = m.irrep(label).block_dim();
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::invalid_argument("matrix_element: index outside dimension");
    PermTerm t;
    t.perm.resize(n);
    t.y = Vector::Zero(n);
    // transposition completion keeps tau a bijection
    for (int k = 0; k < n; ++k) t.perm[k] = k;
    t.perm[i] = j;
    t.perm[j] = i;
    t.y[i] = cplx(1.0, 0.0);
    PermElement e;
    e.terms.emplace(label, std::move(t));
    return e;
}

}  // namespace qg
