#pragma once

// Shared aliases, tolerances, and small numeric helpers.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Thrown when an operation needs spectral data a model does not carry
// (e.g. full Q blocks on free orthogonal labels k >= 2 without synthetic
// spectra). CLI and report layers render it as "not applicable".
class not_applicable_error : public std::runtime_error {
public:
    explicit not_applicable_error(const std::string& what)
        : std::runtime_error(what) {}
};

namespace tol {
// Exact identities (orthogonality, pairing, KMS, Plancherel consistency).
inline constexpr double rel_exact = 1e-12;
// Closed form vs computational norm path.
inline constexpr double rel_oracle = 1e-10;
// Inequality checks: additive slack rel_slack * (scale of the larger side).
inline constexpr double rel_slack = 1e-10;
// Per-irrep admissibility |Tr Q - Tr Q^{-1}|.
inline constexpr double rel_admissible = 1e-12;
// Serialization round trips.
inline constexpr double rel_roundtrip = 1e-13;
// Pairing identity: relative-error denominator is floored at this fraction
// of the Cauchy-Schwarz scale so accidental cancellation of the pairing
// value does not turn a few-ulp discrepancy into a spurious failure.
inline constexpr double pairing_scale_floor = 1e-3;
}  // namespace tol

// |a - b| relative to max(|a|, |b|); 0 when both vanish.
inline double rel_err(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

inline double rel_err(cplx a, cplx b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

inline bool approx_eq(double a, double b, double rel = tol::rel_exact) {
    return rel_err(a, b) <= rel;
}

// n x n matrix unit E_{ij}.
inline Matrix matrix_unit(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("matrix_unit: index outside dimension");
    Matrix e = Matrix::Zero(n, n);
    e(i, j) = cplx(1.0, 0.0);
    return e;
}

}  // namespace qg
