#pragma once

// Symbolic handling of the exponent p in [1, oo]. p = oo is a tagged value,
// never a floating infinity, so conjugation and the coefficient 1/p stay
// exact at the endpoints.

#include <cmath>
#include <stdexcept>
#include <string>

namespace qg {

class Exponent {
public:
    static Exponent finite(double p) {
        if (!(p >= 1.0) || std::isinf(p))
            throw std::invalid_argument("Exponent: p must lie in [1, oo)");
        return Exponent(p, false);
    }
    static Exponent inf() { return Exponent(0.0, true); }

    // Accepts "inf" or a decimal literal; used by CLI and tests.
    static Exponent parse(const std::string& s) {
        if (s == "inf" || s == "Inf" || s == "INF" || s == "oo") return inf();
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("Exponent: cannot parse '" + s + "'");
        return finite(v);
    }

    bool is_inf() const { return inf_; }
    bool is_one() const { return !inf_ && p_ == 1.0; }

    double value() const {
        if (inf_) throw std::logic_error("Exponent: value() on p = oo");
        return p_;
    }

    // 1/p, with 1/oo = 0.
    double reciprocal() const { return inf_ ? 0.0 : 1.0 / p_; }

    // Hoelder conjugate: 1 <-> oo, else p/(p-1).
    Exponent conjugate() const {
        if (inf_) return finite(1.0);
        if (p_ == 1.0) return inf();
        return finite(p_ / (p_ - 1.0));
    }

    std::string str() const {
        if (inf_) return "inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", p_);
        return buf;
    }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_);
    }

private:
    Exponent(double p, bool is_infinite) : p_(p), inf_(is_infinite) {}
    double p_;
    bool inf_;
};

// (p, p', x) bundle carried through transform parameters and reports.
struct ExponentPair {
    Exponent p;
    Exponent p_conj;
    double x;

    ExponentPair(Exponent p_, double x_) : p(p_), p_conj(p_.conjugate()), x(x_) {}

    // Twist coefficient (1/p - 1/2) x.
    double coef() const { return (p.reciprocal() - 0.5) * x; }
};

}  // namespace qg
