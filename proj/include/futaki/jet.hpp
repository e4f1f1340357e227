#pragma once

#include "futaki/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace futaki {

/// Name of a first-order perturbation parameter (the size of one blowup).
class EpsVar {
public:
    EpsVar() = default;
    explicit EpsVar(std::string name) : name_(std::move(name)) {}

    [[nodiscard]] const std::string& name() const { return name_; }

    friend auto operator<=>(const EpsVar&, const EpsVar&) = default;

private:
    std::string name_;
};

/// Raised when dividing by a jet whose constant term vanishes.
class SingularJet : public std::domain_error {
public:
    SingularJet() : std::domain_error("singular jet division") {}
};

/// First-order multivariate jet: value + sum_k c_k e_k, with every product of
/// two perturbation parameters dropped. Zero coefficients are never stored, so
/// structural equality is mathematical equality.
class Jet {
public:
    using Linear = std::map<EpsVar, Scalar>;

    Jet() = default;
    Jet(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Jet(Scalar v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Jet(Rat v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Jet(Scalar value, Linear linear);

    static Jet var(const EpsVar& v);
    static Jet var(const std::string& name) { return var(EpsVar(name)); }

    [[nodiscard]] const Scalar& value() const { return value_; }
    [[nodiscard]] const Linear& linear() const { return linear_; }
    [[nodiscard]] Scalar coeff(const EpsVar& v) const;
    [[nodiscard]] bool is_constant() const { return linear_.empty(); }
    [[nodiscard]] bool is_zero() const { return value_.is_zero() && linear_.empty(); }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend Jet operator-(const Jet& a);

    friend bool operator==(const Jet&, const Jet&) = default;

private:
    void add_term(const EpsVar& v, const Scalar& c);

    Scalar value_;
    Linear linear_;
};

inline Jet jet_var(const EpsVar& v) { return Jet::var(v); }

/// Coefficient of v in x (zero when absent).
inline Scalar linear_coeff(const Jet& x, const EpsVar& v) { return x.coeff(v); }

Jet pow(const Jet& x, unsigned n);

std::string to_string(const Jet& x);
std::ostream& operator<<(std::ostream& os, const Jet& x);

}  // namespace futaki
