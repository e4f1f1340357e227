#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace futaki {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (guaranteed by the Boost rational adaptor).
using Rat = boost::multiprecision::cpp_rational;

/// Thrown when a textual number cannot be read exactly.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses "p", "p/q" or a finite decimal such as "-0.125" into an exact Rat.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& q);

double to_double(const Rat& q);

/// Exact Gaussian rational re + i*im.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rat re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    [[nodiscard]] const Rat& re() const { return re_; }
    [[nodiscard]] const Rat& im() const { return im_; }

    [[nodiscard]] bool is_zero() const { return re_ == 0 && im_ == 0; }
    [[nodiscard]] bool is_real() const { return im_ == 0; }
    [[nodiscard]] Scalar conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    [[nodiscard]] Rat norm() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] std::complex<double> to_complex() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    /// Throws std::domain_error on division by zero.
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const Scalar& a, const Scalar& b) = default;

    /// Lexicographic order on (re, im); used only for deterministic output.
    friend bool lex_less(const Scalar& a, const Scalar& b)
    {
        if (a.re_ != b.re_) {
            return a.re_ < b.re_;
        }
        return a.im_ < b.im_;
    }

private:
    Rat re_{0};
    Rat im_{0};
};

/// "p/q" for real values, "p/q+r/s*i" style otherwise (human-readable only;
/// JSON uses the {"re","im"} object form).
std::string to_string(const Scalar& s);

/// Accepts "x" (real) or "x,y" (x + y i) where x, y are parse_rat inputs.
Scalar parse_scalar(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace futaki
