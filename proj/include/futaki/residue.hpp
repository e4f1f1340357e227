#pragma once

#include "futaki/scalar.hpp"

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

/// Floating-point checks of the residue limits at a zero of a holomorphic
/// vector field on C^2, by direct integration of differential forms.
///
/// Conventions: C^2 carries the orientation of dx1 dy1 dx2 dy2, so
/// dz ^ dzbar = -2i dx ^ dy in each factor, and the boundary of a domain is
/// oriented by the outward normal first. Nothing here feeds back into the
/// exact pipeline.
namespace futaki::residue {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hermitian metric g_{i jbar}(v1) = g0 + v1 G + conj(v1) G^H on (u1, v1),
/// independent of u1. Index 0 is u1, index 1 is v1.
struct LocalMetric {
    Mat2 g0{{{cplx{1.0}, cplx{0.0}}, {cplx{0.0}, cplx{1.0}}}};
    Mat2 g1v{};

    static LocalMetric flat() { return {}; }

    [[nodiscard]] Mat2 at(cplx v1) const;
    /// d/d(v1bar) of g, i.e. G^H.
    [[nodiscard]] Mat2 dvbar() const;
    [[nodiscard]] double det_at_origin() const;
    /// d/d(v1) of det g at the origin.
    [[nodiscard]] cplx ddet_dv_at_origin() const;
    /// Empty when g0 is Hermitian positive definite and G is finite.
    [[nodiscard]] std::vector<std::string> problems() const;
};

/// Exponents of u1, v1, conj(u1), conj(v1).
struct Monomial {
    int u = 0;
    int v = 0;
    int ubar = 0;
    int vbar = 0;

    [[nodiscard]] int degree() const { return u + v + ubar + vbar; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Polynomial test function of total degree at most 4 with exact coefficients.
class TestFunction {
public:
    static constexpr int max_degree = 4;

    TestFunction() = default;
    static TestFunction constant(const Scalar& c);

    TestFunction& add(const Monomial& m, const Scalar& c);

    [[nodiscard]] cplx operator()(cplx u1, cplx v1) const;
    [[nodiscard]] Scalar at_origin() const;
    /// Holomorphic derivative d/dv1 at the origin.
    [[nodiscard]] Scalar dv_at_origin() const;
    [[nodiscard]] const std::map<Monomial, Scalar>& terms() const { return terms_; }

private:
    std::map<Monomial, Scalar> terms_;
};

/// u1 (a + v1) d/du1 - v1^2 d/dv1: the lifted field near the degenerate zero.
struct Degenerate {
    Scalar a;
};

/// l1 u1 d/du1 + l2 v1 d/dv1.
struct Nondegenerate {
    Scalar l1;
    Scalar l2;
};

using FieldKind = std::variant<Degenerate, Nondegenerate>;

struct QuadratureSpec {
    int n_angular = 32;
    int n_radial = 16;
    std::int64_t mc_samples = 1'000'000;
    std::uint64_t seed = 20240611;
};

struct ResidueProblem {
    LocalMetric metric;
    TestFunction phi;
    FieldKind field;
    std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
    QuadratureSpec quadrature;
};

struct LimitEstimate {
    cplx value;
    double error_estimate = 0.0;
    /// False when |raw(r) - value| fails to shrink with r.
    bool residuals_monotone = true;
    std::vector<std::pair<double, cplx>> raw;
};

/// Throws std::invalid_argument when the problem is malformed.
void check_problem(const ResidueProblem& prob);

/// Integral of phi * eta ^ dbar(eta) over the boundary of the distorted ball
/// {|X|_g^2 <= r^4} (degenerate field) or {|X|_g^2 <= r^2} (nondegenerate),
/// where eta = g(., Xbar) / g(X, Xbar).
cplx boundary_integral(const ResidueProblem& prob, double r);

/// Least-squares fit of value + c1 r (+ c2 r^2 with four or more samples);
/// error_estimate is the fit residual norm.
LimitEstimate extrapolate(std::vector<std::pair<double, cplx>> raw);

/// r -> 0 limit of boundary_integral.
LimitEstimate residue_limit(const ResidueProblem& prob);

/// (4 pi^2 / a) dphi/dv1(0) - (4 pi^2 / a^2) phi(0), evaluated exactly before
/// the final cast. Degenerate fields only.
cplx lemma_main_reference(const ResidueProblem& prob);

/// Limit of the Bott form phi * [eta / (1 + dbar eta)] in degree three, which
/// is -phi * eta ^ dbar(eta). Nondegenerate fields only.
LimitEstimate bott_limit(const ResidueProblem& prob);

/// 4 pi^2 phi(0) / (l1 l2).
cplx bott_reference(const ResidueProblem& prob);

/// (1/r) * integral of conj(v) du dubar dv dvbar over the scaled ball
/// {|X|_g^2(r^2 u, r v) <= r^4}, by seeded rejection sampling. The returned
/// value carries the Monte Carlo standard error in `stderr_out` when given.
cplx appendix_scaled_integral_mc(const ResidueProblem& prob, double r, std::uint64_t stream,
                                 double* stderr_out = nullptr);

/// Same quantity by tensor-product quadrature over v with exact u-slices.
cplx appendix_scaled_integral_quadrature(const ResidueProblem& prob, double r);

/// r -> 0 limit of the scaled volume integral (Monte Carlo per radius).
/// error_estimate combines the fit residual with the propagated sampling error.
LimitEstimate appendix_volume_limit(const ResidueProblem& prob);

/// r -> 0 limit of the scaled volume integral (quadrature per radius).
LimitEstimate appendix_volume_limit_quadrature(const ResidueProblem& prob);

/// pi^2 (d(det g)/dv1(0) / (|a|^2 det g(0)^2) + conj(a) / (|a|^4 det g(0))).
cplx appendix_reference(const ResidueProblem& prob);

/// Integral of -|t|^2 ds dsbar dt dtbar over {|s|^2 + |t|^4 <= 1}; equals pi^2.
double helper_integral_check(const QuadratureSpec& quad);

/// Integral of c ds dsbar dt dtbar over the unit ball {|s|^2 + |t|^2 <= 1}
/// for the constant c (e.g. c = -1/2 gives the right side of the two-to-one
/// substitution used for the helper integral, and c = i^2 the 2 pi^2 volume
/// identity).
double ball_form_integral(const QuadratureSpec& quad, double c);

/// Slope of log|raw(r) - reference| against log r.
double convergence_exponent(const std::vector<std::pair<double, cplx>>& raw, cplx reference);

}  // namespace futaki::residue
