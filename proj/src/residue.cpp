#include "futaki/residue.hpp"

#include "futaki/overloaded.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace futaki::residue {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double max_radius = 0.5;
constexpr double bisection_tol = 1e-12;
constexpr cplx I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Quadrature rules

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre on [lo, hi].
Rule gauss_legendre(int n, double lo, double hi)
{
    if (n < 1) {
        throw std::invalid_argument("quadrature needs at least one radial node");
    }
    const auto zeros = boost::math::legendre_p_zeros<double>(n);
    Rule rule;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    auto push = [&](double t) {
        const double dp = boost::math::legendre_p_prime(n, t);
        rule.x.push_back(mid + half * t);
        rule.w.push_back(half * 2.0 / ((1.0 - t * t) * dp * dp));
    };
    for (double z : zeros) {
        if (z == 0.0) {
            push(0.0);
        } else {
            push(z);
            push(-z);
        }
    }
    return rule;
}

// Trapezoid on the circle; spectrally accurate for smooth periodic integrands.
Rule periodic(int n)
{
    if (n < 2) {
        throw std::invalid_argument("quadrature needs at least two angular nodes");
    }
    Rule rule;
    for (int k = 0; k < n; ++k) {
        rule.x.push_back(2.0 * pi * k / n);
        rule.w.push_back(2.0 * pi / n);
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Field models

struct Field {
    std::array<int, 2> weight{};  // weighted dilation (lambda^w1 u, lambda^w2 v)
    int level_power = 0;          // boundary is |X|^2 = r^level_power
    cplx a;
    cplx l1;
    cplx l2;
    bool degenerate = false;

    [[nodiscard]] std::array<cplx, 2> X(cplx u, cplx v) const
    {
        if (degenerate) {
            return {u * (a + v), -v * v};
        }
        return {l1 * u, l2 * v};
    }

    // J[i][k] = dX^i / dz_k
    [[nodiscard]] Mat2 jacobian(cplx u, cplx v) const
    {
        if (degenerate) {
            return Mat2{{{a + v, u}, {cplx{}, -2.0 * v}}};
        }
        return Mat2{{{l1, cplx{}}, {cplx{}, l2}}};
    }
};

Field make_field(const FieldKind& kind)
{
    return std::visit(overloaded{[](const Degenerate& d) {
                                     Field f;
                                     f.weight = {2, 1};
                                     f.level_power = 4;
                                     f.a = d.a.to_complex();
                                     f.degenerate = true;
                                     return f;
                                 },
                                 [](const Nondegenerate& n) {
                                     Field f;
                                     f.weight = {1, 1};
                                     f.level_power = 2;
                                     f.l1 = n.l1.to_complex();
                                     f.l2 = n.l2.to_complex();
                                     return f;
                                 }},
                      kind);
}

double hermitian_form(const Mat2& g, const std::array<cplx, 2>& x)
{
    cplx s{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            s += g[i][j] * x[i] * std::conj(x[j]);
        }
    }
    return s.real();
}

bool positive_definite(const Mat2& g)
{
    const double det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).real();
    return g[0][0].real() > 0.0 && det > 0.0;
}

cplx det3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b, const std::array<cplx, 3>& c)
{
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

double det4(const std::array<std::array<double, 4>, 4>& m)
{
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            e(i, j) = m[i][j];
        }
    }
    return e.determinant();
}

std::array<double, 4> real_vector(const std::array<cplx, 2>& z)
{
    return {z[0].real(), z[0].imag(), z[1].real(), z[1].imag()};
}

// |X|_g^2 along the weighted ray through the base point b.
struct Ray {
    const Field& field;
    const LocalMetric& metric;
    std::array<cplx, 2> b;

    [[nodiscard]] std::array<cplx, 2> point(double lambda) const
    {
        return {std::pow(lambda, field.weight[0]) * b[0], std::pow(lambda, field.weight[1]) * b[1]};
    }

    [[nodiscard]] double F(double lambda) const
    {
        const auto z = point(lambda);
        const Mat2 g = metric.at(z[1]);
        if (!positive_definite(g)) {
            throw QuadratureError("surface parametrization failed: metric not positive at the boundary");
        }
        return hermitian_form(g, field.X(z[0], z[1]));
    }
};

double solve_ray(const Ray& ray, double level, double guess)
{
    double hi = guess;
    int expansions = 0;
    while (ray.F(hi) <= level) {
        hi *= 2.0;
        if (++expansions > 60 || hi > 1.0) {
            throw QuadratureError("surface parametrization failed: no crossing of the level set");
        }
    }
    const auto [lo, up] = boost::math::tools::bisect(
        [&](double l) { return ray.F(l) - level; }, 0.0, hi,
        [](double x, double y) { return std::abs(y - x) <= bisection_tol * std::max(std::abs(y), 1e-300); });
    return 0.5 * (lo + up);
}

}  // namespace

// ---------------------------------------------------------------------------
// Metric and test function

Mat2 LocalMetric::at(cplx v1) const
{
    Mat2 g = g0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            g[i][j] += v1 * g1v[i][j] + std::conj(v1) * std::conj(g1v[j][i]);
        }
    }
    return g;
}

Mat2 LocalMetric::dvbar() const
{
    Mat2 h{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            h[i][j] = std::conj(g1v[j][i]);
        }
    }
    return h;
}

double LocalMetric::det_at_origin() const { return (g0[0][0] * g0[1][1] - g0[0][1] * g0[1][0]).real(); }

cplx LocalMetric::ddet_dv_at_origin() const
{
    // d/dv1 det(g0 + v1 G + conj(v1) G^H) at v1 = 0
    return g0[0][0] * g1v[1][1] + g1v[0][0] * g0[1][1] - g0[0][1] * g1v[1][0] - g1v[0][1] * g0[1][0];
}

std::vector<std::string> LocalMetric::problems() const
{
    std::vector<std::string> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (!std::isfinite(std::abs(g0[i][j])) || !std::isfinite(std::abs(g1v[i][j]))) {
                out.emplace_back("metric coefficients must be finite");
                return out;
            }
        }
    }
    if (std::abs(g0[0][1] - std::conj(g0[1][0])) > 1e-14 || std::abs(g0[0][0].imag()) > 1e-14 ||
        std::abs(g0[1][1].imag()) > 1e-14) {
        out.emplace_back("g0 is not Hermitian");
    }
    if (!positive_definite(g0)) {
        out.emplace_back("g0 is not positive definite");
    }
    return out;
}

TestFunction TestFunction::constant(const Scalar& c)
{
    TestFunction f;
    f.add({}, c);
    return f;
}

TestFunction& TestFunction::add(const Monomial& m, const Scalar& c)
{
    if (m.u < 0 || m.v < 0 || m.ubar < 0 || m.vbar < 0 || m.degree() > max_degree) {
        throw std::invalid_argument("test function monomials need non-negative exponents of total degree <= 4");
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
    }
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
    return *this;
}

cplx TestFunction::operator()(cplx u1, cplx v1) const
{
    cplx s{};
    for (const auto& [m, c] : terms_) {
        s += c.to_complex() * std::pow(u1, m.u) * std::pow(v1, m.v) * std::pow(std::conj(u1), m.ubar) *
             std::pow(std::conj(v1), m.vbar);
    }
    return s;
}

Scalar TestFunction::at_origin() const
{
    const auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar{} : it->second;
}

Scalar TestFunction::dv_at_origin() const
{
    const auto it = terms_.find(Monomial{0, 1, 0, 0});
    return it == terms_.end() ? Scalar{} : it->second;
}

// ---------------------------------------------------------------------------

void check_problem(const ResidueProblem& prob)
{
    if (auto issues = prob.metric.problems(); !issues.empty()) {
        throw std::invalid_argument(issues.front());
    }
    std::visit(overloaded{[](const Degenerate& d) {
                              if (d.a.is_zero()) {
                                  throw std::invalid_argument("eigenvalue a must be nonzero");
                              }
                          },
                          [](const Nondegenerate& n) {
                              if (n.l1.is_zero() || n.l2.is_zero()) {
                                  throw std::invalid_argument("eigenvalues must be nonzero");
                              }
                          }},
               prob.field);
    for (std::size_t k = 0; k < prob.radii.size(); ++k) {
        const double r = prob.radii[k];
        if (!(r > 0.0) || r > max_radius) {
            throw std::invalid_argument("radii must lie in (0, 0.5]");
        }
        if (k > 0 && !(r < prob.radii[k - 1])) {
            throw std::invalid_argument("radii must be strictly decreasing");
        }
    }
    const auto& q = prob.quadrature;
    if (q.n_angular < 2 || q.n_radial < 1 || q.mc_samples < 1) {
        throw std::invalid_argument("quadrature node and sample counts must be positive");
    }
}

cplx boundary_integral(const ResidueProblem& prob, double r)
{
    if (!(r > 0.0) || r > max_radius) {
        throw std::invalid_argument("radius must lie in (0, 0.5]");
    }
    const Field field = make_field(prob.field);
    const LocalMetric& metric = prob.metric;
    const Mat2 G = metric.g1v;
    const Mat2 GH = metric.dvbar();
    const double level = std::pow(r, field.level_power);
    const double guess = field.degenerate ? r / std::max(1.0, std::sqrt(std::abs(field.a))) : r;

    // Base points on S^3: b = (cos t e^{i chi}, sin t e^{i psi}).
    const Rule tau = gauss_legendre(prob.quadrature.n_radial, 0.0, 0.5 * pi);
    const Rule ang = periodic(prob.quadrature.n_angular);

    cplx total{};
    double orientation = 0.0;
    for (std::size_t it = 0; it < tau.x.size(); ++it) {
        const double t = tau.x[it];
        const double ct = std::cos(t);
        const double st = std::sin(t);
        cplx row{};
        for (std::size_t ic = 0; ic < ang.x.size(); ++ic) {
            const cplx ec = std::polar(1.0, ang.x[ic]);
            for (std::size_t ip = 0; ip < ang.x.size(); ++ip) {
                const cplx ep = std::polar(1.0, ang.x[ip]);
                const Ray ray{field, metric, {ct * ec, st * ep}};
                const double lambda = solve_ray(ray, level, guess);
                const auto z = ray.point(lambda);
                const Mat2 g = metric.at(z[1]);
                const auto X = field.X(z[0], z[1]);
                const Mat2 dX = field.jacobian(z[0], z[1]);
                const double F = hermitian_form(g, X);

                // dF/dz_k, holomorphic derivative (F is real).
                std::array<cplx, 2> Fz{};
                for (int k = 0; k < 2; ++k) {
                    for (int i = 0; i < 2; ++i) {
                        for (int j = 0; j < 2; ++j) {
                            const cplx dg = k == 1 ? G[i][j] : cplx{};
                            Fz[k] += (dg * X[i] + g[i][j] * dX[i][k]) * std::conj(X[j]);
                        }
                    }
                }

                // Parameter derivatives of the base point: columns (tau, chi, psi).
                const std::array<std::array<cplx, 3>, 2> db{{{-st * ec, I * ct * ec, cplx{}},
                                                             {ct * ep, cplx{}, I * st * ep}}};
                std::array<cplx, 2> dz_dlambda{};
                std::array<std::array<cplx, 3>, 2> partial{};
                for (int i = 0; i < 2; ++i) {
                    const int w = field.weight[i];
                    dz_dlambda[i] = static_cast<double>(w) * std::pow(lambda, w - 1) * ray.b[i];
                    for (int m = 0; m < 3; ++m) {
                        partial[i][m] = std::pow(lambda, w) * db[i][m];
                    }
                }
                const double F_lambda = 2.0 * (Fz[0] * dz_dlambda[0] + Fz[1] * dz_dlambda[1]).real();
                if (!(F_lambda > 0.0)) {
                    throw QuadratureError("surface parametrization failed: level set not transversal");
                }
                std::array<std::array<cplx, 3>, 2> dz{};
                for (int m = 0; m < 3; ++m) {
                    const double F_m = 2.0 * (Fz[0] * partial[0][m] + Fz[1] * partial[1][m]).real();
                    const double lambda_m = -F_m / F_lambda;
                    for (int i = 0; i < 2; ++i) {
                        dz[i][m] = dz_dlambda[i] * lambda_m + partial[i][m];
                    }
                }
                std::array<std::array<cplx, 3>, 2> dzbar{};
                for (int i = 0; i < 2; ++i) {
                    for (int m = 0; m < 3; ++m) {
                        dzbar[i][m] = std::conj(dz[i][m]);
                    }
                }

                if (orientation == 0.0) {
                    std::array<std::array<double, 4>, 4> frame{};
                    frame[0] = real_vector(dz_dlambda);
                    for (int m = 0; m < 3; ++m) {
                        frame[m + 1] = real_vector({dz[0][m], dz[1][m]});
                    }
                    const double d = det4(frame);
                    if (d == 0.0) {
                        throw QuadratureError("surface parametrization failed: degenerate frame");
                    }
                    orientation = d > 0.0 ? 1.0 : -1.0;
                }

                // alpha_i = g_{i lbar} conj(X^l); alpha_{j,kbar} = d/d(zbar_k) alpha_j.
                std::array<cplx, 2> alpha{};
                Mat2 alpha_bar{};
                for (int i = 0; i < 2; ++i) {
                    for (int l = 0; l < 2; ++l) {
                        alpha[i] += g[i][l] * std::conj(X[l]);
                        for (int k = 0; k < 2; ++k) {
                            const cplx dg = k == 1 ? GH[i][l] : cplx{};
                            alpha_bar[i][k] += dg * std::conj(X[l]) + g[i][l] * std::conj(dX[l][k]);
                        }
                    }
                }

                // eta ^ dbar eta = alpha_i alpha_{j,kbar} dz^i ^ dzbar^k ^ dz^j / F^2
                cplx coef{};
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        if (i == j) {
                            continue;
                        }
                        for (int k = 0; k < 2; ++k) {
                            coef += alpha[i] * alpha_bar[j][k] * det3(dz[i], dzbar[k], dz[j]);
                        }
                    }
                }
                row += prob.phi(z[0], z[1]) * coef / (F * F);
            }
        }
        total += tau.w[it] * ang.w[0] * ang.w[0] * row;
    }
    return orientation * total;
}

LimitEstimate extrapolate(std::vector<std::pair<double, cplx>> raw)
{
    const auto n = static_cast<Eigen::Index>(raw.size());
    if (n < 2) {
        throw std::invalid_argument("extrapolation needs at least two radii");
    }
    const Eigen::Index k = n >= 4 ? 3 : 2;
    Eigen::MatrixXd A(n, k);
    Eigen::VectorXd re(n);
    Eigen::VectorXd im(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = raw[static_cast<std::size_t>(i)].first;
        for (Eigen::Index p = 0; p < k; ++p) {
            A(i, p) = std::pow(r, static_cast<double>(p));
        }
        re(i) = raw[static_cast<std::size_t>(i)].second.real();
        im(i) = raw[static_cast<std::size_t>(i)].second.imag();
    }
    const auto qr = A.colPivHouseholderQr();
    const Eigen::VectorXd cre = qr.solve(re);
    const Eigen::VectorXd cim = qr.solve(im);
    const Eigen::VectorXd rre = A * cre - re;
    const Eigen::VectorXd rim = A * cim - im;

    LimitEstimate est;
    est.value = {cre(0), cim(0)};
    est.error_estimate = std::sqrt(rre.squaredNorm() + rim.squaredNorm());

    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& [r, v] : raw) {
        const double dev = std::abs(v - est.value);
        if (dev > previous) {
            est.residuals_monotone = false;
        }
        previous = dev;
    }
    est.raw = std::move(raw);
    return est;
}

LimitEstimate residue_limit(const ResidueProblem& prob)
{
    check_problem(prob);
    if (prob.radii.size() < 3) {
        throw std::invalid_argument("residue_limit needs at least three radii");
    }
    std::vector<std::pair<double, cplx>> raw;
    raw.reserve(prob.radii.size());
    for (double r : prob.radii) {
        raw.emplace_back(r, boundary_integral(prob, r));
    }
    return extrapolate(std::move(raw));
}

cplx lemma_main_reference(const ResidueProblem& prob)
{
    const auto* d = std::get_if<Degenerate>(&prob.field);
    if (d == nullptr) {
        throw std::invalid_argument("lemma_main_reference needs a degenerate field");
    }
    const Scalar exact = prob.phi.dv_at_origin() / d->a - prob.phi.at_origin() / (d->a * d->a);
    return 4.0 * pi * pi * exact.to_complex();
}

LimitEstimate bott_limit(const ResidueProblem& prob)
{
    if (!std::holds_alternative<Nondegenerate>(prob.field)) {
        throw std::invalid_argument("bott_limit needs a nondegenerate field");
    }
    LimitEstimate est = residue_limit(prob);
    est.value = -est.value;
    for (auto& [r, v] : est.raw) {
        v = -v;
    }
    return est;
}

cplx bott_reference(const ResidueProblem& prob)
{
    const auto* n = std::get_if<Nondegenerate>(&prob.field);
    if (n == nullptr) {
        throw std::invalid_argument("bott_reference needs a nondegenerate field");
    }
    const Scalar exact = prob.phi.at_origin() / (n->l1 * n->l2);
    return 4.0 * pi * pi * exact.to_complex();
}

// ---------------------------------------------------------------------------
// Volume integral in scaled coordinates (u1, v1) = (r^2 u, r v)

namespace {

const Degenerate& degenerate_field(const ResidueProblem& prob)
{
    const auto* d = std::get_if<Degenerate>(&prob.field);
    if (d == nullptr) {
        throw std::invalid_argument("the volume integral needs a degenerate field");
    }
    return *d;
}

// Smallest eigenvalue of a 2x2 Hermitian matrix.
double min_eigenvalue(const Mat2& g)
{
    const double a = g[0][0].real();
    const double d = g[1][1].real();
    const double off = std::abs(g[0][1]);
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
}

double operator_norm_bound(const Mat2& m)
{
    double s = 0.0;
    for (const auto& row : m) {
        for (const auto& x : row) {
            s += std::norm(x);
        }
    }
    return std::sqrt(s);
}

}  // namespace

cplx appendix_scaled_integral_mc(const ResidueProblem& prob, double r, std::uint64_t stream, double* stderr_out)
{
    const cplx a = degenerate_field(prob).a.to_complex();
    const LocalMetric& metric = prob.metric;

    // On the scaled ball, min-eig(g) (|X1|^2 + |X2|^2) <= 1 bounds the box.
    const double lmin0 = min_eigenvalue(metric.g0);
    const double gnorm = 2.0 * operator_norm_bound(metric.g1v);
    double V = std::pow(0.5 * lmin0, -0.25);
    const double leff = lmin0 - gnorm * r * V;
    if (!(leff > 0.5 * lmin0)) {
        throw QuadratureError("surface parametrization failed: radius too large for this metric");
    }
    V = 1.01 * std::pow(leff, -0.25);
    const double amin = std::abs(a) - r * V;
    if (!(amin > 0.0)) {
        throw QuadratureError("surface parametrization failed: radius too large for this eigenvalue");
    }
    const double U = 1.01 / (std::sqrt(leff) * amin);
    const double box = (2.0 * U) * (2.0 * U) * (2.0 * V) * (2.0 * V);

    auto inside = [&](cplx u, cplx v) {
        const Mat2 g = metric.at(r * v);
        const std::array<cplx, 2> X{u * (a + r * v), -v * v};
        return hermitian_form(g, X) <= 1.0;
    };

    std::seed_seq seq{static_cast<std::uint32_t>(prob.quadrature.seed),
                      static_cast<std::uint32_t>(prob.quadrature.seed >> 32U), static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    // Average over the orbit {(u,v), (u,-v), (-u,iv), (-u,-iv)}, a symmetry of
    // the box and of the r = 0 domain, so only the O(r) asymmetry survives.
    const std::int64_t n = prob.quadrature.mc_samples;
    cplx mean{};
    double m2 = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        const cplx u{U * unit(rng), U * unit(rng)};
        const cplx v{V * unit(rng), V * unit(rng)};
        cplx f{};
        const std::array<std::pair<cplx, cplx>, 4> orbit{{{u, v}, {u, -v}, {-u, I * v}, {-u, -I * v}}};
        for (const auto& [uu, vv] : orbit) {
            if (inside(uu, vv)) {
                f += std::conj(vv);
            }
        }
        f *= 0.25;
        // Welford update on the complex samples (variance of |f - mean|).
        const cplx delta = f - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += std::real(std::conj(delta) * (f - mean));
    }
    // du dubar dv dvbar = (-2i)^2 dV = -4 dV
    const double scale = -4.0 * box / r;
    if (stderr_out != nullptr) {
        const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
        *stderr_out = std::abs(scale) * std::sqrt(var / static_cast<double>(n));
    }
    return scale * mean;
}

cplx appendix_scaled_integral_quadrature(const ResidueProblem& prob, double r)
{
    const cplx a = degenerate_field(prob).a.to_complex();
    const LocalMetric& metric = prob.metric;
    // Completing the square in X1, the u-slice over a fixed v is a disc of area
    // pi (1 - h |v|^4) / (g11 |a + r v|^2) with h = det g / g11 at v1 = r v.
    auto h_at = [&](cplx v) {
        const Mat2 g = metric.at(r * v);
        if (!positive_definite(g)) {
            throw QuadratureError("surface parametrization failed: metric not positive");
        }
        return (g[0][0] * g[1][1] - g[0][1] * g[1][0]).real() / g[0][0].real();
    };
    const Rule ang = periodic(prob.quadrature.n_angular);
    cplx total{};
    for (double psi : ang.x) {
        const cplx dir = std::polar(1.0, psi);
        auto G = [&](double rho) { return h_at(rho * dir) * std::pow(rho, 4) - 1.0; };
        double hi = 1.0;
        int expansions = 0;
        while (G(hi) <= 0.0) {
            hi *= 1.5;
            if (++expansions > 40) {
                throw QuadratureError("surface parametrization failed: unbounded slice domain");
            }
        }
        const auto [lo, up] = boost::math::tools::bisect(
            G, 0.0, hi, [](double x, double y) { return std::abs(y - x) <= bisection_tol * std::abs(y); });
        const double rho_max = 0.5 * (lo + up);
        const Rule radial = gauss_legendre(prob.quadrature.n_radial, 0.0, rho_max);
        cplx line{};
        for (std::size_t i = 0; i < radial.x.size(); ++i) {
            const double rho = radial.x[i];
            const cplx v = rho * dir;
            const Mat2 g = metric.at(r * v);
            const double g11 = g[0][0].real();
            const double h = h_at(v);
            const double area = pi * std::max(0.0, 1.0 - h * std::pow(rho, 4)) / (g11 * std::norm(a + r * v));
            line += radial.w[i] * rho * std::conj(v) * area;
        }
        total += ang.w[0] * line;
    }
    return -4.0 * total / r;
}

LimitEstimate appendix_volume_limit(const ResidueProblem& prob)
{
    check_problem(prob);
    if (prob.radii.size() < 3) {
        throw std::invalid_argument("appendix_volume_limit needs at least three radii");
    }
    std::vector<std::pair<double, cplx>> raw;
    std::vector<double> errs;
    for (std::size_t k = 0; k < prob.radii.size(); ++k) {
        double se = 0.0;
        raw.emplace_back(prob.radii[k], appendix_scaled_integral_mc(prob, prob.radii[k], k, &se));
        errs.push_back(se);
    }
    LimitEstimate est = extrapolate(raw);

    // Sampling error of the extrapolated value: value = sum c_k y_k with c the
    // first row of the least-squares pseudo-inverse.
    const auto n = static_cast<Eigen::Index>(raw.size());
    const Eigen::Index p = n >= 4 ? 3 : 2;
    Eigen::MatrixXd A(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            A(i, j) = std::pow(raw[static_cast<std::size_t>(i)].first, static_cast<double>(j));
        }
    }
    const Eigen::MatrixXd pinv = A.completeOrthogonalDecomposition().pseudoInverse();
    double var = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        var += std::pow(pinv(0, i) * errs[static_cast<std::size_t>(i)], 2);
    }
    est.error_estimate += std::sqrt(var);
    return est;
}

LimitEstimate appendix_volume_limit_quadrature(const ResidueProblem& prob)
{
    check_problem(prob);
    std::vector<std::pair<double, cplx>> raw;
    for (double r : prob.radii) {
        raw.emplace_back(r, appendix_scaled_integral_quadrature(prob, r));
    }
    return extrapolate(std::move(raw));
}

cplx appendix_reference(const ResidueProblem& prob)
{
    const cplx a = degenerate_field(prob).a.to_complex();
    const double det = prob.metric.det_at_origin();
    const double a2 = std::norm(a);
    return pi * pi * (prob.metric.ddet_dv_at_origin() / (a2 * det * det) + std::conj(a) / (a2 * a2 * det));
}

// ---------------------------------------------------------------------------
// Model integrals in (s, t)

namespace {

// Integral of f(s, t) dV over {|s|^2 + |t|^(2p) <= 1}, polar in both factors.
template <class Fn>
double model_domain_integral(const QuadratureSpec& quad, int p, Fn f)
{
    const Rule ang = periodic(quad.n_angular);
    const Rule rt = gauss_legendre(quad.n_radial, 0.0, 1.0);
    double total = 0.0;
    for (std::size_t i = 0; i < rt.x.size(); ++i) {
        const double tr = rt.x[i];
        const double smax = std::sqrt(std::max(0.0, 1.0 - std::pow(tr, 2 * p)));
        const Rule rs = gauss_legendre(quad.n_radial, 0.0, smax);
        for (double tth : ang.x) {
            const cplx t = std::polar(tr, tth);
            for (std::size_t j = 0; j < rs.x.size(); ++j) {
                for (double sth : ang.x) {
                    const cplx s = std::polar(rs.x[j], sth);
                    total += rt.w[i] * tr * rs.w[j] * rs.x[j] * ang.w[0] * ang.w[0] * f(s, t);
                }
            }
        }
    }
    return total;
}

}  // namespace

double helper_integral_check(const QuadratureSpec& quad)
{
    // (-1)|t|^2 ds dsbar dt dtbar = (-1)|t|^2 (-4) dV
    return model_domain_integral(quad, 2, [](cplx, cplx t) { return 4.0 * std::norm(t); });
}

double ball_form_integral(const QuadratureSpec& quad, double c)
{
    return model_domain_integral(quad, 1, [c](cplx, cplx) { return -4.0 * c; });
}

double convergence_exponent(const std::vector<std::pair<double, cplx>>& raw, cplx reference)
{
    if (raw.size() < 2) {
        throw std::invalid_argument("convergence exponent needs at least two radii");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const auto n = static_cast<double>(raw.size());
    for (const auto& [r, v] : raw) {
        const double x = std::log(r);
        const double y = std::log(std::abs(v - reference));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace futaki::residue
