#include "sharpkit/error.hpp"
#include "sharpkit/kernel_synthesis.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sharpkit {

namespace {

// Tail cut: exp(-(x/A)^beta) < 1e-16 beyond this many scale units (raised to 1/beta).
constexpr double kTailExponent = 37.0;

void check_grid(std::span<const double> omega)
{
    if (omega.empty())
        throw Error(Errc::invalid_argument, "frequency grid is empty");
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double w = omega[i];
        if (!std::isfinite(w) || w < 0.0 || w > std::numbers::pi)
            throw Error(Errc::invalid_argument, "frequency " + std::to_string(w) + " outside [0, pi]");
        if (i > 0 && w < omega[i - 1])
            throw Error(Errc::invalid_argument, "frequency grid must be sorted ascending");
    }
}

} // namespace

double gg_scale(const GGParams& p)
{
    p.validate();
    return std::sqrt(p.alpha * p.alpha * std::tgamma(1.0 / p.beta) / std::tgamma(3.0 / p.beta));
}

double gg_pdf(double x, const GGParams& p)
{
    if (!std::isfinite(x))
        throw Error(Errc::invalid_argument, "gg_pdf: non-finite argument");
    const double a = gg_scale(p);
    return std::exp(-std::pow(std::abs(x / a), p.beta)) / (2.0 * std::tgamma(1.0 + 1.0 / p.beta) * a);
}

std::vector<double> gg_spectrum(const GGParams& p, std::span<const double> omega)
{
    check_grid(omega);
    const double a = gg_scale(p);
    const double norm = 1.0 / (2.0 * std::tgamma(1.0 + 1.0 / p.beta) * a);
    const double support = std::max(10.0 * a, a * std::pow(kTailExponent, 1.0 / p.beta));

    std::vector<double> out;
    out.reserve(omega.size());
    for (double w : omega) {
        auto integrand = [&](double x) {
            return norm * std::exp(-std::pow(x / a, p.beta)) * std::cos(w * x);
        };
        // Split at the scale so the cusp at the origin (beta < 1) sits on an endpoint.
        const double split = std::min(a, support);
        double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, 0.0, split, 12, 1e-12);
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, split, support, 12, 1e-12);
        out.push_back(2.0 * value);
    }
    return out;
}

std::vector<double> target_response(const GGParams& p, double cutoff, std::span<const double> omega)
{
    if (!(cutoff > 0.0 && cutoff < std::numbers::pi))
        throw Error(Errc::invalid_argument, "cutoff must lie in (0, pi)");
    check_grid(omega);

    std::vector<double> passband;
    for (double w : omega)
        if (w <= cutoff)
            passband.push_back(w);
    const auto spectrum = passband.empty() ? std::vector<double>{} : gg_spectrum(p, passband);

    std::vector<double> out(omega.size(), 0.0);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (spectrum[i] < 1e-12)
            throw Error(Errc::infeasible,
                        "spectrum falls below 1e-12 at w=" + std::to_string(passband[i]) +
                            " inside the passband; choose a smaller cutoff");
        out[i] = 1.0 / spectrum[i];
    }
    return out;
}

PolyFit fit_polynomial_coeffs(std::span<const double> omega, std::span<const double> target, int terms)
{
    if (terms < 1)
        throw Error(Errc::invalid_argument, "terms must be >= 1");
    if (omega.size() != target.size())
        throw Error(Errc::invalid_argument, "omega and target lengths differ");
    const auto n = static_cast<Eigen::Index>(omega.size());
    if (n < 4 * terms)
        throw Error(Errc::invalid_argument,
                    "need at least " + std::to_string(4 * terms) + " passband samples, got " + std::to_string(n));

    std::vector<double> sorted(omega.begin(), omega.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::rank_deficient, "duplicate frequency samples in polynomial fit");

    // Columns scaled to unit max so high powers do not swamp the QR pivoting.
    Eigen::MatrixXd design(n, terms);
    Eigen::VectorXd rhs(n);
    Eigen::VectorXd col_scale(terms);
    for (int j = 0; j < terms; ++j) {
        const int power = 2 * (j + 1);
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        for (Eigen::Index i = 0; i < n; ++i)
            design(i, j) = sign * std::pow(omega[static_cast<std::size_t>(i)], power);
        col_scale(j) = design.col(j).cwiseAbs().maxCoeff();
        if (col_scale(j) == 0.0)
            throw Error(Errc::rank_deficient, "all frequency samples are zero");
        design.col(j) /= col_scale(j);
    }
    for (Eigen::Index i = 0; i < n; ++i)
        rhs(i) = target[static_cast<std::size_t>(i)];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < terms)
        throw Error(Errc::rank_deficient, "polynomial design matrix is rank deficient");
    const Eigen::VectorXd scaled = qr.solve(rhs);

    PolyFit fit;
    fit.coeffs.c.resize(static_cast<std::size_t>(terms));
    for (int j = 0; j < terms; ++j)
        fit.coeffs.c[static_cast<std::size_t>(j)] = scaled(j) / col_scale(j);

    const Eigen::VectorXd resid = design * scaled - rhs;
    fit.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    const double target_rms = std::sqrt(rhs.squaredNorm() / static_cast<double>(n));
    fit.relative_rms = target_rms > 0.0 ? fit.residual_rms / target_rms : 0.0;
    return fit;
}

} // namespace sharpkit
