#include "sharpkit/nelder_mead.hpp"
#include "sharpkit/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace sharpkit {

namespace {

constexpr int kRestarts = 3;

struct Standardizer {
    double mean = 0.0;
    double scale = 1.0;

    static Standardizer of(std::span<const double> v)
    {
        Standardizer s;
        s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v)
            ss += (x - s.mean) * (x - s.mean);
        const double sd = std::sqrt(ss / static_cast<double>(v.size()));
        s.scale = sd > 0.0 ? sd : 1.0;
        return s;
    }

    std::vector<double> apply(std::span<const double> v) const
    {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = (v[i] - mean) / scale;
        return out;
    }
};

double logistic_term(double x, double k2, double k3)
{
    const double z = k2 * (x - k3);
    if (std::isnan(z))
        return 0.5; // infinite slope exactly at the midpoint
    return 1.0 / (1.0 + std::exp(z));
}

double q_value(double x, std::span<const double> k)
{
    return k[0] * (0.5 + logistic_term(x, k[1], k[2])) + k[3] * x + k[4];
}

void check_fit_input(std::span<const double> x, std::span<const double> y, std::size_t min_len)
{
    if (x.size() != y.size())
        throw Error(Errc::invalid_argument, "fit: x and y differ in length");
    if (x.size() < min_len)
        throw Error(Errc::invalid_argument, "fit: need at least " + std::to_string(min_len) + " samples");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw Error(Errc::invalid_argument, "fit: non-finite input");
}

std::vector<double> initial_step(std::span<const double> x)
{
    std::vector<double> step(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        step[i] = 0.1 * std::abs(x[i]) + 0.05;
    return step;
}

struct Minimum {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// One start followed by restarts from the best vertex until no further gain.
Minimum minimize_from(const Objective& f, std::vector<double> start)
{
    auto res = nelder_mead(f, start, initial_step(start));
    Minimum m{res.x, res.value, res.converged};
    for (int r = 0; r < kRestarts; ++r) {
        auto again = nelder_mead(f, m.x, initial_step(m.x));
        const bool improved = again.value < m.value - 1e-15 * (1.0 + std::abs(m.value));
        if (again.value <= m.value) {
            m.x = again.x;
            m.value = again.value;
        }
        m.converged = m.converged || again.converged;
        if (!improved)
            break;
    }
    return m;
}

void keep_best(Minimum& best, Minimum cand)
{
    const bool converged = best.converged || cand.converged;
    if (cand.value < best.value)
        best = std::move(cand);
    best.converged = converged;
}

// Logistic fit on standardized data; returns parameters in standardized units.
Minimum fit_standardized(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const auto n = static_cast<double>(xs.size());
    const Objective mse = [&](std::span<const double> k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = q_value(xs[i], k) - ys[i];
            acc += d * d;
        }
        return acc / n;
    };

    // (a) affine closed form; xs has zero mean, so slope = cov / var.
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    const std::vector<double> affine{0.0, 1.0, 0.0, slope, y_mean};

    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    const double range = *ymax - *ymin;

    Minimum best{affine, mse(affine), false};
    keep_best(best, minimize_from(mse, affine));
    // (b) sigmoid spanning the data range, both slope signs.
    for (double sign : {1.0, -1.0})
        keep_best(best, minimize_from(mse, {range, sign * 4.0, 0.0, 0.0, *ymin}));
    // (c) perturbed copy of the best so far.
    std::vector<double> perturbed = best.x;
    for (std::size_t i = 0; i < perturbed.size(); ++i)
        perturbed[i] += (i % 2 == 0 ? 0.1 : -0.1) * (std::abs(perturbed[i]) + 0.1);
    keep_best(best, minimize_from(mse, perturbed));
    return best;
}

LogisticParams to_original(std::span<const double> k, const Standardizer& sx, const Standardizer& sy)
{
    LogisticParams p;
    p.k[0] = sy.scale * k[0];
    p.k[1] = k[1] / sx.scale;
    p.k[2] = sx.mean + sx.scale * k[2];
    p.k[3] = sy.scale * k[3] / sx.scale;
    p.k[4] = sy.mean + sy.scale * (k[4] - k[3] * sx.mean / sx.scale);
    return p;
}

} // namespace

double logistic_map(double x, const LogisticParams& p) { return q_value(x, p.k); }

std::vector<double> logistic_map(std::span<const double> x, const LogisticParams& p)
{
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = q_value(x[i], p.k);
    return out;
}

LogisticFit fit_affine(std::span<const double> x, std::span<const double> y)
{
    check_fit_input(x, y, 2);
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    LogisticFit fit;
    fit.params.k = {0.0, 0.0, 0.0, sxx > 0.0 ? sxy / sxx : 0.0, 0.0};
    fit.params.k[4] = my - fit.params.k[3] * mx;
    fit.rmse = rmse(logistic_map(x, fit.params), y);
    return fit;
}

LogisticFit fit_logistic(std::span<const double> x, std::span<const double> y)
{
    check_fit_input(x, y, 6);
    const auto sx = Standardizer::of(x);
    const auto sy = Standardizer::of(y);
    const auto best = fit_standardized(sx.apply(x), sy.apply(y));

    LogisticFit fit{to_original(best.x, sx, sy), 0.0};
    fit.rmse = rmse(logistic_map(x, fit.params), y);
    if (!best.converged)
        throw FitError("logistic fit did not converge from any start", fit.params, fit.rmse);

    // The affine model is inside the family; never report anything worse.
    const auto affine = fit_affine(x, y);
    if (affine.rmse < fit.rmse)
        return affine;
    return fit;
}

ComboFit fit_combo(std::span<const std::array<double, 2>> scores, std::span<const double> y)
{
    std::vector<double> c1(scores.size()), c2(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        c1[i] = scores[i][0];
        c2[i] = scores[i][1];
    }
    check_fit_input(c1, y, 8);
    check_fit_input(c2, y, 8);

    const auto s1 = Standardizer::of(c1);
    const auto s2 = Standardizer::of(c2);
    const auto sy = Standardizer::of(y);
    const auto z1 = s1.apply(c1);
    const auto z2 = s2.apply(c2);
    const auto ys = sy.apply(y);
    const auto n = static_cast<double>(ys.size());

    // theta = (k1..k5, w1, w2) in standardized units.
    const Objective mse = [&](std::span<const double> t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double d = q_value(t[5] * z1[i] + t[6] * z2[i], t.first(5)) - ys[i];
            acc += d * d;
        }
        return acc / n;
    };

    // Scaling w is absorbed by k2 and k4, so only its direction matters. Profile
    // the single-column fit over directions, then polish all 7 parameters jointly.
    const auto profile = [&](double angle) {
        double w1 = std::cos(angle), w2 = std::sin(angle);
        std::vector<double> xs(ys.size());
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = w1 * z1[i] + w2 * z2[i];
            ss += xs[i] * xs[i];
        }
        const double sd = std::sqrt(ss / n);
        if (sd > 0.0) {
            w1 /= sd;
            w2 /= sd;
            for (auto& v : xs)
                v /= sd;
        }
        auto m = fit_standardized(xs, ys);
        m.x.push_back(w1);
        m.x.push_back(w2);
        return m;
    };

    constexpr int kAngles = 24;
    const double step = std::numbers::pi / kAngles;
    Minimum best;
    int best_cell = 0;
    for (int a = 0; a < kAngles; ++a) {
        auto m = profile(a * step);
        if (m.value < best.value)
            best_cell = a;
        keep_best(best, std::move(m));
    }
    // Golden-section refinement of the direction around the best grid angle.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = (best_cell - 1) * step, hi = (best_cell + 1) * step;
    for (int it = 0; it < 30; ++it) {
        const double a = hi - golden * (hi - lo), b = lo + golden * (hi - lo);
        auto ma = profile(a), mb = profile(b);
        if (ma.value <= mb.value)
            hi = b;
        else
            lo = a;
        keep_best(best, std::move(ma));
        keep_best(best, std::move(mb));
    }
    keep_best(best, minimize_from(mse, best.x));

    const auto& t = best.x;
    ComboFit fit;
    fit.weights = {t[5] / s1.scale, t[6] / s2.scale};
    const double shift = fit.weights[0] * s1.mean + fit.weights[1] * s2.mean;
    fit.params.k = {sy.scale * t[0], t[1], t[2] + shift, sy.scale * t[3],
                    sy.mean + sy.scale * (t[4] - t[3] * shift)};

    std::vector<double> x(scores.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = fit.weights[0] * scores[i][0] + fit.weights[1] * scores[i][1];
    fit.final_rmse = rmse(logistic_map(x, fit.params), y);
    if (!best.converged)
        throw FitError("combination fit did not converge from any start", fit.params, fit.final_rmse);
    return fit;
}

} // namespace sharpkit
