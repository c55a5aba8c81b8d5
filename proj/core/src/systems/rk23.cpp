#include "excursion/systems/rk23.hpp"

#include <algorithm>
#include <cmath>

#include "excursion/errors.hpp"

namespace excursion::systems {

namespace {

double rms_norm(std::span<const double> err, std::span<const double> y0, std::span<const double> y1,
                const Rk23Options& opt) {
    double acc = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        const double scale = opt.atol + opt.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / scale;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

bool all_finite(std::span<const double> v) {
    return std::ranges::all_of(v, [](double x) { return std::isfinite(x); });
}

// Hairer-Norsett-Wanner starting step for an order-3 method.
double initial_step(const OdeRhs& rhs, double t0, std::span<const double> y0, std::span<const double> f0,
                    const Rk23Options& opt) {
    const std::size_t n = y0.size();
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = opt.atol + opt.rtol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;

    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    rhs(t0 + h0, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = opt.atol + opt.rtol * std::abs(y0[i]);
        d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const double h1 = (d1 <= 1e-15 && d2 <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                   : std::pow(0.01 / std::max(d1, d2), 1.0 / 3.0);
    return std::min(100.0 * h0, h1);
}

}  // namespace

std::vector<double> integrate_rk23(const OdeRhs& rhs, double t0, std::span<const double> y0_in, double dt,
                                   std::size_t n_out, const Rk23Options& opt, Rk23Stats* stats) {
    const std::size_t n = y0_in.size();
    std::vector<double> out(n_out * n);
    if (n_out == 0) return out;

    std::vector<double> y(y0_in.begin(), y0_in.end()), y_new(n), tmp(n), err(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n);
    Rk23Stats local;

    auto eval = [&](double t, std::span<const double> s, std::span<double> f) {
        rhs(t, s, f);
        ++local.evaluations;
    };

    std::copy(y.begin(), y.end(), out.begin());
    std::size_t next = 1;
    const double t_end = t0 + dt * static_cast<double>(n_out - 1);

    double t = t0;
    eval(t, y, k1);
    double h = initial_step(rhs, t0, y, k1, opt);
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    std::size_t steps = 0;
    while (next < n_out) {
        if (++steps > opt.max_steps) throw SimulationDiverged("RK23 exceeded the step budget");
        if (t_end - t <= 1e-12 * std::max(1.0, std::abs(t_end))) break;
        h = std::min(h, t_end - t);
        if (h < opt.min_step * std::max(1.0, std::abs(t))) {
            throw SimulationDiverged("RK23 step size collapsed at t=" + std::to_string(t));
        }

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        eval(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.75 * h * k2[i];
        eval(t + 0.75 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) {
            y_new[i] = y[i] + h * (2.0 / 9.0 * k1[i] + 1.0 / 3.0 * k2[i] + 4.0 / 9.0 * k3[i]);
        }
        const double t_new = t + h;
        eval(t_new, y_new, k4);
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = h * (-5.0 / 72.0 * k1[i] + 1.0 / 12.0 * k2[i] + 1.0 / 9.0 * k3[i] - 1.0 / 8.0 * k4[i]);
        }

        const bool finite = all_finite(y_new) && all_finite(k4);
        const double err_norm = finite ? rms_norm(err, y, y_new, opt) : INFINITY;
        if (!(err_norm <= 1.0)) {
            ++local.rejected;
            if (!finite && h <= opt.min_step * std::max(1.0, std::abs(t)) * 10.0) {
                throw SimulationDiverged("RK23 state became non-finite at t=" + std::to_string(t));
            }
            const double factor = finite ? std::max(0.2, 0.9 * std::pow(err_norm, -1.0 / 3.0)) : 0.2;
            h *= factor;
            continue;
        }
        ++local.accepted;

        // Dense output: cubic Hermite on [t, t_new] using the FSAL slopes.
        const bool last = t_new >= t_end;
        while (next < n_out) {
            const double t_out = t0 + dt * static_cast<double>(next);
            if (t_out > t_new && !last) break;
            const double theta = std::clamp((t_out - t) / h, 0.0, 1.0);
            const double h00 = (1.0 + 2.0 * theta) * (1.0 - theta) * (1.0 - theta);
            const double h10 = theta * (1.0 - theta) * (1.0 - theta);
            const double h01 = theta * theta * (3.0 - 2.0 * theta);
            const double h11 = theta * theta * (theta - 1.0);
            double* row = out.data() + next * n;
            for (std::size_t i = 0; i < n; ++i) {
                row[i] = h00 * y[i] + h10 * h * k1[i] + h01 * y_new[i] + h11 * h * k4[i];
            }
            ++next;
        }

        t = t_new;
        std::swap(y, y_new);
        std::swap(k1, k4);
        const double factor = err_norm == 0.0 ? 10.0 : std::min(10.0, 0.9 * std::pow(err_norm, -1.0 / 3.0));
        h *= std::max(0.2, factor);
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        if (last) break;
    }
    // Guard: any output point not yet written lies at t_end.
    for (; next < n_out; ++next) std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(next * n));

    if (stats) *stats = local;
    return out;
}

}  // namespace excursion::systems
