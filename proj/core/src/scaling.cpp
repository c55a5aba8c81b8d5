#include "excursion/scaling.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "excursion/errors.hpp"

namespace excursion {

std::optional<IndexRange> select_scaling_range(const ExcursionProfile& profile,
                                               const ScalingRangeRule& rule) {
    const double lo_k = 1.0 / rule.kappa;
    const double hi_k = rule.kappa;
    auto in_band = [&](std::size_t i) {
        const double k = profile.k_ratio[i];
        return profile.n_emp[i] >= rule.min_count && k >= lo_k && k <= hi_k;
    };
    auto mean_abs_log_k = [&](IndexRange r) {
        double s = 0.0;
        for (std::size_t i = r.lo; i <= r.hi; ++i) s += std::abs(std::log(profile.k_ratio[i]));
        return s / static_cast<double>(r.length());
    };

    std::optional<IndexRange> best;
    double best_score = 0.0;
    std::size_t i = 0;
    const std::size_t n = profile.size();
    while (i < n) {
        if (!in_band(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && in_band(j + 1)) ++j;
        const IndexRange run{i, j};
        if (run.length() >= rule.min_run) {
            const double score = mean_abs_log_k(run);
            // Strict comparisons keep the earliest run on exact ties.
            if (!best || run.length() > best->length() ||
                (run.length() == best->length() && score < best_score)) {
                best = run;
                best_score = score;
            }
        }
        i = j + 1;
    }
    return best;
}

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("line fit needs two equally sized samples of at least 2 points");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw InputError("line fit needs distinct abscissae");
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    // A flat response is fitted exactly by the horizontal line.
    fit.r_squared = syy > 0.0 ? std::min(1.0, (sxy * sxy) / (sxx * syy)) : 1.0;
    fit.n_points = x.size();
    fit.range_lo = 0;
    fit.range_hi = x.size() - 1;
    return fit;
}

SlopeFit fit_slope(const ExcursionProfile& profile, IndexRange range) {
    if (range.hi < range.lo || range.hi >= profile.size()) {
        throw InputError("fit range outside the grid");
    }
    if (range.length() < 4) {
        throw InputError("fit range needs at least 4 points");
    }
    std::vector<double> log_eps, log_n;
    log_eps.reserve(range.length());
    log_n.reserve(range.length());
    for (std::size_t i = range.lo; i <= range.hi; ++i) {
        if (profile.n_emp[i] <= 0) {
            throw InputError("zero excursion count at grid index " + std::to_string(i));
        }
        log_eps.push_back(std::log(profile.grid[i]));
        log_n.push_back(std::log(static_cast<double>(profile.n_emp[i])));
    }
    SlopeFit fit = fit_line(log_eps, log_n);
    fit.range_lo = range.lo;
    fit.range_hi = range.hi;
    return fit;
}

}  // namespace excursion
