#pragma once

#include <cmath>
#include <functional>

namespace dsq {

struct ScalarSearchResult {
    double param = 0.0;
    double score = -1.0;
    int evaluations = 0;
};

/// Maximize a scalar score over [lo, hi]: a coarse grid locates the best cell, then golden-section
/// refinement runs inside the neighbouring cells. Equal scores keep the smaller parameter, so the
/// result is reproducible. Scores of invalid parameters should be negative.
template <class Score>
ScalarSearchResult maximize_scalar(Score&& score, double lo, double hi, int grid, int golden_iters,
                                   double xtol = 1e-12) {
    ScalarSearchResult best;
    auto consider = [&](double x, double s) {
        ++best.evaluations;
        if (s > best.score || (s == best.score && x < best.param)) {
            best.param = x;
            best.score = s;
        }
        return s;
    };

    grid = std::max(grid, 2);
    const double step = (hi - lo) / (grid - 1);
    best.param = lo;
    for (int i = 0; i < grid; ++i) {
        const double x = (i == grid - 1) ? hi : lo + i * step;
        consider(x, score(x));
    }

    double a = std::max(lo, best.param - step);
    double b = std::min(hi, best.param + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = consider(c, score(c));
    double fd = consider(d, score(d));
    for (int it = 0; it < golden_iters && (b - a) > xtol; ++it) {
        // On a tie (typically both points invalid) move toward the best point seen so far.
        const bool go_left = (fc == fd) ? (best.param <= d) : (fc > fd);
        if (go_left) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = consider(c, score(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = consider(d, score(d));
        }
    }
    return best;
}

}  // namespace dsq
