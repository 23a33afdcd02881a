#pragma once

#include <cmath>
#include <utility>

namespace discrimlab {

// Golden-section maximization of f on [lo, hi]. Assumes f has a single peak
// on the interval; returns (argmax, value).
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double xtol,
                                             int max_iter = 200) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    double x = 0.5 * (a + b);
    double fx = f(x);
    if (fc > fx) { x = c; fx = fc; }
    if (fd > fx) { x = d; fx = fd; }
    // keep interval endpoints in play: the peak may sit on the boundary
    const double fa = f(lo), fb = f(hi);
    if (fa > fx) { x = lo; fx = fa; }
    if (fb > fx) { x = hi; fx = fb; }
    return {x, fx};
}

}  // namespace discrimlab
