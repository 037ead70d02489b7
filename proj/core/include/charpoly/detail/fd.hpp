#pragma once

#include <array>
#include <functional>

namespace charpoly::detail {

// f, f', f'', f''' at t: five-point central differences, Richardson-extrapolated
// for the first two derivatives.
inline std::array<double, 4> central_derivatives(const std::function<double(double)>& f, double t, double h) {
    auto d12 = [&](double hh, double& d1, double& d2, double& d3, double f0) {
        const double fp1 = f(t + hh), fm1 = f(t - hh);
        const double fp2 = f(t + 2 * hh), fm2 = f(t - 2 * hh);
        d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * hh);
        d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * hh * hh);
        d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * hh * hh * hh);
    };
    const double f0 = f(t);
    double a1, a2, a3, b1, b2, b3;
    d12(h, a1, a2, a3, f0);
    d12(0.5 * h, b1, b2, b3, f0);
    return {f0, (16 * b1 - a1) / 15, (16 * b2 - a2) / 15, (4 * b3 - a3) / 3};
}

}  // namespace charpoly::detail
