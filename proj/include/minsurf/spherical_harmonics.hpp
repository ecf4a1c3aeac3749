// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minsurf/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace minsurf::harmonics {

/// Power-basis coefficients of the Legendre polynomial P_l, lowest degree first.
inline std::vector<double> legendre_coefficients(int l)
{
    if (l < 0) throw config_error("legendre_coefficients: negative degree");
    std::vector<double> prev{1.0};
    if (l == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (int k = 1; k < l; ++k) {
        // (k+1) P_{k+1} = (2k+1) z P_k - k P_{k-1}
        std::vector<double> next(k + 2, 0.0);
        for (int p = 0; p <= k; ++p) next[p + 1] += (2.0 * k + 1.0) * cur[p];
        for (int p = 0; p < k; ++p) next[p] -= k * prev[p];
        for (auto& c : next) c /= (k + 1.0);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline std::vector<double> differentiate(std::vector<double> const& poly, int times)
{
    std::vector<double> r = poly;
    for (int t = 0; t < times; ++t) {
        if (r.size() <= 1) return {0.0};
        std::vector<double> d(r.size() - 1);
        for (std::size_t p = 1; p < r.size(); ++p) d[p - 1] = static_cast<double>(p) * r[p];
        r = std::move(d);
    }
    return r;
}

template <typename T> T horner(std::vector<double> const& poly, T const& z)
{
    T acc = z * 0.0 + poly.back();
    for (std::size_t p = poly.size() - 1; p-- > 0;) acc = acc * z + poly[p];
    return acc;
}

/// (l-m)!/(l+m)! * (2 if m > 0), the squared weight that makes the degree-l basis sum of squares equal one
inline double squared_weight(int l, int m)
{
    double w = m == 0 ? 1.0 : 2.0;
    for (int k = l - m + 1; k <= l + m; ++k) w /= k;
    return w;
}

/**
    Real degree-l spherical harmonics evaluated at a point (x, y, z) of the unit sphere, ordered m = -l..l.

    Y_m = w_m * d^|m| P_l/dz^|m| (z) * Re (x + i y)^m   for m >= 0
    Y_m = w_m * d^|m| P_l/dz^|m| (z) * Im (x + i y)^|m| for m < 0

    No Condon-Shortley phase. The weights are scaled so that the sum of squares is identically 1 on the sphere
    (addition theorem), i.e. each Y_m is sqrt(4 pi / (2l + 1)) times the orthonormal harmonic.
*/
template <typename T> std::vector<T> real_basis(int l, T const& x, T const& y, T const& z)
{
    auto const pl = legendre_coefficients(l);
    std::vector<T> re, im;
    re.reserve(l + 1);
    im.reserve(l + 1);
    re.push_back(x * 0.0 + 1.0);
    im.push_back(x * 0.0);
    for (int m = 1; m <= l; ++m) {
        re.push_back(x * re[m - 1] - y * im[m - 1]);
        im.push_back(x * im[m - 1] + y * re[m - 1]);
    }
    std::vector<T> out(2 * l + 1, x * 0.0);
    for (int m = 0; m <= l; ++m) {
        double const w = std::sqrt(squared_weight(l, m));
        T const q = horner(differentiate(pl, m), z) * w;
        out[l + m] = q * re[m];
        if (m > 0) out[l - m] = q * im[m];
    }
    return out;
}

} // namespace minsurf::harmonics
