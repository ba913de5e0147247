#pragma once

#include "pointlab/core.hpp"

namespace pointlab {

/// 7-point stencil for L = -Laplacian: returns -(sum of second central differences) / h^2.
template <class F>
auto fd_laplacian3(F&& u, const Point3& x, double h)
{
    using R = decltype(u(x));
    const R centre = u(x);
    R acc{};
    for (std::size_t i = 0; i < 3; ++i) {
        Point3 plus = x;
        Point3 minus = x;
        plus[i] += h;
        minus[i] -= h;
        acc += u(plus) + u(minus) - 2.0 * centre;
    }
    return R(-acc / (h * h));
}

/// Second central difference in a scalar variable.
template <class F>
auto fd_second_derivative(F&& g, double t, double h)
{
    return (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h);
}

template <class F>
auto fd_first_derivative(F&& g, double t, double h)
{
    return (g(t + h) - g(t - h)) / (2.0 * h);
}

}  // namespace pointlab
