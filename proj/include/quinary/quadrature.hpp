#pragma once

#include <cstddef>
#include <vector>

namespace quinary::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n);

    /// Integral of f over [a, b].
    template <class F>
    auto integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        decltype(f(a)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return sum * half;
    }
};

/// Shared 20-point rule.
const GaussLegendre& gauss20();

}  // namespace quinary::quad
