#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace rb {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

/**
 * Standard Nelder–Mead simplex minimizer (reflection 1, expansion 2,
 * contraction 0.5, shrink 0.5). Convergence when the value spread across the
 * simplex falls below `tol`.
 */
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double step = 0.1,
                                    double tol = 1e-10, int max_iter = 2000) {
    const std::size_t n = start.size();
    NelderMeadResult result;
    if (n == 0) {
        result.x = start;
        result.value = f(start);
        result.converged = true;
        result.evaluations = 1;
        return result;
    }

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);
    result.evaluations = static_cast<int>(n) + 1;

    for (int iter = 0; iter < max_iter; ++iter) {
        // Order vertices best..worst.
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        if (std::abs(values[worst] - values[best]) <=
            tol * (1.0 + std::abs(values[best]))) {
            result.x = simplex[best];
            result.value = values[best];
            result.converged = true;
            return result;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            return p;
        };

        const auto reflected = blend(-1.0);
        const double fr = f(reflected);
        ++result.evaluations;

        if (fr < values[order[0]]) {
            const auto expanded = blend(-2.0);
            const double fe = f(expanded);
            ++result.evaluations;
            simplex[worst] = fe < fr ? expanded : reflected;
            values[worst] = std::min(fe, fr);
        } else if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            const auto contracted = blend(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            ++result.evaluations;
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] =
                            simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    values[i] = f(simplex[i]);
                    ++result.evaluations;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    result.x = simplex[best];
    result.value = values[best];
    result.converged = false;
    return result;
}

} // namespace rb
