#include "logcap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "logcap/errors.hpp"

namespace logcap {

namespace {

GaussLegendreRule compute_rule(std::size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton on P_n with the standard asymptotic initial guess
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) {
                p1 = x;
            }
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n) {
    if (n == 0) throw input_error("gauss_legendre needs n >= 1");
    static std::map<std::size_t, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          std::size_t max_nodes) {
    double prev = integrate_gl(f, a, b, 32);
    for (std::size_t n = 64; n <= max_nodes; n *= 2) {
        const double cur = integrate_gl(f, a, b, n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw convergence_error("integrate_adaptive: node-doubling did not converge", {}, 0.0);
}

std::complex<double> integrate_line(
    const std::function<std::complex<double>(std::complex<double>)>& f, std::complex<double> z0,
    std::complex<double> z1, double tol, std::size_t max_nodes) {
    const std::complex<double> dir = z1 - z0;
    auto segment = [&](std::size_t n) {
        const auto& rule = gauss_legendre(n);
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const double t = 0.5 * (rule.nodes[i] + 1.0);
            sum += rule.weights[i] * f(z0 + t * dir);
        }
        return 0.5 * dir * sum;
    };
    std::complex<double> prev = segment(32);
    for (std::size_t n = 64; n <= max_nodes; n *= 2) {
        const std::complex<double> cur = segment(n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw convergence_error("integrate_line: node-doubling did not converge", {}, 0.0);
}

}  // namespace logcap
