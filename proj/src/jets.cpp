#include "subgeom/jets.hpp"

#include "subgeom/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace subgeom {

Jet3 Jet3::zeros(int n, Eigen::Index dim)
{
    Jet3 jet;
    jet.n = n;
    jet.value = Eigen::VectorXd::Zero(dim);
    jet.d1.assign(n, Eigen::VectorXd::Zero(dim));
    jet.d2.assign(n * n, Eigen::VectorXd::Zero(dim));
    jet.d3.assign(n * n * n, Eigen::VectorXd::Zero(dim));
    return jet;
}

std::vector<double> default_steps(const ImmersionChart& chart)
{
    std::vector<double> steps;
    steps.reserve(chart.domain.size());
    for (const Interval& axis : chart.domain) {
        steps.push_back(std::clamp(1e-3 * axis.width(), 1e-5, 1e-2));
    }
    return steps;
}

Eigen::VectorXd evaluate(const ImmersionChart& chart, std::span<const double> u)
{
    Eigen::VectorXd x = chart.eval(u);
    if (!x.allFinite()) {
        throw EvaluationError("chart returned a non-finite value");
    }
    return x;
}

namespace {

void check_point(const ImmersionChart& chart, std::span<const double> u, std::span<const double> margin)
{
    if (static_cast<int>(u.size()) != chart.n) {
        throw InputError("parameter point has " + std::to_string(u.size()) + " coordinates, chart has " +
                         std::to_string(chart.n));
    }
    for (int i = 0; i < chart.n; ++i) {
        const double m = margin.empty() ? 0.0 : margin[i];
        if (u[i] - m < chart.domain[i].lo || u[i] + m > chart.domain[i].hi) {
            throw DomainError("stencil around u[" + std::to_string(i) + "] = " + std::to_string(u[i]) +
                              " leaves the chart domain");
        }
    }
}

// Second-derivative block at `u` from centred differences.
std::vector<Eigen::VectorXd> second_differences(const ImmersionChart& chart, std::vector<double> u,
                                                std::span<const double> h, const Eigen::VectorXd& centre)
{
    const int n = chart.n;
    std::vector<Eigen::VectorXd> d2(n * n);
    auto at = [&](int i, double si, int j, double sj) {
        std::vector<double> p = u;
        p[i] += si * h[i];
        p[j] += sj * h[j];
        return evaluate(chart, p);
    };
    for (int i = 0; i < n; ++i) {
        std::vector<double> p = u, m = u;
        p[i] += h[i];
        m[i] -= h[i];
        d2[i * n + i] = (evaluate(chart, p) - 2.0 * centre + evaluate(chart, m)) / (h[i] * h[i]);
        for (int j = i + 1; j < n; ++j) {
            Eigen::VectorXd mixed =
                (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) / (4.0 * h[i] * h[j]);
            d2[i * n + j] = mixed;
            d2[j * n + i] = mixed;
        }
    }
    return d2;
}

} // namespace

Jet3 fd_jet3(const ImmersionChart& chart, std::span<const double> u, std::span<const double> steps)
{
    const int n = chart.n;
    std::vector<double> h(steps.begin(), steps.end());
    if (h.empty()) {
        h = default_steps(chart);
    }
    std::vector<double> reach(n);
    std::transform(h.begin(), h.end(), reach.begin(), [](double s) { return 2.0 * s; });
    check_point(chart, u, reach);

    const std::vector<double> base(u.begin(), u.end());
    const Eigen::VectorXd centre = evaluate(chart, base);
    Jet3 jet = Jet3::zeros(n, centre.size());
    jet.value = centre;
    jet.step_used = *std::max_element(h.begin(), h.end());

    std::vector<std::vector<Eigen::VectorXd>> d2_plus(n), d2_minus(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> p = base, m = base;
        p[k] += h[k];
        m[k] -= h[k];
        const Eigen::VectorXd fp = evaluate(chart, p);
        const Eigen::VectorXd fm = evaluate(chart, m);
        jet.d1[k] = (fp - fm) / (2.0 * h[k]);
        d2_plus[k] = second_differences(chart, p, h, fp);
        d2_minus[k] = second_differences(chart, m, h, fm);
    }
    jet.d2 = second_differences(chart, base, h, centre);

    // Nested difference of the d2 block along k, then averaged over the
    // permutations of (i, j, k).
    std::vector<Eigen::VectorXd> raw(n * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                raw[(i * n + j) * n + k] = (d2_plus[k][i * n + j] - d2_minus[k][i * n + j]) / (2.0 * h[k]);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const std::array<std::array<int, 3>, 6> perms{{{i, j, k}, {i, k, j}, {j, i, k},
                                                               {j, k, i}, {k, i, j}, {k, j, i}}};
                Eigen::VectorXd sum = Eigen::VectorXd::Zero(centre.size());
                for (const auto& p : perms) {
                    sum += raw[(p[0] * n + p[1]) * n + p[2]];
                }
                jet.d3[(i * n + j) * n + k] = sum / 6.0;
            }
        }
    }
    return jet;
}

Jet3 eval_jet3(const ImmersionChart& chart, std::span<const double> u, std::span<const double> steps,
               bool use_exact)
{
    if (use_exact && chart.has_exact_jet()) {
        check_point(chart, u, {});
        Jet3 jet = chart.exact_jet(u);
        if (!jet.value.allFinite()) {
            throw EvaluationError("exact jet returned a non-finite value");
        }
        return jet;
    }
    return fd_jet3(chart, u, steps);
}

} // namespace subgeom
