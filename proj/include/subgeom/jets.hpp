#pragma once

#include "subgeom/taylor.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace subgeom {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

/// Value and partial derivatives up to order 3 of a chart at one parameter
/// point. Derivative tensors are stored flat and fully symmetric.
struct Jet3 {
    int n = 0;
    Eigen::VectorXd value;
    std::vector<Eigen::VectorXd> d1; // n
    std::vector<Eigen::VectorXd> d2; // n*n, row-major
    std::vector<Eigen::VectorXd> d3; // n*n*n, row-major
    double step_used = 0.0;          // 0 for exact jets

    const Eigen::VectorXd& first(int i) const { return d1[i]; }
    const Eigen::VectorXd& second(int i, int j) const { return d2[i * n + j]; }
    const Eigen::VectorXd& third(int i, int j, int k) const { return d3[(i * n + j) * n + k]; }

    static Jet3 zeros(int n, Eigen::Index dim);
};

/// Parametrised immersion into the flat model of an ambient space.
struct ImmersionChart {
    using EvalFn = std::function<Eigen::VectorXd(std::span<const double>)>;
    using JetFn = std::function<Jet3(std::span<const double>)>;

    int n = 0;
    std::vector<Interval> domain;
    EvalFn eval;
    JetFn exact_jet; // empty when no closed-form derivatives are known
    // Coordinates split as (u^1 | u^2..u^n) with a product metric.
    bool product_adapted = false;

    bool has_exact_jet() const { return static_cast<bool>(exact_jet); }
};

/// Builds a chart from a generic callable `f(const std::vector<T>&) ->
/// std::vector<T>` that works for T = double and T = Taylor3. The exact jet
/// is obtained by forward-mode differentiation through Taylor3.
template <class F>
ImmersionChart make_chart(int n, std::vector<Interval> domain, F f)
{
    ImmersionChart chart;
    chart.n = n;
    chart.domain = std::move(domain);
    chart.eval = [f](std::span<const double> u) {
        std::vector<double> x(u.begin(), u.end());
        const std::vector<double> r = f(x);
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())));
    };
    chart.exact_jet = [f, n](std::span<const double> u) {
        std::vector<Taylor3> x;
        x.reserve(n);
        for (int i = 0; i < n; ++i) {
            x.push_back(Taylor3::variable(n, i, u[i]));
        }
        const std::vector<Taylor3> r = f(x);
        Jet3 jet = Jet3::zeros(n, static_cast<Eigen::Index>(r.size()));
        for (std::size_t a = 0; a < r.size(); ++a) {
            jet.value[a] = r[a].value();
            for (int i = 0; i < n; ++i) {
                jet.d1[i][a] = r[a].d(i);
                for (int j = 0; j < n; ++j) {
                    jet.d2[i * n + j][a] = r[a].d(i, j);
                    for (int k = 0; k < n; ++k) {
                        jet.d3[(i * n + j) * n + k][a] = r[a].d(i, j, k);
                    }
                }
            }
        }
        return jet;
    };
    return chart;
}

/// Default per-axis difference step: 1e-3 of the axis width, clamped to
/// [1e-5, 1e-2].
std::vector<double> default_steps(const ImmersionChart& chart);

/// Evaluates the chart with output validation (finite values).
Eigen::VectorXd evaluate(const ImmersionChart& chart, std::span<const double> u);

/// Third-order jet at `u`. Uses the exact jet when available and
/// `use_exact` is set; otherwise centred differences with per-axis `steps`
/// (default_steps when empty). The difference stencil must fit in the domain.
Jet3 eval_jet3(const ImmersionChart& chart, std::span<const double> u,
               std::span<const double> steps = {}, bool use_exact = true);

/// Centred finite-difference jet regardless of exact-jet availability.
Jet3 fd_jet3(const ImmersionChart& chart, std::span<const double> u, std::span<const double> steps);

} // namespace subgeom
