#include "subgeom/catalog.hpp"
#include "subgeom/errors.hpp"
#include "subgeom/jets.hpp"
#include "subgeom/taylor.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace subgeom;
using subgeom::testing::vec;

namespace {

double max_d2_error(const Jet3& a, const Jet3& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.d2.size(); ++k) {
        e = std::max(e, (a.d2[k] - b.d2[k]).cwiseAbs().maxCoeff());
    }
    return e;
}

double max_d3_error(const Jet3& a, const Jet3& b)
{
    double e = 0.0;
    for (std::size_t k = 0; k < a.d3.size(); ++k) {
        e = std::max(e, (a.d3[k] - b.d3[k]).cwiseAbs().maxCoeff());
    }
    return e;
}

ImmersionChart planar_curve_chart()
{
    // u -> (u, u^2/2), a one-parameter chart used only to exercise the jets.
    return make_chart(1, {{-3.0, 3.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{x[0], 0.5 * x[0] * x[0]};
    });
}

} // namespace

TEST_CASE("Taylor3 propagates derivatives of products and compositions")
{
    // f(x, y) = sin(x) * y^2 at (0.7, 1.3)
    const double x0 = 0.7, y0 = 1.3;
    const Taylor3 x = Taylor3::variable(2, 0, x0);
    const Taylor3 y = Taylor3::variable(2, 1, y0);
    const Taylor3 f = sin(x) * y * y;
    CHECK(f.value() == doctest::Approx(std::sin(x0) * y0 * y0));
    CHECK(f.d(0) == doctest::Approx(std::cos(x0) * y0 * y0));
    CHECK(f.d(1) == doctest::Approx(2 * std::sin(x0) * y0));
    CHECK(f.d(0, 1) == doctest::Approx(2 * std::cos(x0) * y0));
    CHECK(f.d(1, 1) == doctest::Approx(2 * std::sin(x0)));
    CHECK(f.d(0, 0, 1) == doctest::Approx(-2 * std::sin(x0) * y0));
    CHECK(f.d(0, 1, 0) == doctest::Approx(-2 * std::sin(x0) * y0));
    CHECK(f.d(0, 0, 0) == doctest::Approx(-std::cos(x0) * y0 * y0));
    CHECK(f.d(1, 1, 1) == doctest::Approx(0.0));

    // g(x) = sqrt(1 + x^2) / x, third derivative checked against the closed form.
    const Taylor3 t = Taylor3::variable(1, 0, x0);
    const Taylor3 g = sqrt(1.0 + t * t) / t;
    // g'(x) = -1 / (x^2 sqrt(1+x^2)), g''(x) = (3x^2 + 2) / (x^3 (1+x^2)^{3/2}),
    // g'''(x) = -3 (4x^4 + 5x^2 + 2) / (x^4 (1+x^2)^{5/2})
    const double s = 1.0 + x0 * x0;
    CHECK(g.d(0) == doctest::Approx(-1.0 / (x0 * x0 * std::sqrt(s))));
    CHECK(g.d(0, 0) == doctest::Approx((3 * x0 * x0 + 2) / (std::pow(x0, 3) * std::pow(s, 1.5))));
    CHECK(g.d(0, 0, 0) ==
          doctest::Approx(-3 * (4 * std::pow(x0, 4) + 5 * x0 * x0 + 2) / (std::pow(x0, 4) * std::pow(s, 2.5))));

    const Taylor3 h = exp(t) * log(t) - cosh(t) + sinh(t);
    // (e^x ln x)''' = e^x (ln x + 3/x - 3/x^2 + 2/x^3);  -cosh''' + sinh''' = -sinh + cosh
    CHECK(h.d(0, 0, 0) == doctest::Approx(std::exp(x0) * (std::log(x0) + 3 / x0 - 3 / (x0 * x0) + 2 / std::pow(x0, 3)) -
                                          std::sinh(x0) + std::cosh(x0)));
}

TEST_CASE("eval_jet3 examples")
{
    SUBCASE("planar curve u -> (u, u^2/2) at u = 1, exact and by differences")
    {
        const ImmersionChart chart = planar_curve_chart();
        const std::vector<double> u{1.0};
        for (bool exact : {true, false}) {
            const Jet3 j = eval_jet3(chart, u, {}, exact);
            CHECK(subgeom::testing::max_abs_diff(j.d1[0], vec({1, 1})) < 1e-9);
            CHECK(subgeom::testing::max_abs_diff(j.second(0, 0), vec({0, 1})) < 1e-7);
            CHECK(subgeom::testing::max_abs_diff(j.third(0, 0, 0), vec({0, 0})) < 1e-4);
        }
    }
    SUBCASE("circular cylinder at the origin")
    {
        const ImmersionChart chart = make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [](const auto& x) {
            using T = std::decay_t<decltype(x[0])>;
            using std::cos;
            using std::sin;
            return std::vector<T>{cos(x[0]), sin(x[0]), x[1]};
        });
        const std::vector<double> u{0.0, 0.0};
        const Jet3 j = eval_jet3(chart, u);
        CHECK(subgeom::testing::max_abs_diff(j.d1[0], vec({0, 1, 0})) < 1e-15);
        CHECK(subgeom::testing::max_abs_diff(j.second(0, 0), vec({-1, 0, 0})) < 1e-15);
        const Jet3 fd = fd_jet3(chart, u, default_steps(chart));
        CHECK(subgeom::testing::max_abs_diff(fd.d1[0], vec({0, 1, 0})) < 1e-6);
        CHECK(subgeom::testing::max_abs_diff(fd.second(0, 0), vec({-1, 0, 0})) < 1e-6);
    }
}

// Truncation error of the centred second difference is h^2/12 |d^4 r|; with
// the default step (1e-3 of the axis width) that is a few 1e-7 on unit-size
// charts and ~1e-5 on the steepest perturbed graph.
TEST_CASE("difference jets agree with exact jets on the catalog")
{
    for (const CatalogListing& l : list_entries()) {
        CAPTURE(l.id);
        const CatalogEntry e = instantiate(l.id);
        const std::vector<double> h = default_steps(e.chart);
        for (const std::vector<double>& u : grid_points(e.chart, std::vector<int>(e.chart.n, 3), h)) {
            const Jet3 exact = eval_jet3(e.chart, u);
            const Jet3 fd = fd_jet3(e.chart, u, h);
            CHECK(max_d2_error(exact, fd) <= 1e-5);
            CHECK(max_d3_error(exact, fd) <= 1e-3);
        }
    }
}

TEST_CASE("difference jets are symmetric")
{
    const CatalogEntry e = instantiate("perturbed-torus-E4");
    const std::vector<double> u{0.8, 1.1};
    const Jet3 j = fd_jet3(e.chart, u, default_steps(e.chart));
    const int n = j.n;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            CHECK(j.second(i, k) == j.second(k, i));
            for (int l = 0; l < n; ++l) {
                CHECK((j.third(i, k, l) - j.third(l, i, k)).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((j.third(i, k, l) - j.third(k, i, l)).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("second differences converge at second order on a non-polynomial chart")
{
    const CatalogEntry e = instantiate("sphere-round");
    const std::vector<double> u{0.3, 0.9};
    const Jet3 exact = eval_jet3(e.chart, u);
    const double coarse = max_d2_error(exact, fd_jet3(e.chart, u, std::vector<double>{2e-3, 2e-3}));
    const double fine = max_d2_error(exact, fd_jet3(e.chart, u, std::vector<double>{1e-3, 1e-3}));
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("jet errors")
{
    const ImmersionChart chart = planar_curve_chart();
    // Stencil of reach 2h = 0.2 does not fit at u = 2.95.
    CHECK_THROWS_AS(fd_jet3(chart, std::vector<double>{2.95}, std::vector<double>{0.1}), DomainError);
    CHECK_THROWS_AS(eval_jet3(chart, std::vector<double>{4.0}), DomainError);
    CHECK_THROWS_AS(eval_jet3(chart, std::vector<double>{0.0, 0.0}), InputError);

    const ImmersionChart bad = make_chart(1, {{-1.0, 1.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        using std::log;
        return std::vector<T>{x[0], log(x[0])};
    });
    CHECK_THROWS_AS(fd_jet3(bad, std::vector<double>{0.0}, std::vector<double>{1e-3}), EvaluationError);
}

TEST_CASE("default step is 1e-3 of the axis width, clamped")
{
    ImmersionChart chart = planar_curve_chart();
    CHECK(default_steps(chart)[0] == doctest::Approx(6e-3));
    chart.domain[0] = {0.0, 1e-4};
    CHECK(default_steps(chart)[0] == doctest::Approx(1e-5));
    chart.domain[0] = {0.0, 1e3};
    CHECK(default_steps(chart)[0] == doctest::Approx(1e-2));
}
