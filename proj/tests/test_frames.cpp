#include "subgeom/catalog.hpp"
#include "subgeom/errors.hpp"
#include "subgeom/frames.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace subgeom;
using subgeom::testing::Gen;
using subgeom::testing::max_abs_diff;
using subgeom::testing::vec;

namespace {

ImmersionChart circular_cylinder()
{
    return make_chart(2, {{0.0, 2.0}, {0.0, 1.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{cos(x[0]), sin(x[0]), x[1]};
    });
}

ImmersionChart parabolic_cylinder()
{
    return make_chart(2, {{-1.5, 1.5}, {0.0, 1.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{x[0], 0.5 * x[0] * x[0], x[1]};
    });
}

ImmersionChart plane()
{
    return make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{x[0], x[1], T(0.0)};
    });
}

ImmersionChart unit_sphere()
{
    return make_chart(2, {{-1.0, 1.0}, {0.0, 3.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{cos(x[0]) * cos(x[1]), cos(x[0]) * sin(x[1]), sin(x[0])};
    });
}

Jet3 jet_at(const ImmersionChart& chart, std::vector<double> u)
{
    return eval_jet3(chart, u);
}

double orthonormality_residual(const FrameData& f, const AmbientModel& a)
{
    double worst = 0.0;
    for (int s = 0; s < f.codim(); ++s) {
        for (int t = 0; t < f.codim(); ++t) {
            worst = std::max(worst, std::abs(inner(f.normals[s], f.normals[t], a) - (s == t ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double tangency_residual(const FrameData& f, const Jet3& jet, const AmbientModel& a)
{
    double worst = 0.0;
    for (const auto& nrm : f.normals) {
        for (const auto& t : jet.d1) {
            worst = std::max(worst, std::abs(inner(nrm, t, a)));
        }
    }
    return worst;
}

} // namespace

TEST_CASE("induced metric examples")
{
    const AmbientModel e3 = AmbientModel::euclidean(3);

    const InducedMetric cyl = induced_metric(jet_at(circular_cylinder(), {0.7, 0.4}), e3);
    CHECK(max_abs_diff(cyl.g, Eigen::MatrixXd::Identity(2, 2)) <= 1e-14);

    const InducedMetric par = induced_metric(jet_at(parabolic_cylinder(), {1.0, 0.5}), e3);
    Eigen::MatrixXd expected(2, 2);
    expected << 2, 0, 0, 1;
    CHECK(max_abs_diff(par.g, expected) <= 1e-14);
    CHECK(max_abs_diff(par.g * par.g_inv, Eigen::MatrixXd::Identity(2, 2)) <= 1e-10);
    CHECK(par.condition == doctest::Approx(2.0));

    const InducedMetric sph = induced_metric(jet_at(unit_sphere(), {0.0, 1.1}), e3);
    CHECK(max_abs_diff(sph.g, Eigen::MatrixXd::Identity(2, 2)) <= 1e-14);

    // Away from the equator the longitude direction shrinks by cos(lat).
    const InducedMetric sph2 = induced_metric(jet_at(unit_sphere(), {0.6, 1.1}), e3);
    CHECK(sph2.g(1, 1) == doctest::Approx(std::cos(0.6) * std::cos(0.6)));
    CHECK(sph2.g(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("induced metric rejects degenerate immersions")
{
    const auto folded = make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return std::vector<T>{x[0] + x[1], x[0] + x[1], T(0.0)};
    });
    CHECK_THROWS_AS(induced_metric(jet_at(folded, {0.1, 0.2}), AmbientModel::euclidean(3)), DegeneracyError);

    // Wrong model dimension for the chart output.
    CHECK_THROWS_AS(induced_metric(jet_at(plane(), {0.1, 0.2}), AmbientModel::euclidean(4)), InputError);
}

TEST_CASE("normal frame examples")
{
    const AmbientModel e3 = AmbientModel::euclidean(3);
    const auto seeds = standard_seed_basis(e3);

    const FrameData pl = normal_frame(jet_at(plane(), {0.3, -0.2}), e3, seeds);
    REQUIRE(pl.codim() == 1);
    CHECK(max_abs_diff(pl.normals[0], vec({0, 0, 1})) <= 1e-15);
    CHECK_FALSE(pl.radial.has_value());

    // Point (1, 0, 0) with tangents along y and z.
    const FrameData sp = normal_frame(jet_at(unit_sphere(), {0.0, 0.0}), e3, seeds);
    CHECK(max_abs_diff(sp.normals[0], vec({1, 0, 0})) <= 1e-14);

    // Clifford torus in S^3: n = (cos u, sin u, -cos v, -sin v) / sqrt(2) up to sign.
    const CatalogEntry cl = instantiate("clifford-torus");
    for (const auto& uv : {std::vector<double>{0.3, 1.2}, std::vector<double>{1.7, 0.4}}) {
        const Jet3 jet = eval_jet3(cl.chart, uv);
        const FrameData f = normal_frame(jet, cl.ambient, standard_seed_basis(cl.ambient));
        REQUIRE(f.codim() == 1);
        const Eigen::VectorXd hand =
            vec({std::cos(uv[0]), std::sin(uv[0]), -std::cos(uv[1]), -std::sin(uv[1])}) / std::sqrt(2.0);
        const double align = inner(f.normals[0], hand, cl.ambient);
        CHECK(std::abs(align) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(max_abs_diff(f.normals[0], align > 0 ? hand : Eigen::VectorXd(-hand)) <= 1e-12);
        CHECK(inner(f.normals[0], f.normals[0], cl.ambient) == doctest::Approx(1.0));
        CHECK(std::abs(inner(f.normals[0], jet.value, cl.ambient)) <= 1e-12);
        REQUIRE(f.radial.has_value());
    }
}

TEST_CASE("normal frame is deterministic and positive along its seed")
{
    const CatalogEntry e = instantiate("perturbed-torus-E4");
    const auto seeds = standard_seed_basis(e.ambient);
    const Jet3 jet = eval_jet3(e.chart, std::vector<double>{1.0, 2.0});
    const auto gauge = select_gauge(jet, e.ambient, seeds);
    const FrameData a = frame_in_gauge(jet, e.ambient, gauge);
    const FrameData b = normal_frame(jet, e.ambient, seeds);
    REQUIRE(a.codim() == 2);
    for (int s = 0; s < 2; ++s) {
        CHECK(a.normals[s] == b.normals[s]);
        CHECK(inner(a.normals[s], gauge[s], e.ambient) > 0.0);
    }
}

TEST_CASE("frame invariants hold over the catalog")
{
    Gen gen(7);
    for (const auto& listing : list_entries()) {
        CAPTURE(listing.id);
        const CatalogEntry e = instantiate(listing.id);
        const auto seeds = standard_seed_basis(e.ambient);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> u;
            for (const auto& iv : e.chart.domain) {
                u.push_back(gen.uniform(iv.lo, iv.hi));
            }
            const Jet3 jet = eval_jet3(e.chart, u);
            const FrameData f = normal_frame(jet, e.ambient, seeds);
            CHECK(f.codim() == e.ambient.ambient_dim() - e.chart.n);
            CHECK(orthonormality_residual(f, e.ambient) <= 1e-10);
            CHECK(tangency_residual(f, jet, e.ambient) <= 1e-10);
            CHECK(max_abs_diff(f.g * f.g_inv, Eigen::MatrixXd::Identity(e.chart.n, e.chart.n)) <= 1e-10);
            if (!e.ambient.flat()) {
                REQUIRE(f.radial.has_value());
                for (const auto& nrm : f.normals) {
                    CHECK(std::abs(inner(nrm, *f.radial, e.ambient)) <= 1e-10);
                }
                for (const auto& t : jet.d1) {
                    CHECK(std::abs(inner(t, *f.radial, e.ambient)) <= 1e-8);
                }
            }
        }
    }
}

TEST_CASE("seed basis that misses the normal space is rejected")
{
    const AmbientModel e3 = AmbientModel::euclidean(3);
    const Jet3 jet = jet_at(plane(), {0.1, 0.1});
    const std::vector<Eigen::VectorXd> tangential{vec({1, 0, 0}), vec({0, 1, 0})};
    CHECK_THROWS_AS(normal_frame(jet, e3, tangential), FrameError);
    try {
        normal_frame(jet, e3, tangential);
    } catch (const FrameError& err) {
        CHECK(std::string(err.what()).find("seed basis") != std::string::npos);
    }
}

TEST_CASE("frame derivative examples")
{
    const AmbientModel e3 = AmbientModel::euclidean(3);

    const auto pl = plane();
    const std::vector<double> u0{0.2, -0.3};
    const LocalSampler ps(pl, e3, u0);
    for (const auto& d : frame_derivative(ps, u0, 0)) {
        CHECK(d.cwiseAbs().maxCoeff() <= 1e-12);
    }

    // Unit sphere, seeded so the normal is the position vector: d_i n = d_i r.
    const auto sp = unit_sphere();
    const std::vector<double> u1{0.4, 0.7};
    const LocalSampler ss(sp, e3, u1);
    const Jet3 jet = ss.jet(u1);
    const FrameData f = ss.frame(jet);
    const double orient = f.normals[0].dot(jet.value) > 0 ? 1.0 : -1.0;
    const auto dn = frame_derivative(ss, u1, 0);
    // Centred difference error is h^2/6 |r'''| with h up to 3e-3.
    for (int i = 0; i < 2; ++i) {
        CHECK(max_abs_diff(dn[i], orient * jet.d1[i]) <= 2e-6);
    }

    // Circular cylinder, normal +-(cos u, sin u, 0).
    const auto cyl = circular_cylinder();
    const std::vector<double> u2{0.9, 0.5};
    const LocalSampler cs(cyl, e3, u2);
    const FrameData cf = cs.frame(cs.jet(u2));
    const double s = cf.normals[0][0] * std::cos(u2[0]) + cf.normals[0][1] * std::sin(u2[0]) > 0 ? 1.0 : -1.0;
    const auto dc = frame_derivative(cs, u2, 0);
    CHECK(max_abs_diff(dc[0], s * vec({-std::sin(u2[0]), std::cos(u2[0]), 0})) <= 1e-6);
    CHECK(dc[1].cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("sign flip across the stencil raises a gauge error")
{
    // With e1 as the only seed the normal's sign follows the sign of x,
    // which changes at longitude pi/2.
    const AmbientModel e3 = AmbientModel::euclidean(3);
    const auto sp = unit_sphere();
    const double h = default_steps(sp)[1];
    const std::vector<double> u{0.3, std::numbers::pi / 2 + h / 2};
    SampleSettings settings;
    settings.seed_basis = {vec({1, 0, 0})};
    const LocalSampler sampler(sp, e3, u, settings);
    CHECK_THROWS_AS(frame_derivative(sampler, u, 0), GaugeError);
}
