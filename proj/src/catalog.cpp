#include "subgeom/catalog.hpp"

#include "subgeom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

namespace subgeom {

namespace {

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;
using std::sqrt;

// Coefficients of a random trigonometric perturbation
//   f(u, v) = sum_m amp_m sin(fu_m u + fv_m v + phase_m).
struct Wave {
    double amp, fu, fv, phase;
};

std::vector<Wave> random_waves(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    // Portable mapping to [0, 1); std::uniform_real_distribution is not.
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Wave> waves;
    for (int m = 0; m < count; ++m) {
        waves.push_back({0.5 + 0.5 * uniform(), 0.5 + 1.5 * uniform(), 0.5 + 1.5 * uniform(),
                         2.0 * std::numbers::pi * uniform()});
    }
    return waves;
}

template <class T>
T wave_sum(const std::vector<Wave>& waves, const T& u, const T& v)
{
    T s(0.0);
    for (const Wave& w : waves) {
        s += w.amp * sin(w.fu * u + w.fv * v + T(w.phase));
    }
    return s;
}

template <class T>
std::vector<T> rotate(const Eigen::MatrixXd& q, const std::vector<T>& y)
{
    std::vector<T> out(y.size(), T(0.0));
    for (std::size_t r = 0; r < y.size(); ++r) {
        for (std::size_t c = 0; c < y.size(); ++c) {
            out[r] += q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * y[c];
        }
    }
    return out;
}

struct Builder {
    std::string id;
    std::string description;
    double c;
    int n;
    int ambient_dim;
    std::vector<ParamSpec> params;
    std::function<CatalogEntry(const ParamMap&)> build;
};

CatalogEntry entry(const Builder& b, ImmersionChart chart, double c, int ambient_dim,
                   std::optional<RecurrenceStatus> status, std::optional<int> dim_n1)
{
    CatalogEntry e{b.id, b.description, std::move(chart), AmbientModel(c, ambient_dim), status, dim_n1,
                   false, {}};
    e.hypersurface = ambient_dim - e.chart.n == 1;
    return e;
}

const std::vector<Builder>& builders()
{
    static const std::vector<Builder> all = [] {
        std::vector<Builder> v;

        v.push_back({"plane", "plane (u, v, 0) in E^3; totally geodesic", 0.0, 2, 3, {}, nullptr});
        v.back().build = [b = v.back()](const ParamMap&) {
            auto chart = make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{x[0], x[1], T(0.0)};
            });
            chart.product_adapted = true;
            return entry(b, std::move(chart), 0.0, 3, RecurrenceStatus::b_zero, 0);
        };

        auto parabola_params = std::vector<ParamSpec>{
            {"a", 1.0, 0.1, 10.0, "parabola coefficient: profile y = a u^2 / 2"}};

        v.push_back({"cylinder-parabola",
                     "parabolic cylinder (u, a u^2/2, v_2..v_n) in E^{n+1}; recurrent, not parallel", 0.0, 2, 3,
                     parabola_params, nullptr});
        v.back().params.push_back({"dim", 2.0, 2.0, 3.0, "intrinsic dimension n"});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double a = p.at("a");
            const int n = static_cast<int>(p.at("dim"));
            std::vector<Interval> dom{{-1.5, 1.5}};
            for (int i = 1; i < n; ++i) {
                dom.push_back({0.0, 1.0});
            }
            auto chart = make_chart(n, dom, [a, n](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                std::vector<T> r{x[0], 0.5 * a * x[0] * x[0]};
                for (int i = 1; i < n; ++i) {
                    r.push_back(x[i]);
                }
                return r;
            });
            chart.product_adapted = true;
            return entry(b, std::move(chart), 0.0, n + 1, RecurrenceStatus::recurrent_nonparallel, 1);
        };

        for (int dim : {4, 5}) {
            v.push_back({"cylinder-parabola-e" + std::to_string(dim),
                         "parabolic cylinder rotated into E^" + std::to_string(dim) + " by a fixed orthogonal map",
                         0.0, 2, dim, parabola_params, nullptr});
            v.back().build = [b = v.back(), dim](const ParamMap& p) {
                const double a = p.at("a");
                const Eigen::MatrixXd q = fixed_rotation(dim);
                auto chart = make_chart(2, {{-1.5, 1.5}, {0.0, 1.0}}, [a, q, dim](const auto& x) {
                    using T = std::decay_t<decltype(x[0])>;
                    std::vector<T> y(dim, T(0.0));
                    y[0] = x[0];
                    y[1] = 0.5 * a * x[0] * x[0];
                    y[2] = x[1];
                    return rotate(q, y);
                });
                chart.product_adapted = true;
                return entry(b, std::move(chart), 0.0, dim, RecurrenceStatus::recurrent_nonparallel, 1);
            };
        }

        v.push_back({"cylinder-circular", "circular cylinder (R cos u, R sin u, v) in E^3; parallel", 0.0, 2, 3,
                     {{"radius", 1.0, 0.05, 100.0, "cylinder radius R"}}, nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double r = p.at("radius");
            auto chart = make_chart(2, {{0.0, 2.0}, {0.0, 1.0}}, [r](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{r * cos(x[0]), r * sin(x[0]), x[1]};
            });
            chart.product_adapted = true;
            return entry(b, std::move(chart), 0.0, 3, RecurrenceStatus::parallel, 1);
        };

        v.push_back({"sphere-round", "round sphere S^2(R) in E^3, latitude-longitude chart; parallel", 0.0, 2, 3,
                     {{"radius", 1.0, 0.05, 100.0, "sphere radius R"}}, nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double r = p.at("radius");
            auto chart = make_chart(2, {{-1.0, 1.0}, {0.0, 2.0}}, [r](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{r * cos(x[0]) * cos(x[1]), r * cos(x[0]) * sin(x[1]), r * sin(x[0])};
            });
            return entry(b, std::move(chart), 0.0, 3, RecurrenceStatus::parallel, 1);
        };

        v.push_back({"ellipsoid", "ellipsoid with semi-axes (a, b, c), latitude in [0.2, 1.2]; not recurrent", 0.0,
                     2, 3,
                     {{"a", 1.0, 0.1, 10.0, "semi-axis along x"},
                      {"b", 1.0, 0.1, 10.0, "semi-axis along y"},
                      {"c", 1.5, 0.1, 10.0, "semi-axis along z"}},
                     nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double ax = p.at("a"), by = p.at("b"), cz = p.at("c");
            auto chart = make_chart(2, {{0.2, 1.2}, {0.0, 2.0}}, [ax, by, cz](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{ax * cos(x[0]) * cos(x[1]), by * cos(x[0]) * sin(x[1]), cz * sin(x[0])};
            });
            return entry(b, std::move(chart), 0.0, 3, RecurrenceStatus::not_recurrent, 1);
        };

        v.push_back({"clifford-torus", "Clifford torus in the unit sphere S^3 (c = 1); parallel", 1.0, 2, 3, {},
                     nullptr});
        v.back().build = [b = v.back()](const ParamMap&) {
            auto chart = make_chart(2, {{0.0, 2.0}, {0.0, 2.0}}, [](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                const double s = std::numbers::sqrt2 / 2.0;
                return std::vector<T>{s * cos(x[0]), s * sin(x[0]), s * cos(x[1]), s * sin(x[1])};
            });
            return entry(b, std::move(chart), 1.0, 3, RecurrenceStatus::parallel, 1);
        };

        v.push_back({"sphere-small-in-S3", "small umbilic sphere of angular radius rho in S^3 (c = 1); parallel", 1.0,
                     2, 3, {{"rho", 0.8, 0.05, 1.5, "angular radius (< pi/2)"}}, nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double rho = p.at("rho");
            auto chart = make_chart(2, {{-1.0, 1.0}, {0.0, 2.0}}, [rho](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                const double cr = std::cos(rho), sr = std::sin(rho);
                return std::vector<T>{T(cr), sr * cos(x[0]) * cos(x[1]), sr * cos(x[0]) * sin(x[1]),
                                      sr * sin(x[0])};
            });
            return entry(b, std::move(chart), 1.0, 3, RecurrenceStatus::parallel, 1);
        };

        v.push_back({"hyperbolic-geodesic-plane", "totally geodesic H^2 in the hyperboloid model of H^3 (c = -1)",
                     -1.0, 2, 3, {}, nullptr});
        v.back().build = [b = v.back()](const ParamMap&) {
            auto chart = make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{sqrt(1.0 + x[0] * x[0] + x[1] * x[1]), x[0], x[1], T(0.0)};
            });
            return entry(b, std::move(chart), -1.0, 3, RecurrenceStatus::b_zero, 0);
        };

        v.push_back({"hyperbolic-equidistant",
                     "equidistant surface at distance t from a geodesic plane in H^3 (c = -1); umbilic, parallel",
                     -1.0, 2, 3, {{"t", 0.5, 0.05, 3.0, "distance from the geodesic plane"}}, nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const double t = p.at("t");
            auto chart = make_chart(2, {{-1.0, 1.0}, {-1.0, 1.0}}, [t](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                const double ch = std::cosh(t);
                return std::vector<T>{ch * sqrt(1.0 + x[0] * x[0] + x[1] * x[1]), ch * x[0], ch * x[1],
                                      T(std::sinh(t))};
            });
            return entry(b, std::move(chart), -1.0, 3, RecurrenceStatus::parallel, 1);
        };

        auto perturbed_params = std::vector<ParamSpec>{
            {"seed", 1.0, 0.0, 1e9, "perturbation seed"}, {"eps", 0.1, 0.0, 0.3, "perturbation amplitude"}};

        v.push_back({"perturbed-torus-E4", "flat torus in E^4 plus a random smooth perturbation; generic", 0.0, 2, 4,
                     perturbed_params, nullptr});
        v.back().build = [b = v.back()](const ParamMap& p) {
            const auto seed = static_cast<std::uint64_t>(p.at("seed"));
            const double eps = p.at("eps");
            std::vector<std::vector<Wave>> waves;
            for (int k = 0; k < 4; ++k) {
                waves.push_back(random_waves(seed * 4 + k, 3));
            }
            auto chart = make_chart(2, {{0.0, 2.0}, {0.0, 2.0}}, [waves, eps](const auto& x) {
                using T = std::decay_t<decltype(x[0])>;
                return std::vector<T>{cos(x[0]) + eps * wave_sum(waves[0], x[0], x[1]),
                                      sin(x[0]) + eps * wave_sum(waves[1], x[0], x[1]),
                                      cos(x[1]) + eps * wave_sum(waves[2], x[0], x[1]),
                                      sin(x[1]) + eps * wave_sum(waves[3], x[0], x[1])};
            });
            return entry(b, std::move(chart), 0.0, 4, std::nullopt, std::nullopt);
        };

        for (double c : {1.0, -1.0}) {
            const bool sphere = c > 0.0;
            v.push_back({sphere ? "perturbed-graph-S4" : "perturbed-graph-H4",
                         std::string("perturbed graph surface in the ") +
                             (sphere ? "unit sphere S^4 (c = 1)" : "hyperboloid model of H^4 (c = -1)") +
                             "; generic",
                         c, 2, 4, perturbed_params, nullptr});
            v.back().build = [b = v.back(), c](const ParamMap& p) {
                const auto seed = static_cast<std::uint64_t>(p.at("seed"));
                const double eps = p.at("eps");
                const std::vector<Wave> w1 = random_waves(seed * 2 + 101, 3);
                const std::vector<Wave> w2 = random_waves(seed * 2 + 102, 3);
                auto chart = make_chart(2, {{-0.5, 0.5}, {-0.5, 0.5}}, [w1, w2, eps, c](const auto& x) {
                    using T = std::decay_t<decltype(x[0])>;
                    const std::vector<T> w{x[0], x[1], eps * wave_sum(w1, x[0], x[1]),
                                           eps * wave_sum(w2, x[0], x[1])};
                    T ww(0.0);
                    for (const T& wk : w) {
                        ww += wk * wk;
                    }
                    std::vector<T> r{c > 0.0 ? sqrt(1.0 - ww) : sqrt(1.0 + ww)};
                    r.insert(r.end(), w.begin(), w.end());
                    return r;
                });
                return entry(b, std::move(chart), c, 4, std::nullopt, std::nullopt);
            };
        }
        return v;
    }();
    return all;
}

} // namespace

Eigen::MatrixXd fixed_rotation(int dim)
{
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double angle = 0.3 + 0.1 * (i + 2 * j);
            Eigen::MatrixXd giv = Eigen::MatrixXd::Identity(dim, dim);
            giv(i, i) = giv(j, j) = std::cos(angle);
            giv(i, j) = -std::sin(angle);
            giv(j, i) = std::sin(angle);
            q = giv * q;
        }
    }
    return q;
}

CatalogEntry instantiate(const std::string& id, const ParamMap& params)
{
    for (const Builder& b : builders()) {
        if (b.id != id) {
            continue;
        }
        ParamMap resolved;
        for (const ParamSpec& spec : b.params) {
            resolved[spec.name] = spec.default_value;
        }
        for (const auto& [name, value] : params) {
            auto it = std::find_if(b.params.begin(), b.params.end(), [&](const ParamSpec& s) { return s.name == name; });
            if (it == b.params.end()) {
                throw InputError("entry '" + id + "' has no parameter '" + name + "'");
            }
            if (!(value >= it->lo && value <= it->hi)) {
                throw InputError("parameter '" + name + "' = " + std::to_string(value) + " outside [" +
                                 std::to_string(it->lo) + ", " + std::to_string(it->hi) + "]");
            }
            resolved[name] = value;
        }
        if (resolved.count("dim") && resolved["dim"] != std::floor(resolved["dim"])) {
            throw InputError("parameter 'dim' must be an integer");
        }
        CatalogEntry e = b.build(resolved);
        e.params = std::move(resolved);
        return e;
    }
    throw InputError("unknown catalog entry '" + id + "'");
}

std::vector<CatalogListing> list_entries()
{
    std::vector<CatalogListing> out;
    for (const Builder& b : builders()) {
        out.push_back({b.id, b.description, b.c, b.n, b.ambient_dim, b.params});
    }
    return out;
}

} // namespace subgeom
