#include "subgeom/tensors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace subgeom {

double FundamentalData::b_norm() const
{
    double s = 0.0;
    for (const Eigen::MatrixXd& m : b) {
        s += m.squaredNorm();
    }
    return std::sqrt(s);
}

double Tensor4::max_abs() const
{
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Christoffel christoffel(const Jet3& jet, const FrameData& frame, const AmbientModel& a)
{
    const int n = jet.n;
    Christoffel gamma(n, Eigen::MatrixXd::Zero(n, n));
    Eigen::VectorXd pairing(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                pairing[l] = inner(jet.second(i, j), jet.d1[l], a);
            }
            const Eigen::VectorXd g_k = frame.g_inv * pairing;
            for (int k = 0; k < n; ++k) {
                gamma[k](i, j) = gamma[k](j, i) = g_k[k];
            }
        }
    }
    return gamma;
}

SecondFundamentalForm second_fundamental_form(const Jet3& jet, const FrameData& frame, const AmbientModel& a)
{
    const int n = jet.n;
    const int p = frame.codim();
    SecondFundamentalForm sff;
    sff.H = Eigen::VectorXd::Zero(p);
    for (int sigma = 0; sigma < p; ++sigma) {
        Eigen::MatrixXd b(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                b(i, j) = b(j, i) = inner(jet.second(i, j), frame.normals[sigma], a);
            }
        }
        Eigen::MatrixXd shape = frame.g_inv * b;
        sff.H[sigma] = shape.trace() / n;
        sff.b.push_back(std::move(b));
        sff.shape_ops.push_back(std::move(shape));
    }
    return sff;
}

std::vector<Eigen::MatrixXd> normal_connection(const LocalSampler& sampler, std::span<const double> u,
                                               const FrameData& frame)
{
    const AmbientModel& a = sampler.ambient();
    const int p = frame.codim();
    std::vector<Eigen::MatrixXd> omega;
    for (int i = 0; i < sampler.n(); ++i) {
        Eigen::MatrixXd w(p, p);
        if (p > 1) {
            const FrameData plus = sampler.frame(sampler.jet(sampler.shifted(u, i, 1.0)));
            const FrameData minus = sampler.frame(sampler.jet(sampler.shifted(u, i, -1.0)));
            const double h2 = 2.0 * sampler.steps()[i];
            for (int sigma = 0; sigma < p; ++sigma) {
                const Eigen::VectorXd dn = (plus.normals[sigma] - minus.normals[sigma]) / h2;
                for (int tau = 0; tau < p; ++tau) {
                    w(tau, sigma) = inner(dn, frame.normals[tau], a);
                }
            }
            // The exact coefficients are antisymmetric; keep only that part.
            w = (0.5 * (w - w.transpose())).eval();
        } else {
            w.setZero();
        }
        omega.push_back(std::move(w));
    }
    return omega;
}

PointSample sample_point(const LocalSampler& sampler, std::span<const double> u)
{
    PointSample s;
    s.u.assign(u.begin(), u.end());
    s.jet = sampler.jet(u);
    s.frame = sampler.frame(s.jet);
    const AmbientModel& a = sampler.ambient();
    s.fundamental.gamma = christoffel(s.jet, s.frame, a);
    SecondFundamentalForm sff = second_fundamental_form(s.jet, s.frame, a);
    s.fundamental.b = std::move(sff.b);
    s.fundamental.shape_ops = std::move(sff.shape_ops);
    s.fundamental.H = std::move(sff.H);
    s.fundamental.omega = normal_connection(sampler, u, s.frame);
    return s;
}

namespace {

std::vector<PointSample> sample_neighbors(const LocalSampler& sampler, std::span<const double> u)
{
    std::vector<PointSample> out;
    for (int k = 0; k < sampler.n(); ++k) {
        out.push_back(sample_point(sampler, sampler.shifted(u, k, 1.0)));
        out.push_back(sample_point(sampler, sampler.shifted(u, k, -1.0)));
    }
    return out;
}

} // namespace

CovariantDerivativeB nabla_bar_b(const PointSample& centre, std::span<const PointSample> neighbors,
                                 std::span<const double> steps)
{
    const FundamentalData& f = centre.fundamental;
    const int n = centre.jet.n;
    const int p = static_cast<int>(f.b.size());
    CovariantDerivativeB out(p, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));
    for (int k = 0; k < n; ++k) {
        const FundamentalData& plus = neighbors[2 * k].fundamental;
        const FundamentalData& minus = neighbors[2 * k + 1].fundamental;
        for (int sigma = 0; sigma < p; ++sigma) {
            Eigen::MatrixXd t = (plus.b[sigma] - minus.b[sigma]) / (2.0 * steps[k]);
            for (int tau = 0; tau < p; ++tau) {
                t += f.omega[k](sigma, tau) * f.b[tau];
            }
            // Gamma_k(l, i) = Gamma^l_ki as an (l, i) matrix.
            Eigen::MatrixXd gk(n, n);
            for (int l = 0; l < n; ++l) {
                gk.row(l) = f.gamma[l].row(k);
            }
            const Eigen::MatrixXd lower = gk.transpose() * f.b[sigma];
            t -= lower + lower.transpose();
            out[sigma][k] = 0.5 * (t + t.transpose());
        }
    }
    return out;
}

CovariantDerivativeB nabla_bar_b(const LocalSampler& sampler, std::span<const double> u)
{
    const PointSample centre = sample_point(sampler, u);
    const std::vector<PointSample> nb = sample_neighbors(sampler, u);
    return nabla_bar_b(centre, nb, sampler.steps());
}

Eigen::MatrixXd orthonormal_tangent_basis(const Eigen::MatrixXd& g)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    return eig.operatorInverseSqrt();
}

Curvature intrinsic_curvature(const PointSample& centre, std::span<const PointSample> neighbors,
                              std::span<const double> steps)
{
    const int n = centre.jet.n;
    const Christoffel& gamma = centre.fundamental.gamma;
    // dgamma[i][l](j, k) = d_i Gamma^l_jk
    std::vector<Christoffel> dgamma(n);
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            dgamma[i].push_back((neighbors[2 * i].fundamental.gamma[l] - neighbors[2 * i + 1].fundamental.gamma[l]) /
                                (2.0 * steps[i]));
        }
    }
    Curvature out{Tensor4(n), Eigen::MatrixXd::Zero(n, n)};
    const Eigen::MatrixXd& g = centre.frame.g;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Eigen::VectorXd rm(n); // R(d_i, d_j) d_k in coordinates
                for (int l = 0; l < n; ++l) {
                    double v = dgamma[i][l](j, k) - dgamma[j][l](i, k);
                    for (int m = 0; m < n; ++m) {
                        v += gamma[m](j, k) * gamma[l](i, m) - gamma[m](i, k) * gamma[l](j, m);
                    }
                    rm[l] = v;
                }
                const Eigen::VectorXd lowered = g * rm;
                for (int l = 0; l < n; ++l) {
                    out.riemann(i, j, k, l) = lowered[l];
                }
            }
        }
    }
    const Eigen::MatrixXd e = orthonormal_tangent_basis(g);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int a = 0; a < n; ++a) {
                for (int i = 0; i < n; ++i) {
                    for (int l = 0; l < n; ++l) {
                        s += e(i, a) * e(l, a) * out.riemann(i, j, k, l);
                    }
                }
            }
            out.ricci(j, k) = s;
        }
    }
    out.ricci = (0.5 * (out.ricci + out.ricci.transpose())).eval();
    return out;
}

Curvature intrinsic_curvature(const LocalSampler& sampler, std::span<const double> u)
{
    const PointSample centre = sample_point(sampler, u);
    const std::vector<PointSample> nb = sample_neighbors(sampler, u);
    return intrinsic_curvature(centre, nb, sampler.steps());
}

std::vector<Eigen::MatrixXd> normal_curvature(const PointSample& centre, std::span<const PointSample> neighbors,
                                              std::span<const double> steps)
{
    const int n = centre.jet.n;
    const std::vector<Eigen::MatrixXd>& w = centre.fundamental.omega;
    std::vector<Eigen::MatrixXd> out(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Eigen::MatrixXd di_wj =
                (neighbors[2 * i].fundamental.omega[j] - neighbors[2 * i + 1].fundamental.omega[j]) / (2.0 * steps[i]);
            const Eigen::MatrixXd dj_wi =
                (neighbors[2 * j].fundamental.omega[i] - neighbors[2 * j + 1].fundamental.omega[i]) / (2.0 * steps[j]);
            out[i * n + j] = di_wj - dj_wi + w[i] * w[j] - w[j] * w[i];
        }
    }
    return out;
}

std::vector<Eigen::MatrixXd> normal_curvature(const LocalSampler& sampler, std::span<const double> u)
{
    const PointSample centre = sample_point(sampler, u);
    const std::vector<PointSample> nb = sample_neighbors(sampler, u);
    return normal_curvature(centre, nb, sampler.steps());
}

PointGeometry evaluate_point(const LocalSampler& sampler, std::span<const double> u)
{
    PointGeometry pg;
    pg.centre = sample_point(sampler, u);
    pg.neighbors = sample_neighbors(sampler, u);
    const std::span<const double> h = sampler.steps();
    pg.derived.nabla_bar_b = nabla_bar_b(pg.centre, pg.neighbors, h);
    Curvature curv = intrinsic_curvature(pg.centre, pg.neighbors, h);
    pg.derived.riemann = std::move(curv.riemann);
    pg.derived.ricci = std::move(curv.ricci);
    pg.derived.normal_curv = normal_curvature(pg.centre, pg.neighbors, h);
    return pg;
}

double frobenius(const CovariantDerivativeB& t)
{
    double s = 0.0;
    for (const auto& per_sigma : t) {
        for (const Eigen::MatrixXd& m : per_sigma) {
            s += m.squaredNorm();
        }
    }
    return std::sqrt(s);
}

} // namespace subgeom
