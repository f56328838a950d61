#include "subgeom/frames.hpp"

#include "subgeom/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace subgeom {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kOnModelTolerance = 1e-9;
// Relative size below which a projected seed counts as dependent.
constexpr double kSeedFloor = 1e-6;

void check_dims(const Jet3& jet, const AmbientModel& a)
{
    if (jet.value.size() != a.model_dim()) {
        throw InputError("chart output has " + std::to_string(jet.value.size()) +
                         " coordinates, model dimension is " + std::to_string(a.model_dim()));
    }
    if (jet.n >= a.ambient_dim()) {
        throw InputError("submanifold dimension must be below the ambient dimension");
    }
}

// Removes the components along span{d_i r} and, for curved models, along x.
class NormalProjector {
public:
    NormalProjector(const Jet3& jet, const AmbientModel& a, const Eigen::MatrixXd& g_inv)
        : jet_(jet), a_(a), g_inv_(g_inv)
    {
        if (!a.flat()) {
            radial_ = radial_normal(jet.value, a, kOnModelTolerance);
        }
    }

    Eigen::VectorXd apply(Eigen::VectorXd v) const
    {
        const int n = jet_.n;
        Eigen::VectorXd pairing(n);
        for (int i = 0; i < n; ++i) {
            pairing[i] = inner(jet_.d1[i], v, a_);
        }
        const Eigen::VectorXd coeff = g_inv_ * pairing;
        for (int i = 0; i < n; ++i) {
            v -= coeff[i] * jet_.d1[i];
        }
        if (radial_) {
            v -= inner(*radial_, v, a_) / inner(*radial_, *radial_, a_) * *radial_;
        }
        return v;
    }

    const std::optional<Eigen::VectorXd>& radial() const { return radial_; }

private:
    const Jet3& jet_;
    const AmbientModel& a_;
    const Eigen::MatrixXd& g_inv_;
    std::optional<Eigen::VectorXd> radial_;
};

double norm(const Eigen::VectorXd& v, const AmbientModel& a)
{
    // Normal vectors are spacelike in every model, so this is a true norm.
    return std::sqrt(std::max(inner(v, v, a), 0.0));
}

} // namespace

InducedMetric induced_metric(const Jet3& jet, const AmbientModel& a)
{
    check_dims(jet, a);
    const int n = jet.n;
    InducedMetric m;
    m.g.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            m.g(i, j) = m.g(j, i) = inner(jet.d1[i], jet.d1[j], a);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kMaxCondition) {
        throw DegeneracyError("induced metric is degenerate or indefinite (eigenvalues " + std::to_string(lo) +
                              ", " + std::to_string(hi) + ")");
    }
    m.condition = hi / lo;
    m.g_inv = m.g.llt().solve(Eigen::MatrixXd::Identity(n, n));
    m.g_inv = 0.5 * (m.g_inv + m.g_inv.transpose()).eval();
    return m;
}

std::vector<Eigen::VectorXd> standard_seed_basis(const AmbientModel& a)
{
    std::vector<Eigen::VectorXd> basis;
    for (int k = 0; k < a.model_dim(); ++k) {
        basis.push_back(Eigen::VectorXd::Unit(a.model_dim(), k));
    }
    return basis;
}

std::vector<Eigen::VectorXd> select_gauge(const Jet3& jet, const AmbientModel& a,
                                          std::span<const Eigen::VectorXd> seed_basis)
{
    const InducedMetric metric = induced_metric(jet, a);
    const NormalProjector project(jet, a, metric.g_inv);
    const int p = a.ambient_dim() - jet.n;

    std::vector<Eigen::VectorXd> residual;
    std::vector<double> scale;
    for (const Eigen::VectorXd& s : seed_basis) {
        if (s.size() != a.model_dim()) {
            throw InputError("seed vector length does not match the model dimension");
        }
        residual.push_back(project.apply(s));
        scale.push_back(s.cwiseAbs().maxCoeff());
    }

    std::vector<Eigen::VectorXd> gauge;
    std::vector<bool> used(seed_basis.size(), false);
    for (int sigma = 0; sigma < p; ++sigma) {
        int best = -1;
        double best_norm = 0.0;
        for (std::size_t k = 0; k < residual.size(); ++k) {
            if (used[k]) {
                continue;
            }
            const double r = norm(residual[k], a) / std::max(scale[k], 1e-300);
            if (r > best_norm) {
                best_norm = r;
                best = static_cast<int>(k);
            }
        }
        if (best < 0 || best_norm < kSeedFloor) {
            throw FrameError("seed basis does not span the normal space (found " + std::to_string(sigma) +
                             " of " + std::to_string(p) + " normals); supply a different seed basis");
        }
        used[best] = true;
        gauge.push_back(seed_basis[best]);
        const Eigen::VectorXd e = residual[best] / norm(residual[best], a);
        for (std::size_t k = 0; k < residual.size(); ++k) {
            if (!used[k]) {
                residual[k] -= inner(e, residual[k], a) * e;
            }
        }
    }
    return gauge;
}

FrameData frame_in_gauge(const Jet3& jet, const AmbientModel& a, std::span<const Eigen::VectorXd> gauge)
{
    const InducedMetric metric = induced_metric(jet, a);
    const NormalProjector project(jet, a, metric.g_inv);
    const int p = a.ambient_dim() - jet.n;
    if (static_cast<int>(gauge.size()) != p) {
        throw FrameError("gauge has " + std::to_string(gauge.size()) + " seeds, normal space has dimension " +
                         std::to_string(p));
    }
    FrameData frame;
    frame.g = metric.g;
    frame.g_inv = metric.g_inv;
    frame.condition = metric.condition;
    frame.radial = project.radial();
    for (const Eigen::VectorXd& seed : gauge) {
        Eigen::VectorXd v = project.apply(seed);
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass) {
            for (const Eigen::VectorXd& e : frame.normals) {
                v -= inner(e, v, a) * e;
            }
        }
        const double len = norm(v, a);
        if (len < kSeedFloor * std::max(seed.cwiseAbs().maxCoeff(), 1e-300)) {
            throw FrameError("seed basis is degenerate at this point; supply a different seed basis");
        }
        frame.normals.push_back(v / len);
    }
    return frame;
}

FrameData normal_frame(const Jet3& jet, const AmbientModel& a, std::span<const Eigen::VectorXd> seed_basis)
{
    const std::vector<Eigen::VectorXd> gauge = select_gauge(jet, a, seed_basis);
    return frame_in_gauge(jet, a, gauge);
}

LocalSampler::LocalSampler(const ImmersionChart& chart, const AmbientModel& a, std::span<const double> base,
                           const SampleSettings& settings)
    : chart_(&chart),
      ambient_(&a),
      steps_(settings.steps.empty() ? default_steps(chart) : settings.steps),
      use_exact_(settings.use_exact_jet),
      base_(base.begin(), base.end())
{
    if (static_cast<int>(steps_.size()) != chart.n) {
        throw InputError("step vector length does not match the chart dimension");
    }
    const std::vector<Eigen::VectorXd> seeds =
        settings.seed_basis.empty() ? standard_seed_basis(a) : settings.seed_basis;
    gauge_ = select_gauge(jet(base_), a, seeds);
}

Jet3 LocalSampler::jet(std::span<const double> u) const
{
    return eval_jet3(*chart_, u, steps_, use_exact_);
}

FrameData LocalSampler::frame(const Jet3& jet) const
{
    return frame_in_gauge(jet, *ambient_, gauge_);
}

std::vector<double> LocalSampler::shifted(std::span<const double> u, int axis, double s) const
{
    std::vector<double> p(u.begin(), u.end());
    p[axis] += s * steps_[axis];
    return p;
}

std::vector<Eigen::VectorXd> frame_derivative(const LocalSampler& sampler, std::span<const double> u, int sigma)
{
    const AmbientModel& a = sampler.ambient();
    std::vector<Eigen::VectorXd> out;
    for (int i = 0; i < sampler.n(); ++i) {
        const FrameData plus = sampler.frame(sampler.jet(sampler.shifted(u, i, 1.0)));
        const FrameData minus = sampler.frame(sampler.jet(sampler.shifted(u, i, -1.0)));
        const Eigen::VectorXd& np = plus.normals.at(sigma);
        const Eigen::VectorXd& nm = minus.normals.at(sigma);
        if (inner(np, nm, a) < 0.0) {
            throw GaugeError("normal " + std::to_string(sigma) + " flips sign across the stencil along axis " +
                             std::to_string(i));
        }
        out.push_back((np - nm) / (2.0 * sampler.steps()[i]));
    }
    return out;
}

} // namespace subgeom
