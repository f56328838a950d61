#pragma once

#include "subgeom/ambient.hpp"
#include "subgeom/jets.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace subgeom {

struct InducedMetric {
    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inv;
    double condition = 1.0;
};

/// Tangent metric, its inverse and an orthonormal frame of the normal
/// bundle of F^n inside M (the model's radial direction is excluded).
struct FrameData {
    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inv;
    double condition = 1.0;
    std::vector<Eigen::VectorXd> normals;
    std::optional<Eigen::VectorXd> radial;

    int codim() const { return static_cast<int>(normals.size()); }
};

/// g_ij = <d_i r, d_j r>. Throws DegeneracyError when g is not positive
/// definite or its condition number exceeds 1e12.
InducedMetric induced_metric(const Jet3& jet, const AmbientModel& a);

/// Standard axes of the flat model.
std::vector<Eigen::VectorXd> standard_seed_basis(const AmbientModel& a);

/// Chooses p seeds out of `seed_basis` that best span the normal space at
/// the jet's point: repeatedly picks the seed with the largest component
/// left after removing tangents, the radial direction and the seeds already
/// chosen (ties go to the earlier seed). The returned ordered list defines a
/// gauge that is smooth in a neighbourhood of the point.
std::vector<Eigen::VectorXd> select_gauge(const Jet3& jet, const AmbientModel& a,
                                          std::span<const Eigen::VectorXd> seed_basis);

/// Gram-Schmidt of the ordered `gauge` seeds after projecting out the
/// tangent space and the radial direction. Each normal has a positive
/// component along the seed it came from. Throws FrameError when a seed is
/// (numerically) dependent on the previous ones.
FrameData frame_in_gauge(const Jet3& jet, const AmbientModel& a, std::span<const Eigen::VectorXd> gauge);

/// Gauge selection followed by frame_in_gauge.
FrameData normal_frame(const Jet3& jet, const AmbientModel& a, std::span<const Eigen::VectorXd> seed_basis);

/// Per-axis steps, exact-or-FD jet policy and seed basis shared by all
/// samples taken around one base point.
struct SampleSettings {
    std::vector<double> steps;               // empty: default_steps
    bool use_exact_jet = true;
    std::vector<Eigen::VectorXd> seed_basis; // empty: standard axes
};

/// Evaluates jets and frames of one chart in a fixed local gauge. The gauge
/// is chosen once at the base point and reused at every stencil point.
class LocalSampler {
public:
    LocalSampler(const ImmersionChart& chart, const AmbientModel& a, std::span<const double> base,
                 const SampleSettings& settings = {});
    // The sampler keeps references; temporaries would dangle.
    LocalSampler(ImmersionChart&&, const AmbientModel&, std::span<const double>, const SampleSettings& = {}) = delete;
    LocalSampler(const ImmersionChart&, AmbientModel&&, std::span<const double>, const SampleSettings& = {}) = delete;

    const ImmersionChart& chart() const { return *chart_; }
    const AmbientModel& ambient() const { return *ambient_; }
    const std::vector<double>& steps() const { return steps_; }
    const std::vector<double>& base() const { return base_; }
    const std::vector<Eigen::VectorXd>& gauge() const { return gauge_; }
    int n() const { return chart_->n; }
    int codim() const { return static_cast<int>(gauge_.size()); }

    Jet3 jet(std::span<const double> u) const;
    FrameData frame(const Jet3& jet) const;

    /// u + s * steps[axis] * e_axis
    std::vector<double> shifted(std::span<const double> u, int axis, double s) const;

private:
    const ImmersionChart* chart_;
    const AmbientModel* ambient_;
    std::vector<double> steps_;
    bool use_exact_;
    std::vector<double> base_;
    std::vector<Eigen::VectorXd> gauge_;
};

/// d_i n_sigma for every direction i, by centred differences of the frame
/// field in the sampler's gauge. Throws GaugeError if n_sigma changes sign
/// across the stencil.
std::vector<Eigen::VectorXd> frame_derivative(const LocalSampler& sampler, std::span<const double> u, int sigma);

} // namespace subgeom
