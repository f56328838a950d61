#pragma once

#include <Eigen/Core>

#include <vector>

namespace subgeom {

/// Constant-curvature space M^{N}(c) represented through its flat model.
///
/// c = 0: Euclidean E^N itself.
/// c > 0: the sphere of radius 1/sqrt(c) in E^{N+1}.
/// c < 0: the upper sheet of the hyperboloid <x,x> = 1/c in Minkowski space
///        R^{1,N}, time coordinate first.
///
/// The regime is derived from the sign of c; there is no separate switch.
class AmbientModel {
public:
    AmbientModel(double c, int ambient_dim);

    static AmbientModel euclidean(int dim) { return AmbientModel(0.0, dim); }

    double c() const { return c_; }
    int ambient_dim() const { return ambient_dim_; }
    int model_dim() const { return model_dim_; }
    const std::vector<int>& signature() const { return signature_; }
    bool flat() const { return c_ == 0.0; }

private:
    double c_;
    int ambient_dim_;
    int model_dim_;
    std::vector<int> signature_;
};

/// Signature-aware bilinear form of the flat model.
double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const AmbientModel& a);

/// |<x,x> - 1/c| for curved models, 0 for flat space.
double on_model_residual(const Eigen::VectorXd& x, const AmbientModel& a);

/// Unit normal of the model hypersurface at x (-sqrt(c) x for spheres,
/// sqrt(-c) x for hyperboloids). Throws std::logic_error for c = 0.
Eigen::VectorXd radial_normal(const Eigen::VectorXd& x, const AmbientModel& a,
                              double tolerance = 1e-9);

} // namespace subgeom
