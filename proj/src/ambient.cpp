#include "subgeom/ambient.hpp"

#include "subgeom/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subgeom {

AmbientModel::AmbientModel(double c, int ambient_dim)
    : c_(c), ambient_dim_(ambient_dim)
{
    if (!std::isfinite(c)) {
        throw InputError("ambient curvature must be finite");
    }
    if (ambient_dim < 3) {
        throw InputError("ambient dimension must be at least 3, got " + std::to_string(ambient_dim));
    }
    model_dim_ = (c == 0.0) ? ambient_dim : ambient_dim + 1;
    signature_.assign(model_dim_, 1);
    if (c < 0.0) {
        signature_[0] = -1;
    }
}

double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const AmbientModel& a)
{
    const auto dim = static_cast<Eigen::Index>(a.model_dim());
    if (u.size() != dim || v.size() != dim) {
        throw InputError("inner: vector length " + std::to_string(u.size()) + "/" +
                         std::to_string(v.size()) + " does not match model dimension " +
                         std::to_string(dim));
    }
    double s = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        s += a.signature()[k] * u[k] * v[k];
    }
    return s;
}

double on_model_residual(const Eigen::VectorXd& x, const AmbientModel& a)
{
    if (a.flat()) {
        return 0.0;
    }
    return std::abs(inner(x, x, a) - 1.0 / a.c());
}

Eigen::VectorXd radial_normal(const Eigen::VectorXd& x, const AmbientModel& a, double tolerance)
{
    if (a.flat()) {
        throw std::logic_error("radial_normal: flat ambient has no model normal");
    }
    const double off = on_model_residual(x, a);
    if (off > tolerance) {
        throw PreconditionError("radial_normal: point is off the model by " + std::to_string(off));
    }
    const double s = std::sqrt(std::abs(a.c()));
    return a.c() > 0.0 ? Eigen::VectorXd(-s * x) : Eigen::VectorXd(s * x);
}

} // namespace subgeom
