#pragma once

#include "subgeom/frames.hpp"

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace subgeom {

/// gamma[k](i, j) = Gamma^k_ij of the induced Levi-Civita connection.
using Christoffel = std::vector<Eigen::MatrixXd>;

struct SecondFundamentalForm {
    std::vector<Eigen::MatrixXd> b;          // b[sigma](i, j) = <d_i d_j r, n_sigma>
    std::vector<Eigen::MatrixXd> shape_ops;  // A_sigma = g^{-1} b[sigma]
    Eigen::VectorXd H;                       // H^sigma = trace(A_sigma) / n
};

/// Per-point tensors that need at most one level of differencing.
struct FundamentalData {
    Christoffel gamma;
    std::vector<Eigen::MatrixXd> b;
    std::vector<Eigen::MatrixXd> shape_ops;
    Eigen::VectorXd H;
    // omega[i](tau, sigma) = <d_i n_sigma, n_tau>; antisymmetric in (tau, sigma).
    std::vector<Eigen::MatrixXd> omega;

    double b_norm() const;
    double mean_curvature_norm() const { return H.norm(); }
};

/// Dense rank-4 array over tangent indices.
class Tensor4 {
public:
    explicit Tensor4(int n = 0) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k, int l) { return data_[((i * n_ + j) * n_ + k) * n_ + l]; }
    double operator()(int i, int j, int k, int l) const { return data_[((i * n_ + j) * n_ + k) * n_ + l]; }
    double max_abs() const;

private:
    int n_;
    std::vector<double> data_;
};

/// nabla_b[sigma][k](i, j) = (nabla-bar_k b)^sigma_ij
using CovariantDerivativeB = std::vector<std::vector<Eigen::MatrixXd>>;

struct Curvature {
    Tensor4 riemann;       // R_ijkl = g(R(d_i, d_j) d_k, d_l)
    Eigen::MatrixXd ricci; // S_jk = sum_a g(R(e_a, d_j) d_k, e_a)
};

struct DerivedTensors {
    CovariantDerivativeB nabla_bar_b;
    Tensor4 riemann;
    Eigen::MatrixXd ricci;
    // normal_curv[i * n + j](tau, sigma) = <R_perp(d_i, d_j) n_sigma, n_tau>
    std::vector<Eigen::MatrixXd> normal_curv;
};

/// Jet, frame and first-level tensors at one parameter point.
struct PointSample {
    std::vector<double> u;
    Jet3 jet;
    FrameData frame;
    FundamentalData fundamental;
};

/// Everything known at a point: its own sample, the samples at u +- h e_k
/// (neighbors[2k] is +, neighbors[2k+1] is -) and the derived tensors.
struct PointGeometry {
    PointSample centre;
    std::vector<PointSample> neighbors;
    DerivedTensors derived;
};

Christoffel christoffel(const Jet3& jet, const FrameData& frame, const AmbientModel& a);

SecondFundamentalForm second_fundamental_form(const Jet3& jet, const FrameData& frame, const AmbientModel& a);

/// Normal connection coefficients at u (differences of the gauge-fixed frame).
std::vector<Eigen::MatrixXd> normal_connection(const LocalSampler& sampler, std::span<const double> u,
                                               const FrameData& frame);

PointSample sample_point(const LocalSampler& sampler, std::span<const double> u);

CovariantDerivativeB nabla_bar_b(const PointSample& centre, std::span<const PointSample> neighbors,
                                 std::span<const double> steps);
CovariantDerivativeB nabla_bar_b(const LocalSampler& sampler, std::span<const double> u);

Curvature intrinsic_curvature(const PointSample& centre, std::span<const PointSample> neighbors,
                              std::span<const double> steps);
Curvature intrinsic_curvature(const LocalSampler& sampler, std::span<const double> u);

std::vector<Eigen::MatrixXd> normal_curvature(const PointSample& centre, std::span<const PointSample> neighbors,
                                              std::span<const double> steps);
std::vector<Eigen::MatrixXd> normal_curvature(const LocalSampler& sampler, std::span<const double> u);

PointGeometry evaluate_point(const LocalSampler& sampler, std::span<const double> u);

/// Frobenius norm over all components (sigma, k, i, j).
double frobenius(const CovariantDerivativeB& t);

/// Symmetric square root of g^{-1}; its columns are a g-orthonormal basis.
Eigen::MatrixXd orthonormal_tangent_basis(const Eigen::MatrixXd& g);

} // namespace subgeom
