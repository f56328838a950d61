#pragma once

#include "subgeom/tensors.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subgeom {

/// Thresholds used by the checks. Names double as the keys accepted by
/// `--tol name=value` on the command line.
struct Tolerances {
    double parallel = 1e-4;    // |nabla-bar b| <= parallel * (1 + |b|)
    double recur = 1e-2;       // relative recurrence residual
    double rank = 1e-6;        // relative singular-value cutoff
    double b_zero = 1e-8;      // |b| below this counts as totally geodesic
    double identity = 1e-3;    // Gauss, Codazzi, Ricci equations
    double normal_flat = 1e-4; // |R_perp|
    double einstein = 1e-3;
    double eq10 = 1e-3;
    double eq11 = 1e-4;        // eigen-pattern tolerance
    double eq11_gap = 100.0;   // |k_1| / max |k_rest|
    double mu_dlnH = 1e-2;
    double product = 1e-5;

    /// Sets a field by name; returns false for unknown names.
    bool set(std::string_view name, double value);
    std::optional<double> get(std::string_view name) const;
    static std::vector<std::string> names();
};

enum class RecurrenceStatus { parallel, recurrent_nonparallel, not_recurrent, b_zero };

std::string_view to_string(RecurrenceStatus s);
std::optional<RecurrenceStatus> parse_status(std::string_view s);

struct RecurrenceReport {
    Eigen::VectorXd mu;
    double residual = 0.0;          // |nabla-bar b - mu (x) b| / |b|
    double nabla_b_norm = 0.0;      // max of |nabla-bar b| over the point and its stencil neighbours
    double nabla_b_norm_point = 0.0;
    double b_norm = 0.0;
    RecurrenceStatus status = RecurrenceStatus::b_zero;
};

/// Least-squares recurrence form: mu_k = <nabla_k b, b> / <b, b>.
Eigen::VectorXd recurrence_form(const CovariantDerivativeB& nabla_b, const std::vector<Eigen::MatrixXd>& b);

/// Relative residual |nabla-bar b - mu (x) b| / |b| (0 when b = 0).
double recurrence_residual(const CovariantDerivativeB& nabla_b, const std::vector<Eigen::MatrixXd>& b,
                           const Eigen::VectorXd& mu);

/// Status assignment. `local_nabla_norm` is the largest |nabla-bar b| over
/// the point and its difference neighbours, so that an isolated zero of
/// nabla-bar b on a non-parallel submanifold is not reported as parallel.
RecurrenceReport extract_recurrence(const PointGeometry& pg, double local_nabla_norm, const Tolerances& tol);

double gauss_residual(const PointGeometry& pg, double c);
double codazzi_residual(const PointGeometry& pg);

struct RicciEqResult {
    double residual = 0.0;
    bool trivial = false; // codimension one
};
RicciEqResult ricci_eq_residual(const PointGeometry& pg);

struct FirstNormalSpace {
    int dim = 0;
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd directions; // p x dim, frame coefficients of an orthonormal basis of N_1
};

/// Rank of the p x n(n+1)/2 matrix of b-components over slots i <= j.
FirstNormalSpace first_normal_space(const std::vector<Eigen::MatrixXd>& b, double rank_tol);
int first_normal_dim(const std::vector<Eigen::MatrixXd>& b, double rank_tol);

/// |S - c(n-1) g|_max / |g|_max
double einstein_check(const PointGeometry& pg, double c);

/// max_ij |n <H, b_ij> - sum_sigma (b_sigma g^-1 b_sigma)_ij|, normalised.
double eq10_residual(const PointGeometry& pg);

struct Eq11Result {
    bool applicable = false;
    double residual = 0.0;
    double trace = 0.0;
    std::vector<double> eigenvalues; // descending by magnitude
    double gap_ratio = 0.0;
    bool pattern_ok = false;
};

/// Eigenstructure of A_xi for the unit normal xi spanning N_1; applicable
/// only when dim N_1 = 1.
Eq11Result eq11_eigenstructure(const PointGeometry& pg, const Tolerances& tol);

/// Principal curvatures of sum_sigma xi^sigma A_sigma, descending by magnitude.
std::vector<double> shape_eigenvalues(const PointGeometry& pg, const Eigen::VectorXd& xi);

struct ProductCheck {
    bool applicable = false;
    double orthogonality = 0.0;      // max |g_1j|, j >= 2
    double conjugacy = 0.0;          // max |b(d_1, d_j)|, j >= 2
    double second_block = 0.0;       // max |b(d_i, d_j)|, i, j >= 2
    double block_independence = 0.0; // max |d_k g_11| (k >= 2), |d_1 g_ij| (i, j >= 2)

    double worst() const;
};

/// Product-structure residuals over the given parameter points. Charts not
/// flagged as product-adapted are rejected unless `force` is set.
ProductCheck product_structure_check(const ImmersionChart& chart, const AmbientModel& a,
                                     std::span<const std::vector<double>> points,
                                     const SampleSettings& settings = {}, bool force = false);
ProductCheck product_structure_check(std::span<const PointGeometry> samples, bool applicable);

/// Grid of interior points: counts[i] samples per axis, inset from each end
/// by `margin_steps` difference steps. Points are ordered with the last
/// axis varying fastest.
std::vector<std::vector<double>> grid_points(const ImmersionChart& chart, std::span<const int> counts,
                                             std::span<const double> steps = {}, double margin_steps = 5.0);

/// Everything recorded at one grid point.
struct PointReport {
    std::vector<double> u;
    RecurrenceReport recurrence;
    double mean_curvature = 0.0;      // |H|
    Eigen::VectorXd dlnH;             // d_k ln |H| (empty if |H| ~ 0)
    double gauss = 0.0;
    double codazzi = 0.0;
    RicciEqResult ricci;
    int dim_N1 = 0;
    int dim_N0 = 0;
    double einstein = 0.0;
    double eq10 = 0.0;
    double normal_flat = 0.0;
    Eq11Result eq11;
    std::vector<double> eigenvalues;
    // Raw vectors for the codimension-reduction rank.
    Eigen::VectorXd position;
    std::vector<Eigen::VectorXd> tangents;
    std::vector<Eigen::VectorXd> first_normals;
};

/// max over points and directions of |mu_k - d_k ln|H||. Empty when not
/// every point is recurrent non-parallel or |H| vanishes somewhere.
std::optional<double> mu_vs_dlnH(std::span<const PointReport> points, double h_floor = 1e-8);

/// Numerical rank of tangents, first-normal directions and positions over
/// the grid (positions centred for flat ambients). Needs >= 2n+2 points.
int codimension_reduction_rank(std::span<const PointReport> points, const AmbientModel& a, int n,
                               double rank_tol);

struct ConditionalSuite {
    bool applicable = false; // all points recurrent non-parallel
    bool dim_N1_one = false;
    bool normal_flat = false;
    bool einstein = false;
    bool eq10 = false;
    bool eq11 = false;
    bool mu_dlnH = false;
    bool passed() const;
};

struct GridSummary {
    double worst_gauss = 0.0;
    double worst_codazzi = 0.0;
    double worst_ricci = 0.0;
    double worst_recurrence = 0.0;
    double worst_einstein = 0.0;
    double worst_eq10 = 0.0;
    double worst_eq11 = 0.0;
    double worst_normal_flat = 0.0;
    std::size_t worst_gauss_at = 0; // index into points
    std::size_t worst_codazzi_at = 0;
    std::size_t worst_ricci_at = 0;
    std::array<int, 4> status_histogram{}; // indexed by RecurrenceStatus
    int dim_N1_mode = 0;
    std::optional<int> codim_rank;
    std::optional<double> mu_vs_dlnH;
    ProductCheck product;
    ConditionalSuite conditional;

    double worst_identity() const;
};

struct Classification {
    std::vector<PointReport> points;
    GridSummary summary;
};

/// Full analysis at one parameter point. With `identities_only` the
/// neighbour evaluations needed for the recurrence status are skipped.
PointReport analyze_point(const ImmersionChart& chart, const AmbientModel& a, std::span<const double> u,
                          const Tolerances& tol, const SampleSettings& settings = {},
                          bool identities_only = false, PointGeometry* geometry_out = nullptr);

/// Runs every check over the grid; deterministic in point order.
Classification classify(const ImmersionChart& chart, const AmbientModel& a, std::span<const int> counts,
                        const Tolerances& tol = {}, const SampleSettings& settings = {});

/// Gauss, Codazzi and Ricci residuals only.
Classification identity_suite(const ImmersionChart& chart, const AmbientModel& a, std::span<const int> counts,
                              const Tolerances& tol = {}, const SampleSettings& settings = {});

} // namespace subgeom
