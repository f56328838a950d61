#include "subgeom/analysis.hpp"

#include "subgeom/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace subgeom {

namespace {

struct NamedTolerance {
    const char* name;
    double Tolerances::*field;
};

constexpr std::array<NamedTolerance, 12> kToleranceNames{{
    {"parallel", &Tolerances::parallel},
    {"recur", &Tolerances::recur},
    {"rank", &Tolerances::rank},
    {"b_zero", &Tolerances::b_zero},
    {"identity", &Tolerances::identity},
    {"normal_flat", &Tolerances::normal_flat},
    {"einstein", &Tolerances::einstein},
    {"eq10", &Tolerances::eq10},
    {"eq11", &Tolerances::eq11},
    {"eq11_gap", &Tolerances::eq11_gap},
    {"mu_dlnH", &Tolerances::mu_dlnH},
    {"product", &Tolerances::product},
}};

double max_abs(const Eigen::MatrixXd& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd combine(const std::vector<Eigen::MatrixXd>& mats, const Eigen::VectorXd& coeff)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(mats.front().rows(), mats.front().cols());
    for (std::size_t s = 0; s < mats.size(); ++s) {
        out += coeff[static_cast<Eigen::Index>(s)] * mats[s];
    }
    return out;
}

// Eigenvalues of g^{-1} b for symmetric b and SPD g, descending by magnitude.
std::vector<double> principal_values(const Eigen::MatrixXd& b, const Eigen::MatrixXd& g)
{
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(b, g, Eigen::EigenvaluesOnly);
    std::vector<double> ev(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::stable_sort(ev.begin(), ev.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
    return ev;
}

} // namespace

bool Tolerances::set(std::string_view name, double value)
{
    for (const NamedTolerance& t : kToleranceNames) {
        if (name == t.name) {
            this->*(t.field) = value;
            return true;
        }
    }
    return false;
}

std::optional<double> Tolerances::get(std::string_view name) const
{
    for (const NamedTolerance& t : kToleranceNames) {
        if (name == t.name) {
            return this->*(t.field);
        }
    }
    return std::nullopt;
}

std::vector<std::string> Tolerances::names()
{
    std::vector<std::string> out;
    for (const NamedTolerance& t : kToleranceNames) {
        out.emplace_back(t.name);
    }
    return out;
}

std::string_view to_string(RecurrenceStatus s)
{
    switch (s) {
    case RecurrenceStatus::parallel:
        return "parallel";
    case RecurrenceStatus::recurrent_nonparallel:
        return "recurrent_nonparallel";
    case RecurrenceStatus::not_recurrent:
        return "not_recurrent";
    case RecurrenceStatus::b_zero:
        return "b_zero";
    }
    return "unknown";
}

std::optional<RecurrenceStatus> parse_status(std::string_view s)
{
    for (RecurrenceStatus st : {RecurrenceStatus::parallel, RecurrenceStatus::recurrent_nonparallel,
                                RecurrenceStatus::not_recurrent, RecurrenceStatus::b_zero}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

Eigen::VectorXd recurrence_form(const CovariantDerivativeB& nabla_b, const std::vector<Eigen::MatrixXd>& b)
{
    const int p = static_cast<int>(b.size());
    const int n = p > 0 ? static_cast<int>(b.front().rows()) : 0;
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    double bb = 0.0;
    for (const Eigen::MatrixXd& m : b) {
        bb += m.squaredNorm();
    }
    if (bb == 0.0) {
        return mu;
    }
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int sigma = 0; sigma < p; ++sigma) {
            s += nabla_b[sigma][k].cwiseProduct(b[sigma]).sum();
        }
        mu[k] = s / bb;
    }
    return mu;
}

double recurrence_residual(const CovariantDerivativeB& nabla_b, const std::vector<Eigen::MatrixXd>& b,
                           const Eigen::VectorXd& mu)
{
    double bb = 0.0;
    double rr = 0.0;
    for (std::size_t sigma = 0; sigma < b.size(); ++sigma) {
        bb += b[sigma].squaredNorm();
        for (Eigen::Index k = 0; k < mu.size(); ++k) {
            rr += (nabla_b[sigma][k] - mu[k] * b[sigma]).squaredNorm();
        }
    }
    return bb == 0.0 ? 0.0 : std::sqrt(rr / bb);
}

RecurrenceReport extract_recurrence(const PointGeometry& pg, double local_nabla_norm, const Tolerances& tol)
{
    const FundamentalData& f = pg.centre.fundamental;
    RecurrenceReport r;
    r.b_norm = f.b_norm();
    r.nabla_b_norm_point = frobenius(pg.derived.nabla_bar_b);
    r.nabla_b_norm = std::max(local_nabla_norm, r.nabla_b_norm_point);
    if (r.b_norm <= tol.b_zero) {
        r.mu = Eigen::VectorXd::Zero(pg.centre.jet.n);
        r.status = RecurrenceStatus::b_zero;
        return r;
    }
    r.mu = recurrence_form(pg.derived.nabla_bar_b, f.b);
    r.residual = recurrence_residual(pg.derived.nabla_bar_b, f.b, r.mu);
    if (r.nabla_b_norm <= tol.parallel * (1.0 + r.b_norm)) {
        r.status = RecurrenceStatus::parallel;
    } else if (r.residual <= tol.recur) {
        r.status = RecurrenceStatus::recurrent_nonparallel;
    } else {
        r.status = RecurrenceStatus::not_recurrent;
    }
    return r;
}

double gauss_residual(const PointGeometry& pg, double c)
{
    const Eigen::MatrixXd& g = pg.centre.frame.g;
    const std::vector<Eigen::MatrixXd>& b = pg.centre.fundamental.b;
    const Tensor4& R = pg.derived.riemann;
    const int n = R.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    double expected = c * (g(i, l) * g(j, k) - g(i, k) * g(j, l));
                    for (const Eigen::MatrixXd& bs : b) {
                        expected += bs(i, l) * bs(j, k) - bs(i, k) * bs(j, l);
                    }
                    worst = std::max(worst, std::abs(R(i, j, k, l) - expected));
                }
            }
        }
    }
    return worst / (1.0 + R.max_abs());
}

double codazzi_residual(const PointGeometry& pg)
{
    const CovariantDerivativeB& t = pg.derived.nabla_bar_b;
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& per_sigma : t) {
        const int n = static_cast<int>(per_sigma.size());
        for (int k = 0; k < n; ++k) {
            scale = std::max(scale, max_abs(per_sigma[k]));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    worst = std::max(worst, std::abs(per_sigma[k](i, j) - per_sigma[i](k, j)));
                }
            }
        }
    }
    return worst / (1.0 + scale);
}

RicciEqResult ricci_eq_residual(const PointGeometry& pg)
{
    const std::vector<Eigen::MatrixXd>& b = pg.centre.fundamental.b;
    const int p = static_cast<int>(b.size());
    RicciEqResult r;
    if (p < 2) {
        r.trivial = true;
        return r;
    }
    const int n = static_cast<int>(b.front().rows());
    const Eigen::MatrixXd& g_inv = pg.centre.frame.g_inv;
    double worst = 0.0;
    double scale = 0.0;
    for (int sigma = 0; sigma < p; ++sigma) {
        for (int tau = 0; tau < p; ++tau) {
            // g([A_s, A_t] d_i, d_j) = (b_s g^-1 b_t - b_t g^-1 b_s)_ji
            const Eigen::MatrixXd comm = b[sigma] * g_inv * b[tau] - b[tau] * g_inv * b[sigma];
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    const double lhs = pg.derived.normal_curv[i * n + j](tau, sigma);
                    const double rhs = comm(j, i);
                    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        }
    }
    r.residual = worst / (1.0 + scale);
    return r;
}

FirstNormalSpace first_normal_space(const std::vector<Eigen::MatrixXd>& b, double rank_tol)
{
    FirstNormalSpace out;
    const int p = static_cast<int>(b.size());
    if (p == 0) {
        out.directions.resize(0, 0);
        return out;
    }
    const int n = static_cast<int>(b.front().rows());
    Eigen::MatrixXd m(p, n * (n + 1) / 2);
    for (int sigma = 0; sigma < p; ++sigma) {
        int col = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                m(sigma, col++) = b[sigma](i, j);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    out.singular_values = svd.singularValues();
    const double top = out.singular_values.size() > 0 ? out.singular_values[0] : 0.0;
    if (top > 0.0) {
        for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
            if (out.singular_values[k] > rank_tol * top) {
                ++out.dim;
            }
        }
    }
    out.directions = svd.matrixU().leftCols(out.dim);
    return out;
}

int first_normal_dim(const std::vector<Eigen::MatrixXd>& b, double rank_tol)
{
    return first_normal_space(b, rank_tol).dim;
}

double einstein_check(const PointGeometry& pg, double c)
{
    const Eigen::MatrixXd& g = pg.centre.frame.g;
    const int n = static_cast<int>(g.rows());
    return max_abs(pg.derived.ricci - c * (n - 1) * g) / max_abs(g);
}

double eq10_residual(const PointGeometry& pg)
{
    const FundamentalData& f = pg.centre.fundamental;
    const Eigen::MatrixXd& g_inv = pg.centre.frame.g_inv;
    const int n = static_cast<int>(g_inv.rows());
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t sigma = 0; sigma < f.b.size(); ++sigma) {
        lhs += n * f.H[static_cast<Eigen::Index>(sigma)] * f.b[sigma];
        rhs += f.b[sigma] * g_inv * f.b[sigma];
    }
    return max_abs(lhs - rhs) / (1.0 + std::max(max_abs(lhs), max_abs(rhs)));
}

std::vector<double> shape_eigenvalues(const PointGeometry& pg, const Eigen::VectorXd& xi)
{
    const Eigen::MatrixXd bx = combine(pg.centre.fundamental.b, xi);
    return principal_values(bx, pg.centre.frame.g);
}

Eq11Result eq11_eigenstructure(const PointGeometry& pg, const Tolerances& tol)
{
    Eq11Result r;
    const FirstNormalSpace n1 = first_normal_space(pg.centre.fundamental.b, tol.rank);
    if (n1.dim != 1) {
        return r;
    }
    r.applicable = true;
    const Eigen::VectorXd xi = n1.directions.col(0);
    r.eigenvalues = shape_eigenvalues(pg, xi);
    r.trace = 0.0;
    for (double k : r.eigenvalues) {
        r.trace += k;
    }
    // (trace A) A - A^2 is a polynomial in the g-self-adjoint A, so its
    // invariant Frobenius norm follows from the principal values.
    double num = 0.0;
    for (double k : r.eigenvalues) {
        num += std::pow(r.trace * k - k * k, 2);
    }
    const double spectral = std::abs(r.eigenvalues.front());
    r.residual = std::sqrt(num) / (1.0 + spectral * spectral);

    double rest = 0.0;
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
        rest = std::max(rest, std::abs(r.eigenvalues[i]));
    }
    r.gap_ratio = rest > 0.0 ? spectral / rest : std::numeric_limits<double>::infinity();
    r.pattern_ok = std::abs(r.eigenvalues.front() - r.trace) <= tol.eq11 * (1.0 + std::abs(r.trace)) &&
                   rest <= tol.eq11 && std::abs(r.trace) > tol.eq11 && r.gap_ratio >= tol.eq11_gap;
    return r;
}

double ProductCheck::worst() const
{
    return std::max({orthogonality, conjugacy, second_block, block_independence});
}

ProductCheck product_structure_check(std::span<const PointGeometry> samples, bool applicable)
{
    ProductCheck r;
    r.applicable = applicable;
    if (!applicable) {
        return r;
    }
    for (const PointGeometry& pg : samples) {
        const Eigen::MatrixXd& g = pg.centre.frame.g;
        const int n = static_cast<int>(g.rows());
        for (int j = 1; j < n; ++j) {
            r.orthogonality = std::max(r.orthogonality, std::abs(g(0, j)));
            for (const Eigen::MatrixXd& b : pg.centre.fundamental.b) {
                r.conjugacy = std::max(r.conjugacy, std::abs(b(0, j)));
                for (int i = 1; i < n; ++i) {
                    r.second_block = std::max(r.second_block, std::abs(b(i, j)));
                }
            }
        }
        for (int k = 0; k < n; ++k) {
            const Eigen::MatrixXd& gp = pg.neighbors[2 * k].frame.g;
            const Eigen::MatrixXd& gm = pg.neighbors[2 * k + 1].frame.g;
            const double h = pg.neighbors[2 * k].u[k] - pg.centre.u[k];
            const Eigen::MatrixXd dg = (gp - gm) / (2.0 * h);
            if (k == 0) {
                r.block_independence = std::max(r.block_independence, max_abs(dg.bottomRightCorner(n - 1, n - 1)));
            } else {
                r.block_independence = std::max(r.block_independence, std::abs(dg(0, 0)));
            }
        }
    }
    return r;
}

ProductCheck product_structure_check(const ImmersionChart& chart, const AmbientModel& a,
                                     std::span<const std::vector<double>> points, const SampleSettings& settings,
                                     bool force)
{
    if (!chart.product_adapted && !force) {
        return ProductCheck{};
    }
    std::vector<PointGeometry> samples;
    for (const std::vector<double>& u : points) {
        const LocalSampler sampler(chart, a, u, settings);
        samples.push_back(evaluate_point(sampler, u));
    }
    return product_structure_check(samples, true);
}

std::vector<std::vector<double>> grid_points(const ImmersionChart& chart, std::span<const int> counts,
                                             std::span<const double> steps, double margin_steps)
{
    const int n = chart.n;
    if (static_cast<int>(counts.size()) != n) {
        throw InputError("grid needs one sample count per chart axis");
    }
    std::vector<double> h(steps.begin(), steps.end());
    if (h.empty()) {
        h = default_steps(chart);
    }
    std::vector<std::vector<double>> axes(n);
    for (int i = 0; i < n; ++i) {
        if (counts[i] < 1) {
            throw InputError("grid counts must be positive");
        }
        const double lo = chart.domain[i].lo + margin_steps * h[i];
        const double hi = chart.domain[i].hi - margin_steps * h[i];
        if (!(lo < hi)) {
            throw DomainError("chart domain is too narrow for the difference margin");
        }
        for (int k = 0; k < counts[i]; ++k) {
            axes[i].push_back(counts[i] == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (counts[i] - 1));
        }
    }
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<double> u(n);
        for (int i = 0; i < n; ++i) {
            u[i] = axes[i][idx[i]];
        }
        pts.push_back(std::move(u));
        int axis = n - 1;
        while (axis >= 0 && ++idx[axis] == counts[axis]) {
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) {
            break;
        }
    }
    return pts;
}

std::optional<double> mu_vs_dlnH(std::span<const PointReport> points, double h_floor)
{
    double worst = 0.0;
    for (const PointReport& p : points) {
        if (p.recurrence.status != RecurrenceStatus::recurrent_nonparallel || p.mean_curvature <= h_floor ||
            p.dlnH.size() != p.recurrence.mu.size()) {
            return std::nullopt;
        }
        worst = std::max(worst, (p.recurrence.mu - p.dlnH).cwiseAbs().maxCoeff());
    }
    if (points.empty()) {
        return std::nullopt;
    }
    return worst;
}

int codimension_reduction_rank(std::span<const PointReport> points, const AmbientModel& a, int n, double rank_tol)
{
    if (static_cast<int>(points.size()) < 2 * n + 2) {
        throw SamplingError("codimension rank needs at least " + std::to_string(2 * n + 2) + " sample points, got " +
                            std::to_string(points.size()));
    }
    const Eigen::Index dim = a.model_dim();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (const PointReport& p : points) {
        mean += p.position;
    }
    mean /= static_cast<double>(points.size());

    std::vector<Eigen::VectorXd> cols;
    for (const PointReport& p : points) {
        cols.push_back(a.flat() ? Eigen::VectorXd(p.position - mean) : p.position);
        for (const Eigen::VectorXd& t : p.tangents) {
            cols.push_back(t);
        }
        for (const Eigen::VectorXd& xi : p.first_normals) {
            cols.push_back(xi);
        }
    }
    Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = cols[k];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s[k] > rank_tol * s[0]) {
            ++rank;
        }
    }
    return rank;
}

bool ConditionalSuite::passed() const
{
    return applicable && dim_N1_one && normal_flat && einstein && eq10 && eq11 && mu_dlnH;
}

double GridSummary::worst_identity() const
{
    return std::max({worst_gauss, worst_codazzi, worst_ricci});
}

PointReport analyze_point(const ImmersionChart& chart, const AmbientModel& a, std::span<const double> u,
                          const Tolerances& tol, const SampleSettings& settings, bool identities_only,
                          PointGeometry* geometry_out)
{
    const LocalSampler sampler(chart, a, u, settings);
    PointGeometry pg = evaluate_point(sampler, u);
    PointReport r;
    r.u.assign(u.begin(), u.end());
    r.gauss = gauss_residual(pg, a.c());
    r.codazzi = codazzi_residual(pg);
    r.ricci = ricci_eq_residual(pg);
    const FundamentalData& f = pg.centre.fundamental;
    r.mean_curvature = f.mean_curvature_norm();
    for (const Eigen::MatrixXd& m : pg.derived.normal_curv) {
        r.normal_flat = std::max(r.normal_flat, max_abs(m));
    }

    if (!identities_only) {
        double local = 0.0;
        for (int k = 0; k < chart.n; ++k) {
            for (double s : {1.0, -1.0}) {
                local = std::max(local, frobenius(nabla_bar_b(sampler, sampler.shifted(u, k, s))));
            }
        }
        r.recurrence = extract_recurrence(pg, local, tol);

        if (r.mean_curvature > tol.b_zero) {
            r.dlnH.resize(chart.n);
            for (int k = 0; k < chart.n; ++k) {
                const double hp = pg.neighbors[2 * k].fundamental.mean_curvature_norm();
                const double hm = pg.neighbors[2 * k + 1].fundamental.mean_curvature_norm();
                r.dlnH[k] = (std::log(hp) - std::log(hm)) / (2.0 * sampler.steps()[k]);
            }
        }

        const FirstNormalSpace n1 = first_normal_space(f.b, tol.rank);
        r.dim_N1 = r.recurrence.status == RecurrenceStatus::b_zero ? 0 : n1.dim;
        r.dim_N0 = pg.centre.frame.codim() - r.dim_N1;
        r.einstein = einstein_check(pg, a.c());
        r.eq10 = eq10_residual(pg);
        r.eq11 = eq11_eigenstructure(pg, tol);
        Eigen::VectorXd xi = Eigen::VectorXd::Zero(pg.centre.frame.codim());
        if (n1.dim > 0) {
            xi = n1.directions.col(0);
        } else if (xi.size() > 0) {
            xi[0] = 1.0;
        }
        r.eigenvalues = xi.size() > 0 ? shape_eigenvalues(pg, xi) : std::vector<double>(chart.n, 0.0);

        r.position = pg.centre.jet.value;
        r.tangents = pg.centre.jet.d1;
        for (int d = 0; d < r.dim_N1; ++d) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(a.model_dim());
            for (int sigma = 0; sigma < pg.centre.frame.codim(); ++sigma) {
                v += n1.directions(sigma, d) * pg.centre.frame.normals[sigma];
            }
            r.first_normals.push_back(std::move(v));
        }
    }
    if (geometry_out != nullptr) {
        *geometry_out = std::move(pg);
    }
    return r;
}

namespace {

void summarize_identities(Classification& out)
{
    GridSummary& s = out.summary;
    for (std::size_t k = 0; k < out.points.size(); ++k) {
        const PointReport& p = out.points[k];
        if (p.gauss > s.worst_gauss || k == 0) {
            s.worst_gauss = p.gauss;
            s.worst_gauss_at = k;
        }
        if (p.codazzi > s.worst_codazzi || k == 0) {
            s.worst_codazzi = p.codazzi;
            s.worst_codazzi_at = k;
        }
        if (p.ricci.residual > s.worst_ricci || k == 0) {
            s.worst_ricci = p.ricci.residual;
            s.worst_ricci_at = k;
        }
    }
}

} // namespace

Classification identity_suite(const ImmersionChart& chart, const AmbientModel& a, std::span<const int> counts,
                              const Tolerances& tol, const SampleSettings& settings)
{
    Classification out;
    for (const std::vector<double>& u : grid_points(chart, counts, settings.steps)) {
        out.points.push_back(analyze_point(chart, a, u, tol, settings, true));
    }
    summarize_identities(out);
    return out;
}

Classification classify(const ImmersionChart& chart, const AmbientModel& a, std::span<const int> counts,
                        const Tolerances& tol, const SampleSettings& settings)
{
    Classification out;
    std::vector<PointGeometry> geometry;
    for (const std::vector<double>& u : grid_points(chart, counts, settings.steps)) {
        PointGeometry pg;
        out.points.push_back(analyze_point(chart, a, u, tol, settings, false, &pg));
        if (chart.product_adapted) {
            geometry.push_back(std::move(pg));
        }
    }
    summarize_identities(out);

    GridSummary& s = out.summary;
    std::map<int, int> dim_counts;
    bool all_recurrent = !out.points.empty();
    for (const PointReport& p : out.points) {
        ++s.status_histogram[static_cast<std::size_t>(p.recurrence.status)];
        ++dim_counts[p.dim_N1];
        s.worst_recurrence = std::max(s.worst_recurrence, p.recurrence.residual);
        s.worst_einstein = std::max(s.worst_einstein, p.einstein);
        s.worst_eq10 = std::max(s.worst_eq10, p.eq10);
        s.worst_eq11 = std::max(s.worst_eq11, p.eq11.residual);
        s.worst_normal_flat = std::max(s.worst_normal_flat, p.normal_flat);
        all_recurrent = all_recurrent && p.recurrence.status == RecurrenceStatus::recurrent_nonparallel;
    }
    int best = -1;
    for (const auto& [dim, count] : dim_counts) {
        if (best < 0 || count > dim_counts[best]) {
            best = dim;
        }
    }
    s.dim_N1_mode = std::max(best, 0);
    if (static_cast<int>(out.points.size()) >= 2 * chart.n + 2) {
        s.codim_rank = codimension_reduction_rank(out.points, a, chart.n, tol.rank);
    }
    s.mu_vs_dlnH = mu_vs_dlnH(out.points, tol.b_zero);
    s.product = product_structure_check(geometry, chart.product_adapted);

    ConditionalSuite& cs = s.conditional;
    cs.applicable = all_recurrent;
    if (all_recurrent) {
        cs.dim_N1_one = std::all_of(out.points.begin(), out.points.end(), [](const PointReport& p) { return p.dim_N1 == 1; });
        cs.normal_flat = s.worst_normal_flat <= tol.normal_flat;
        cs.einstein = s.worst_einstein <= tol.einstein;
        cs.eq10 = s.worst_eq10 <= tol.eq10;
        cs.eq11 = std::all_of(out.points.begin(), out.points.end(),
                              [](const PointReport& p) { return p.eq11.applicable && p.eq11.pattern_ok; });
        cs.mu_dlnH = s.mu_vs_dlnH && *s.mu_vs_dlnH <= tol.mu_dlnH;
    }
    return out;
}

} // namespace subgeom
