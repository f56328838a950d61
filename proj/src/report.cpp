#include "subgeom/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace subgeom {

double round12(double x)
{
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

Json number(double x)
{
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round12(x);
}

Json array(std::span<const double> xs)
{
    Json a = Json::array();
    for (double x : xs) {
        a.push_back(number(x));
    }
    return a;
}

Json array(const Eigen::VectorXd& v)
{
    return array(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

Json header(const CatalogEntry& entry, std::string_view command, std::span<const int> grid, const Tolerances& tol)
{
    Json j;
    j["schema"] = "1";
    j["command"] = command;
    j["entry"] = entry.id;
    Json params = Json::object();
    for (const auto& [k, v] : entry.params) {
        params[k] = number(v);
    }
    j["params"] = params;
    j["ambient"] = {{"c", number(entry.ambient.c())},
                    {"ambient_dim", entry.ambient.ambient_dim()},
                    {"model_dim", entry.ambient.model_dim()}};
    j["n"] = entry.chart.n;
    j["grid"] = std::vector<int>(grid.begin(), grid.end());
    Json t = Json::object();
    for (const std::string& name : Tolerances::names()) {
        t[name] = number(*tol.get(name));
    }
    j["tolerances"] = t;
    return j;
}

Json worst_block(const Classification& result)
{
    const GridSummary& s = result.summary;
    Json w;
    w["gauss"] = number(s.worst_gauss);
    w["codazzi"] = number(s.worst_codazzi);
    w["ricci"] = number(s.worst_ricci);
    return w;
}

Json worst_points(const Classification& result)
{
    const GridSummary& s = result.summary;
    Json w;
    if (result.points.empty()) {
        return w;
    }
    w["gauss"] = array(result.points[s.worst_gauss_at].u);
    w["codazzi"] = array(result.points[s.worst_codazzi_at].u);
    w["ricci"] = array(result.points[s.worst_ricci_at].u);
    return w;
}

} // namespace

bool matches_expected(const CatalogEntry& entry, const Classification& result)
{
    if (!entry.expected_status) {
        return true;
    }
    for (const PointReport& p : result.points) {
        if (p.recurrence.status != *entry.expected_status) {
            return false;
        }
    }
    return true;
}

Json identities_json(const CatalogEntry& entry, std::span<const int> grid, const Tolerances& tol,
                     const Classification& result)
{
    Json j = header(entry, "identities", grid, tol);
    Json pts = Json::array();
    for (const PointReport& p : result.points) {
        Json q;
        q["u"] = array(p.u);
        q["gauss"] = number(p.gauss);
        q["codazzi"] = number(p.codazzi);
        q["ricci"] = number(p.ricci.residual);
        q["ricci_trivial"] = p.ricci.trivial;
        pts.push_back(q);
    }
    j["per_point"] = pts;
    Json s;
    s["worst_residuals"] = worst_block(result);
    s["worst_points"] = worst_points(result);
    s["passed"] = result.summary.worst_identity() <= tol.identity;
    j["summary"] = s;
    return j;
}

Json classification_json(const CatalogEntry& entry, std::span<const int> grid, const Tolerances& tol,
                         const Classification& result)
{
    Json j = header(entry, "classify", grid, tol);
    j["expected_status"] = entry.expected_status ? Json(to_string(*entry.expected_status)) : Json(nullptr);
    Json pts = Json::array();
    for (const PointReport& p : result.points) {
        Json q;
        q["u"] = array(p.u);
        q["status"] = to_string(p.recurrence.status);
        q["mu"] = array(p.recurrence.mu);
        q["b_norm"] = number(p.recurrence.b_norm);
        q["nabla_b_norm"] = number(p.recurrence.nabla_b_norm);
        q["nabla_b_norm_point"] = number(p.recurrence.nabla_b_norm_point);
        q["mean_curvature"] = number(p.mean_curvature);
        q["dlnH"] = p.dlnH.size() > 0 ? array(p.dlnH) : Json(nullptr);
        q["dim_N1"] = p.dim_N1;
        q["dim_N0"] = p.dim_N0;
        q["eigenvalues"] = array(p.eigenvalues);
        q["residuals"] = {{"recurrence", number(p.recurrence.residual)},
                          {"gauss", number(p.gauss)},
                          {"codazzi", number(p.codazzi)},
                          {"ricci", number(p.ricci.residual)},
                          {"einstein", number(p.einstein)},
                          {"eq10", number(p.eq10)},
                          {"eq11", p.eq11.applicable ? number(p.eq11.residual) : Json(nullptr)},
                          {"normal_flat", number(p.normal_flat)}};
        q["eq11_pattern"] = p.eq11.applicable ? Json(p.eq11.pattern_ok) : Json(nullptr);
        pts.push_back(q);
    }
    j["per_point"] = pts;

    const GridSummary& s = result.summary;
    Json sum;
    Json worst = worst_block(result);
    worst["recurrence"] = number(s.worst_recurrence);
    worst["einstein"] = number(s.worst_einstein);
    worst["eq10"] = number(s.worst_eq10);
    worst["eq11"] = number(s.worst_eq11);
    worst["normal_flat"] = number(s.worst_normal_flat);
    sum["worst_residuals"] = worst;
    sum["worst_points"] = worst_points(result);
    Json hist;
    for (RecurrenceStatus st : {RecurrenceStatus::parallel, RecurrenceStatus::recurrent_nonparallel,
                                RecurrenceStatus::not_recurrent, RecurrenceStatus::b_zero}) {
        hist[std::string(to_string(st))] = s.status_histogram[static_cast<std::size_t>(st)];
    }
    sum["status_histogram"] = hist;
    sum["dim_N1_mode"] = s.dim_N1_mode;
    sum["codim_rank"] = s.codim_rank ? Json(*s.codim_rank) : Json(nullptr);
    sum["mu_vs_dlnH"] = s.mu_vs_dlnH ? number(*s.mu_vs_dlnH) : Json(nullptr);
    if (s.product.applicable) {
        sum["product_check"] = {{"orthogonality", number(s.product.orthogonality)},
                                {"conjugacy", number(s.product.conjugacy)},
                                {"second_block", number(s.product.second_block)},
                                {"block_independence", number(s.product.block_independence)}};
    } else {
        sum["product_check"] = nullptr;
    }
    const ConditionalSuite& cs = s.conditional;
    if (cs.applicable) {
        sum["conditional_suite"] = {{"dim_N1_one", cs.dim_N1_one}, {"normal_flat", cs.normal_flat},
                                    {"einstein", cs.einstein},     {"eq10", cs.eq10},
                                    {"eq11", cs.eq11},             {"mu_dlnH", cs.mu_dlnH},
                                    {"passed", cs.passed()}};
    } else {
        sum["conditional_suite"] = nullptr;
    }
    sum["identities_passed"] = s.worst_identity() <= tol.identity;
    sum["status_matches_expected"] = matches_expected(entry, result);
    j["summary"] = sum;
    return j;
}

std::string classification_csv(const CatalogEntry& entry, const Classification& result, bool identities_only)
{
    std::ostringstream os;
    const int n = entry.chart.n;
    auto put = [&os](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        os << buf;
    };
    for (int i = 0; i < n; ++i) {
        os << "u" << i << ',';
    }
    if (identities_only) {
        os << "gauss,codazzi,ricci\n";
    } else {
        os << "status,";
        for (int i = 0; i < n; ++i) {
            os << "mu" << i << ',';
        }
        os << "recurrence,gauss,codazzi,ricci,einstein,eq10,eq11,normal_flat,dim_N1\n";
    }
    for (const PointReport& p : result.points) {
        for (double x : p.u) {
            put(x);
            os << ',';
        }
        if (!identities_only) {
            os << to_string(p.recurrence.status) << ',';
            for (Eigen::Index k = 0; k < p.recurrence.mu.size(); ++k) {
                put(p.recurrence.mu[k]);
                os << ',';
            }
            put(p.recurrence.residual);
            os << ',';
        }
        put(p.gauss);
        os << ',';
        put(p.codazzi);
        os << ',';
        put(p.ricci.residual);
        if (!identities_only) {
            for (double x : {p.einstein, p.eq10, p.eq11.residual, p.normal_flat}) {
                os << ',';
                put(x);
            }
            os << ',' << p.dim_N1;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace subgeom
