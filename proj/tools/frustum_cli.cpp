// Command-line front end: closed-form frustum areas, individual special
// function evaluations, defining-integral quadrature and closed-form vs
// oracle verification, with text or JSON reports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frustum/geometry.hpp"
#include "frustum/multivar_series.hpp"
#include "frustum/quadrature.hpp"
#include "frustum/scalar_special.hpp"
#include "frustum/series.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitInternal = 4;

// Numbers are emitted with 17 significant digits so that parsing the JSON
// report recovers every double bit-exactly.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json number(double v) { return json::parse(format_double(v)); }

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const json& doc, const std::string& text) const {
        std::string body = format == "json" ? doc.dump(2) + "\n" : text;
        std::cout << body;
        if (!path.empty()) {
            std::ofstream out(path);
            out << body;
        }
    }
};

json series_diagnostics(const frustum::SeriesResult& r) {
    return {{"terms_used", r.terms_used},
            {"error_estimate", number(r.error_estimate)},
            {"converged", r.converged}};
}

json quad_diagnostics(const frustum::QuadResult& r) {
    return {{"error_estimate", number(r.error_estimate)},
            {"subdivisions", r.subdivisions}};
}

void report_error(const char* kind, const std::exception& err) {
    json doc = {{"error", kind}, {"message", err.what()}};
    std::cerr << doc.dump() << "\n";
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curved surface area of a hemiellipsoid frustum via "
                 "hypergeometric closed forms, with a quadrature oracle"};
    app.require_subcommand(1);
    // The plane-height option is spelled --h, so the help flag must not
    // claim the name "h"; restrict it to --help everywhere.
    app.set_help_flag("--help", "Print help");

    frustum::TruncationPolicy policy;
    Output output;
    app.add_option("--rel-tol", policy.rel_tol, "Series relative tolerance")
        ->capture_default_str();
    app.add_option("--max-terms", policy.max_terms,
                   "Series term budget (max total degree for multivariable "
                   "series)")
        ->capture_default_str();
    app.add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--output", output.path,
                   "Duplicate standard output to this file");

    // area ------------------------------------------------------------
    auto* area = app.add_subcommand("area", "Closed-form curved surface area");
    double area_a = 0, area_b = 0, area_c = 0;
    std::optional<double> area_h, area_H, area_beta, area_gamma;
    area->add_option("--a", area_a, "Semi-axis a")->required();
    area->add_option("--b", area_b, "Semi-axis b")->required();
    area->add_option("--c", area_c, "Semi-axis c")->required();
    area->add_option("--h", area_h, "Lower cutting plane height");
    area->add_option("--H", area_H, "Upper cutting plane height");
    area->add_option("--beta", area_beta, "Lower plane fraction");
    area->add_option("--gamma", area_gamma, "Upper plane fraction");

    // verify ----------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "Compare the closed form against the quadrature oracle");
    double ver_a = 0, ver_b = 0, ver_c = 0, ver_h = 0, ver_H = 0;
    double verify_tol = 1e-6;
    verify->add_option("--a", ver_a)->required();
    verify->add_option("--b", ver_b)->required();
    verify->add_option("--c", ver_c)->required();
    verify->add_option("--h", ver_h)->required();
    verify->add_option("--H", ver_H)->required();
    verify->add_option("--verify-tol", verify_tol,
                       "Maximum accepted relative deviation")
        ->capture_default_str();

    // eval-2f1 --------------------------------------------------------
    auto* eval_2f1 = app.add_subcommand("eval-2f1", "Gauss 2F1(a, b; c; z)");
    double g_a = 0, g_b = 0, g_c = 0, g_z = 0;
    eval_2f1->add_option("--a", g_a)->required();
    eval_2f1->add_option("--b", g_b)->required();
    eval_2f1->add_option("--c", g_c)->required();
    eval_2f1->add_option("--z", g_z)->required();

    // eval-f2 ---------------------------------------------------------
    auto* eval_f2 = app.add_subcommand("eval-f2", "Appell F2(a; b, c; d, g; x, y)");
    frustum::AppellF2Args f2_args{};
    eval_f2->add_option("--a", f2_args.a)->required();
    eval_f2->add_option("--b", f2_args.b)->required();
    eval_f2->add_option("--c", f2_args.c)->required();
    eval_f2->add_option("--d", f2_args.d)->required();
    eval_f2->add_option("--g", f2_args.g)->required();
    eval_f2->add_option("--x", f2_args.x)->required();
    eval_f2->add_option("--y", f2_args.y)->required();

    // eval-f3 ---------------------------------------------------------
    auto* eval_f3 = app.add_subcommand(
        "eval-f3",
        "General triple hypergeometric series; parameter groups are "
        "comma-separated lists (default: the surface-area parameter set)");
    std::string f3_groups[14];
    double f3_x = 0, f3_y = 0, f3_z = 0;
    bool f3_default_params = true;
    const char* group_flags[14] = {"--pa", "--pb",  "--pbp", "--pbpp", "--pc",
                                   "--pcp", "--pcpp", "--pe", "--pg",  "--pgp",
                                   "--pgpp", "--ph", "--php", "--phpp"};
    const char* group_descs[14] = {
        "numerator group a (order m+n+p)",  "numerator group b (order m+n)",
        "numerator group b' (order n+p)",   "numerator group b'' (order m+p)",
        "numerator group c (order m)",      "numerator group c' (order n)",
        "numerator group c'' (order p)",    "denominator group e (order m+n+p)",
        "denominator group g (order m+n)",  "denominator group g' (order n+p)",
        "denominator group g'' (order m+p)", "denominator group h (order m)",
        "denominator group h' (order n)",   "denominator group h'' (order p)"};
    for (int i = 0; i < 14; ++i)
        eval_f3->add_option(group_flags[i], f3_groups[i], group_descs[i]);
    eval_f3->add_flag("!--no-default-params", f3_default_params,
                      "Start from empty parameter groups instead of the "
                      "surface-area set");
    eval_f3->add_option("--x", f3_x)->required();
    eval_f3->add_option("--y", f3_y)->required();
    eval_f3->add_option("--z", f3_z)->required();

    // integral --------------------------------------------------------
    auto* integral = app.add_subcommand(
        "integral", "Defining integrals: closed form, quadrature or both");
    integral->require_subcommand(1);
    std::string method = "both";
    integral->add_option("--method", method, "closed | quad | both")
        ->check(CLI::IsMember({"closed", "quad", "both"}));
    auto* angular = integral->add_subcommand(
        "angular", "Int (cos^2 t/sigma^2 + sin^2 t/lambda^2)^s dt over [-pi, pi]");
    double ang_sigma = 0, ang_lambda = 0, ang_s = 0;
    angular->add_option("--sigma", ang_sigma)->required();
    angular->add_option("--lambda", ang_lambda)->required();
    angular->add_option("--s", ang_s)->required();
    auto* radial = integral->add_subcommand(
        "radial", "Int r^(2s+1) (1-r^2)^(-s) dr over [beta, gamma]");
    double rad_beta = 0, rad_gamma = 0, rad_s = 0;
    radial->add_option("--beta", rad_beta)->required();
    radial->add_option("--gamma", rad_gamma)->required();
    radial->add_option("--s", rad_s)->required();
    auto* surface = integral->add_subcommand(
        "surface", "Surface-area double integral by iterated quadrature");
    double surf_a = 0, surf_b = 0, surf_c = 0, surf_h = 0, surf_H = 0;
    surface->add_option("--a", surf_a)->required();
    surface->add_option("--b", surf_b)->required();
    surface->add_option("--c", surf_c)->required();
    surface->add_option("--h", surf_h)->required();
    surface->add_option("--H", surf_H)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*area) {
            const bool by_planes = area_h.has_value() || area_H.has_value();
            const bool by_fracs = area_beta.has_value() || area_gamma.has_value();
            if (by_planes == by_fracs ||
                (by_planes && !(area_h && area_H)) ||
                (by_fracs && !(area_beta && area_gamma))) {
                throw frustum::domain_error(
                    "area: supply exactly one of (--h, --H) or (--beta, --gamma)");
            }
            frustum::AreaReport report;
            json inputs = {{"a", number(area_a)}, {"b", number(area_b)},
                           {"c", number(area_c)}};
            if (by_planes) {
                inputs["h"] = number(*area_h);
                inputs["H"] = number(*area_H);
                report = frustum::surface_area_closed(
                    {area_a, area_b, area_c, *area_h, *area_H}, policy);
            } else {
                inputs["beta"] = number(*area_beta);
                inputs["gamma"] = number(*area_gamma);
                report = frustum::surface_area_closed(
                    area_a, area_b, area_c, {*area_beta, *area_gamma}, policy);
            }
            json doc = {
                {"command", "area"},
                {"inputs", inputs},
                {"result",
                 {{"area", number(report.area)},
                  {"beta", number(report.fractions.beta)},
                  {"gamma", number(report.fractions.gamma)},
                  {"f2_term_gamma", number(report.f2_term_gamma)},
                  {"f2_term_beta", number(report.f2_term_beta)},
                  {"f3_term_gamma", number(report.f3_term_gamma)},
                  {"f3_term_beta", number(report.f3_term_beta)}}},
                {"diagnostics",
                 {{"f2_gamma", series_diagnostics(report.f2_gamma_series)},
                  {"f2_beta", series_diagnostics(report.f2_beta_series)},
                  {"f3_gamma", series_diagnostics(report.f3_gamma_series)},
                  {"f3_beta", series_diagnostics(report.f3_beta_series)}}},
                {"warnings", json::array()}};
            std::ostringstream text;
            text << "area          = " << format_double(report.area) << "\n"
                 << "beta, gamma   = " << format_double(report.fractions.beta)
                 << ", " << format_double(report.fractions.gamma) << "\n"
                 << "F2 term gamma = " << format_double(report.f2_term_gamma) << "\n"
                 << "F2 term beta  = " << format_double(report.f2_term_beta) << "\n"
                 << "F3 term gamma = " << format_double(report.f3_term_gamma) << "\n"
                 << "F3 term beta  = " << format_double(report.f3_term_beta) << "\n";
            output.emit(doc, text.str());
            return kExitOk;
        }

        if (*verify) {
            json inputs = {{"a", number(ver_a)}, {"b", number(ver_b)},
                           {"c", number(ver_c)}, {"h", number(ver_h)},
                           {"H", number(ver_H)}, {"verify_tol", number(verify_tol)}};
            double closed_value = 0.0, oracle_value = 0.0;
            json diagnostics = json::object();
            if (ver_h == ver_H) {
                // Degenerate frustum: empty annulus on both sides.
                if (!(ver_h > 0.0 && ver_H < ver_c))
                    throw frustum::domain_error("verify: requires 0 < h = H < c");
            } else {
                frustum::HemiellipsoidFrustum fr{ver_a, ver_b, ver_c, ver_h, ver_H};
                frustum::AreaReport report = frustum::surface_area_closed(fr, policy);
                frustum::QuadResult quad =
                    frustum::surface_area_quadrature(fr, verify_tol / 100.0);
                closed_value = report.area;
                oracle_value = quad.value;
                diagnostics = {{"f3_gamma", series_diagnostics(report.f3_gamma_series)},
                               {"quadrature", quad_diagnostics(quad)}};
            }
            const double abs_dev = std::abs(closed_value - oracle_value);
            const double rel_dev =
                abs_dev / std::max({std::abs(closed_value), std::abs(oracle_value), 1e-300});
            const bool pass = ver_h == ver_H ? true : rel_dev <= verify_tol;
            json doc = {{"command", "verify"},
                        {"inputs", inputs},
                        {"result",
                         {{"closed_form", number(closed_value)},
                          {"quadrature", number(oracle_value)},
                          {"abs_deviation", number(abs_dev)},
                          {"rel_deviation", number(rel_dev)},
                          {"pass", pass}}},
                        {"diagnostics", diagnostics},
                        {"warnings", json::array()}};
            std::ostringstream text;
            text << "closed form = " << format_double(closed_value) << "\n"
                 << "quadrature  = " << format_double(oracle_value) << "\n"
                 << "abs dev     = " << format_double(abs_dev) << "\n"
                 << "rel dev     = " << format_double(rel_dev) << "\n"
                 << (pass ? "PASS" : "FAIL") << "\n";
            output.emit(doc, text.str());
            return pass ? kExitOk : kExitConvergence;
        }

        if (*eval_2f1) {
            frustum::SeriesResult r = frustum::gauss_2f1(g_a, g_b, g_c, g_z, policy);
            json doc = {{"command", "eval-2f1"},
                        {"inputs",
                         {{"a", number(g_a)}, {"b", number(g_b)},
                          {"c", number(g_c)}, {"z", number(g_z)}}},
                        {"result", {{"value", number(r.value)}}},
                        {"diagnostics", series_diagnostics(r)},
                        {"warnings", json::array()}};
            output.emit(doc, "value = " + format_double(r.value) + "\n");
            return r.converged ? kExitOk : kExitConvergence;
        }

        if (*eval_f2) {
            frustum::SeriesResult r = frustum::appell_f2(f2_args, policy);
            json doc = {{"command", "eval-f2"},
                        {"inputs",
                         {{"a", number(f2_args.a)}, {"b", number(f2_args.b)},
                          {"c", number(f2_args.c)}, {"d", number(f2_args.d)},
                          {"g", number(f2_args.g)}, {"x", number(f2_args.x)},
                          {"y", number(f2_args.y)}}},
                        {"result", {{"value", number(r.value)}}},
                        {"diagnostics", series_diagnostics(r)},
                        {"warnings", json::array()}};
            output.emit(doc, "value = " + format_double(r.value) + "\n");
            return r.converged ? kExitOk : kExitConvergence;
        }

        if (*eval_f3) {
            frustum::TripleSeriesParams params =
                f3_default_params ? frustum::surface_area_triple_params()
                                  : frustum::TripleSeriesParams{};
            std::vector<double>* groups[14] = {
                &params.a,        &params.b,       &params.b_prime,
                &params.b_dprime, &params.c,       &params.c_prime,
                &params.c_dprime, &params.e,       &params.g,
                &params.g_prime,  &params.g_dprime, &params.h,
                &params.h_prime,  &params.h_dprime};
            json inputs = {{"x", number(f3_x)}, {"y", number(f3_y)},
                           {"z", number(f3_z)}};
            for (int i = 0; i < 14; ++i) {
                if (!f3_groups[i].empty()) *groups[i] = parse_list(f3_groups[i]);
                inputs[group_flags[i] + 2] = *groups[i];
            }
            frustum::SeriesResult r =
                frustum::srivastava_f3(params, f3_x, f3_y, f3_z, policy);
            json doc = {{"command", "eval-f3"},
                        {"inputs", inputs},
                        {"result", {{"value", number(r.value)}}},
                        {"diagnostics", series_diagnostics(r)},
                        {"warnings", json::array()}};
            output.emit(doc, "value = " + format_double(r.value) + "\n");
            return r.converged ? kExitOk : kExitConvergence;
        }

        if (*integral) {
            json doc = {{"command", "integral"}};
            json inputs, result, diagnostics = json::object();
            std::ostringstream text;
            bool converged = true;
            const bool want_closed = method != "quad";
            const bool want_quad = method != "closed";
            const double quad_tol = policy.rel_tol > 1e-11 ? policy.rel_tol : 1e-11;
            if (*angular) {
                doc["command"] = "integral-angular";
                inputs = {{"sigma", number(ang_sigma)},
                          {"lambda", number(ang_lambda)}, {"s", number(ang_s)}};
                if (want_closed) {
                    frustum::SeriesResult r =
                        ang_sigma >= ang_lambda
                            ? frustum::theorem1_angular_integral(ang_sigma, ang_lambda,
                                                                ang_s, policy)
                            : frustum::theorem2_angular_integral(ang_sigma, ang_lambda,
                                                                ang_s, policy);
                    result["closed"] = number(r.value);
                    diagnostics["closed"] = series_diagnostics(r);
                    text << "closed     = " << format_double(r.value) << "\n";
                    converged = converged && r.converged;
                }
                if (want_quad) {
                    frustum::QuadResult q = frustum::angular_integral_quadrature(
                        ang_sigma, ang_lambda, ang_s, quad_tol);
                    result["quadrature"] = number(q.value);
                    diagnostics["quadrature"] = quad_diagnostics(q);
                    text << "quadrature = " << format_double(q.value) << "\n";
                }
            } else if (*radial) {
                doc["command"] = "integral-radial";
                inputs = {{"beta", number(rad_beta)}, {"gamma", number(rad_gamma)},
                          {"s", number(rad_s)}};
                if (want_closed) {
                    frustum::SeriesResult r = frustum::theorem3_radial_integral(
                        rad_beta, rad_gamma, rad_s, policy);
                    result["closed"] = number(r.value);
                    diagnostics["closed"] = series_diagnostics(r);
                    text << "closed     = " << format_double(r.value) << "\n";
                    converged = converged && r.converged;
                }
                if (want_quad) {
                    frustum::QuadResult q = frustum::radial_integral_quadrature(
                        rad_beta, rad_gamma, rad_s, quad_tol);
                    result["quadrature"] = number(q.value);
                    diagnostics["quadrature"] = quad_diagnostics(q);
                    text << "quadrature = " << format_double(q.value) << "\n";
                }
            } else {
                doc["command"] = "integral-surface";
                inputs = {{"a", number(surf_a)}, {"b", number(surf_b)},
                          {"c", number(surf_c)}, {"h", number(surf_h)},
                          {"H", number(surf_H)}};
                frustum::QuadResult q = frustum::surface_area_quadrature(
                    {surf_a, surf_b, surf_c, surf_h, surf_H},
                    quad_tol > 1e-9 ? quad_tol : 1e-9);
                result["quadrature"] = number(q.value);
                diagnostics["quadrature"] = quad_diagnostics(q);
                text << "quadrature = " << format_double(q.value) << "\n";
            }
            doc["inputs"] = inputs;
            doc["result"] = result;
            doc["diagnostics"] = diagnostics;
            doc["warnings"] = json::array();
            output.emit(doc, text.str());
            return converged ? kExitOk : kExitConvergence;
        }
    } catch (const frustum::domain_error& err) {
        report_error("validation", err);
        return kExitValidation;
    } catch (const frustum::divergence_error& err) {
        report_error("divergence", err);
        return kExitValidation;
    } catch (const frustum::pole_error& err) {
        report_error("pole", err);
        return kExitValidation;
    } catch (const frustum::convergence_error& err) {
        report_error("convergence", err);
        return kExitConvergence;
    } catch (const std::exception& err) {
        report_error("internal", err);
        return kExitInternal;
    }
    return kExitInternal;
}
