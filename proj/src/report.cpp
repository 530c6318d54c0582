#include "tranroots/report.hpp"

#include <cmath>
#include <limits>

namespace tranroots {

namespace {

using json = nlohmann::ordered_json;

json num(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double read_num(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json opt_num(const std::optional<double>& v)
{
    return v ? num(*v) : json(nullptr);
}

std::optional<double> read_opt(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<double>();
}

}  // namespace

RunReport make_report(const std::string& A, const std::string& B, int ell, int k, const std::string& mode,
                      const TheoremCheck& check)
{
    RunReport r;
    r.A = A;
    r.B = B;
    r.ell = ell;
    r.k = k;
    r.n = check.n;
    r.mode = mode;
    r.zero_polynomial = check.zero_polynomial;
    r.degree = check.degree;
    r.rounded = check.rounded;
    r.max_rel_rounding = check.max_rel_rounding;
    r.summary = check.summary;
    for (const auto& c : check.roots) {
        ReportRoot rr;
        rr.re = c.z.real();
        rr.im = c.z.imag();
        rr.residual = c.residual;
        rr.im_abs = c.verdict.im_abs;
        rr.signed_value = c.verdict.signed_value;
        rr.near_ab_zero = c.verdict.near_ab_zero;
        rr.on_curve = c.status == RootStatus::on_curve;
        rr.converged = c.converged;
        rr.multiplicity = c.multiplicity;
        rr.g_root = c.g_root;
        if (c.g_root)
            rr.g_rel_err = c.g_rel_err;
        r.roots.push_back(rr);
    }
    return r;
}

json to_json(const RunReport& r)
{
    json roots = json::array();
    for (const auto& x : r.roots) {
        roots.push_back({
            {"re", num(x.re)},
            {"im", num(x.im)},
            {"residual", num(x.residual)},
            {"im_abs", num(x.im_abs)},
            {"signed_value", num(x.signed_value)},
            {"near_ab_zero", x.near_ab_zero},
            {"on_curve", x.on_curve},
            {"converged", x.converged},
            {"multiplicity", x.multiplicity},
            {"g_root", opt_num(x.g_root)},
            {"g_rel_err", opt_num(x.g_rel_err)},
        });
    }
    return json{
        {"spec", {{"A", r.A}, {"B", r.B}, {"l", r.ell}, {"k", r.k}, {"n", r.n}}},
        {"mode", r.mode},
        {"zero_polynomial", r.zero_polynomial},
        {"degree", r.degree},
        {"rounded", r.rounded},
        {"max_rel_rounding", num(r.max_rel_rounding)},
        {"roots", roots},
        {"summary",
         {{"total", r.summary.total},
          {"on_curve_count", r.summary.on_curve_count},
          {"excluded_count", r.summary.excluded_count},
          {"failed_count", r.summary.failed_count}}},
    };
}

RunReport report_from_json(const json& j)
{
    RunReport r;
    const json& s = j.at("spec");
    r.A = s.at("A").get<std::string>();
    r.B = s.at("B").get<std::string>();
    r.ell = s.at("l").get<int>();
    r.k = s.at("k").get<int>();
    r.n = s.at("n").get<int>();
    r.mode = j.at("mode").get<std::string>();
    r.zero_polynomial = j.at("zero_polynomial").get<bool>();
    r.degree = j.at("degree").get<int>();
    r.rounded = j.at("rounded").get<bool>();
    r.max_rel_rounding = read_num(j.at("max_rel_rounding"));
    for (const auto& x : j.at("roots")) {
        ReportRoot rr;
        rr.re = read_num(x.at("re"));
        rr.im = read_num(x.at("im"));
        rr.residual = read_num(x.at("residual"));
        rr.im_abs = read_num(x.at("im_abs"));
        rr.signed_value = read_num(x.at("signed_value"));
        rr.near_ab_zero = x.at("near_ab_zero").get<bool>();
        rr.on_curve = x.at("on_curve").get<bool>();
        rr.converged = x.at("converged").get<bool>();
        rr.multiplicity = x.at("multiplicity").get<int>();
        rr.g_root = read_opt(x.at("g_root"));
        rr.g_rel_err = read_opt(x.at("g_rel_err"));
        r.roots.push_back(rr);
    }
    const json& sm = j.at("summary");
    r.summary.total = sm.at("total").get<int>();
    r.summary.on_curve_count = sm.at("on_curve_count").get<int>();
    r.summary.excluded_count = sm.at("excluded_count").get<int>();
    r.summary.failed_count = sm.at("failed_count").get<int>();
    return r;
}

}  // namespace tranroots
