#ifndef TRANROOTS_REPORT_HPP
#define TRANROOTS_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tranroots/verify.hpp"

namespace tranroots {

struct ReportRoot {
    double re = 0, im = 0;
    double residual = 0;
    double im_abs = 0;        // infinite at a pole
    double signed_value = 0;  // NaN at a pole
    bool near_ab_zero = false;
    bool on_curve = false;
    bool converged = false;
    int multiplicity = 1;
    std::optional<double> g_root;
    std::optional<double> g_rel_err;
};

struct RunReport {
    std::string A, B;
    int ell = 0, k = 0, n = 0;
    std::string mode = "exact";
    bool zero_polynomial = false;
    int degree = -1;
    bool rounded = false;
    double max_rel_rounding = 0;
    std::vector<ReportRoot> roots;
    CheckSummary summary;
};

RunReport make_report(const std::string& A, const std::string& B, int ell, int k, const std::string& mode,
                      const TheoremCheck& check);

// Non-finite doubles are written as null and read back as NaN.
nlohmann::ordered_json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace tranroots

#endif  // TRANROOTS_REPORT_HPP
