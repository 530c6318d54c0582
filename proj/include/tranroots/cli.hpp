#ifndef TRANROOTS_CLI_HPP
#define TRANROOTS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tranroots::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/*
 * Entry point of the command line tool; args excludes the program name.
 *
 *   gen     coefficients of P_n
 *   gpoly   G_{l,k,n}, optionally with certified negative roots
 *   roots   roots of P_n as JSON or CSV
 *   verify  per-root curve membership report (exit 1 if any root fails)
 *   curve   trace Im(B^k/A^l) = 0, the l = 1 region, or the BKW zero set
 *   plot    curve plus roots of P_n as SVG
 *
 * Results go to --out when given, otherwise to out. Diagnostics go to err.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tranroots::cli

#endif  // TRANROOTS_CLI_HPP
