#include "tranroots/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tranroots/curve.hpp"
#include "tranroots/errors.hpp"
#include "tranroots/gpoly.hpp"
#include "tranroots/parse.hpp"
#include "tranroots/recurrence.hpp"
#include "tranroots/report.hpp"
#include "tranroots/rootfind.hpp"
#include "tranroots/svg.hpp"
#include "tranroots/verify.hpp"

namespace tranroots::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string A, B;
    int l = 0, k = 0, n = -1;
    std::string mode = "exact";
    bool auto_reduce = false;
    std::string box;
    int grid = 512;
    double tol = 1e-6;
    double eps_ab = 1e-9;
    double residual_tol = 1e-8;
    int max_iters = 200;
    std::string out;
    bool roots = false;
    std::string format = "json";
    std::string kind = "im";
    bool refine = false;
};

struct Resolved {
    bool exact = true;
    IntSpec ispec;
    ComplexSpec cspec;
    int dilation = 1;
    // index into the reduced sequence, or -1 when the term vanishes identically
    int n_eff = -1;
};

ToleranceConfig tolerances(const Options& o)
{
    ToleranceConfig cfg;
    cfg.curve_im_tol = o.tol;
    cfg.ab_exclusion_eps = o.eps_ab;
    cfg.root_residual_tol = o.residual_tol;
    cfg.max_aberth_iters = o.max_iters;
    cfg.validate();
    return cfg;
}

IntPoly parse_int(const std::string& text, const char* name)
{
    Poly p = parse_poly(text);
    if (const auto* ip = std::get_if<IntPoly>(&p))
        return *ip;
    throw UsageError(std::string("--") + name + " has non-integer coefficients; use --mode float");
}

ComplexPoly parse_complex(const std::string& text)
{
    return to_complex_poly(parse_poly(text));
}

Resolved resolve(const Options& o, bool need_n)
{
    if (o.A.empty() || o.B.empty())
        throw UsageError("--A and --B are required");
    if (need_n && o.n < 0)
        throw UsageError("--n is required and must be nonnegative");
    Resolved r;
    r.exact = o.mode == "exact";
    const int d = gcd(o.l, o.k);
    if (d != 1 && !o.auto_reduce)
        throw UsageError("(l, k) = (" + std::to_string(o.l) + ", " + std::to_string(o.k) +
                         ") are not coprime; pass --auto-reduce to work with the reduced recurrence");
    if (r.exact) {
        IntPoly A = parse_int(o.A, "A"), B = parse_int(o.B, "B");
        if (d != 1) {
            auto red = reduce_spec(A, B, o.l, o.k);
            r.ispec = red.spec;
            r.dilation = red.dilation;
        } else {
            r.ispec = IntSpec::make(A, B, o.l, o.k);
        }
        r.cspec = to_complex(r.ispec);
    } else {
        ComplexPoly A = parse_complex(o.A), B = parse_complex(o.B);
        if (d != 1) {
            auto red = reduce_spec(A, B, o.l, o.k);
            r.cspec = red.spec;
            r.dilation = red.dilation;
        } else {
            r.cspec = ComplexSpec::make(A, B, o.l, o.k);
        }
    }
    if (o.n >= 0)
        r.n_eff = o.n % r.dilation == 0 ? o.n / r.dilation : -1;
    return r;
}

json big(const mpz_class& v)
{
    if (v.fits_slong_p())
        return json(v.get_si());
    return json(v.get_str());
}

json num(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string csv_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json spec_echo(const Options& o)
{
    return json{{"A", o.A}, {"B", o.B}, {"l", o.l}, {"k", o.k}, {"n", o.n}};
}

void warn_rounding(std::ostream& err, bool rounded, double rel)
{
    if (rounded)
        err << "warning: integer coefficients exceed double precision (max relative rounding " << rel
            << "); roots are refined against the exact coefficients\n";
}

Box parse_box(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size())
                throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError("--box expects x0,y0,x1,y1");
        }
    }
    if (v.size() != 4)
        throw UsageError("--box expects x0,y0,x1,y1");
    Box b{v[0], v[1], v[2], v[3]};
    if (!(b.width() > 0) || !(b.height() > 0))
        throw UsageError("--box must satisfy x0 < x1 and y0 < y1");
    return b;
}

void write_result(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + o.out + " for writing");
    f << text;
    if (!f)
        throw IoError("failed writing " + o.out);
}

// --- gen -------------------------------------------------------------------

int cmd_gen(const Options& o, std::ostream& out, std::ostream&)
{
    const Resolved r = resolve(o, true);
    json j{{"spec", spec_echo(o)}, {"mode", o.mode}};
    if (r.exact) {
        const IntPoly p = r.n_eff < 0 ? IntPoly{} : recurrence_term(r.ispec, r.n_eff);
        json c = json::array();
        for (const auto& x : p.coeffs())
            c.push_back(big(x));
        j["degree"] = p.degree();
        j["coefficients"] = c;
        j["polynomial"] = format_poly(p);
    } else {
        const ComplexPoly p = r.n_eff < 0 ? ComplexPoly{} : recurrence_term(r.cspec, r.n_eff);
        json c = json::array();
        for (const auto& x : p.coeffs())
            c.push_back(json::array({num(x.real()), num(x.imag())}));
        j["degree"] = p.degree();
        j["coefficients"] = c;
        j["polynomial"] = format_poly(p);
    }
    write_result(o, j.dump(2) + "\n", out);
    return kExitOk;
}

// --- gpoly -----------------------------------------------------------------

const char* method_name(RootCertificate m)
{
    switch (m) {
    case RootCertificate::sign_alternation: return "sign_alternation";
    case RootCertificate::sturm: return "sturm";
    case RootCertificate::none: return "none";
    }
    return "none";
}

int cmd_gpoly(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.n < 0)
        throw UsageError("--n is required and must be nonnegative");
    if (gcd(o.l, o.k) != 1)
        throw UsageError("(l, k) are not coprime");
    const GPoly g = g_poly(o.l, o.k, o.n);
    json lattice = json::array();
    for (const auto& p : g.lattice.solutions)
        lattice.push_back(json::array({p.i, p.j}));
    json c = json::array();
    for (const auto& x : g.coeffs.coeffs())
        c.push_back(big(x));
    json j{{"l", o.l}, {"k", o.k}, {"n", o.n}, {"lattice", lattice}, {"coefficients", c},
           {"polynomial", format_poly(g.coeffs)}};
    int code = kExitOk;
    if (o.roots) {
        const NegativeRoots nr = real_negative_roots(g);
        json roots = json::array();
        for (double x : nr.roots)
            roots.push_back(num(x));
        j["roots"] = roots;
        j["certified"] = nr.certified;
        j["method"] = method_name(nr.method);
        if (!nr.warning.empty())
            err << "warning: " << nr.warning << "\n";
    }
    write_result(o, j.dump(2) + "\n", out);
    return code;
}

// --- roots -----------------------------------------------------------------

struct SolvedRoots {
    int degree = -1;
    RootSet set;
};

SolvedRoots solve_pn(const Resolved& r, const ToleranceConfig& cfg, std::ostream& err)
{
    SolvedRoots s;
    if (r.n_eff < 0)
        return s;
    if (r.exact) {
        const IntPoly p = recurrence_term(r.ispec, r.n_eff);
        s.degree = p.degree();
        if (p.degree() < 1)
            return s;
        const ComplexConversion conv = to_complex_scaled(p);
        warn_rounding(err, conv.rounded, conv.max_rel_error);
        s.set = find_roots(p, cfg);
    } else {
        const ComplexPoly p = recurrence_term(r.cspec, r.n_eff);
        s.degree = p.degree();
        if (p.degree() < 1)
            return s;
        s.set = find_roots(p, cfg);
    }
    return s;
}

int cmd_roots(const Options& o, std::ostream& out, std::ostream& err)
{
    const ToleranceConfig cfg = tolerances(o);
    const Resolved r = resolve(o, true);
    const SolvedRoots s = solve_pn(r, cfg, err);
    if (s.degree < 0)
        err << "note: P_" << o.n << " is the zero polynomial; no roots reported\n";
    if (o.format == "csv") {
        std::string text = "re,im,residual,multiplicity\n";
        for (const auto& x : s.set.roots)
            text += csv_num(x.value.real()) + "," + csv_num(x.value.imag()) + "," + csv_num(x.residual) + "," +
                    std::to_string(x.multiplicity) + "\n";
        write_result(o, text, out);
        return kExitOk;
    }
    json roots = json::array();
    for (const auto& x : s.set.roots)
        roots.push_back({{"re", num(x.value.real())},
                         {"im", num(x.value.imag())},
                         {"residual", num(x.residual)},
                         {"multiplicity", x.multiplicity}});
    json j{{"spec", spec_echo(o)},
           {"mode", o.mode},
           {"zero_polynomial", s.degree < 0},
           {"degree", s.degree},
           {"converged", s.degree < 1 || s.set.converged},
           {"roots", roots}};
    write_result(o, j.dump(2) + "\n", out);
    return kExitOk;
}

// --- verify ----------------------------------------------------------------

TheoremCheck run_check(const Resolved& r, int n, const ToleranceConfig& cfg)
{
    if (r.n_eff < 0) {
        TheoremCheck t;
        t.n = n;
        t.zero_polynomial = true;
        return t;
    }
    TheoremCheck t = r.exact ? check_theorem(r.ispec, r.n_eff, cfg) : check_theorem(r.cspec, r.n_eff, cfg);
    t.n = n;
    return t;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    const ToleranceConfig cfg = tolerances(o);
    const Resolved r = resolve(o, true);
    const TheoremCheck t = run_check(r, o.n, cfg);
    warn_rounding(err, t.rounded, t.max_rel_rounding);
    if (t.zero_polynomial)
        err << "note: P_" << o.n << " is the zero polynomial; nothing to verify\n";
    const RunReport rep = make_report(o.A, o.B, o.l, o.k, o.mode, t);
    if (o.format == "csv") {
        std::string text = "re,im,residual,im_abs,signed_value,near_ab_zero,on_curve,multiplicity\n";
        for (const auto& x : rep.roots)
            text += csv_num(x.re) + "," + csv_num(x.im) + "," + csv_num(x.residual) + "," + csv_num(x.im_abs) + "," +
                    csv_num(x.signed_value) + "," + (x.near_ab_zero ? "true" : "false") + "," +
                    (x.on_curve ? "true" : "false") + "," + std::to_string(x.multiplicity) + "\n";
        write_result(o, text, out);
    } else {
        write_result(o, to_json(rep).dump(2) + "\n", out);
    }
    if (rep.summary.failed_count > 0) {
        err << "verification failed for " << rep.summary.failed_count << " of " << rep.summary.total << " roots\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

// --- curve / plot ----------------------------------------------------------

std::vector<cplx> check_points(const TheoremCheck& t)
{
    std::vector<cplx> pts;
    for (const auto& rc : t.roots)
        pts.push_back(rc.z);
    return pts;
}

Box choose_box(const Options& o, const std::vector<cplx>& roots)
{
    if (!o.box.empty())
        return parse_box(o.box);
    if (o.n < 0)
        throw UsageError("--box is required when --n is not given");
    double radius = 1.0;
    for (const cplx& z : roots)
        radius = std::max(radius, std::abs(z));
    return default_box(radius);
}

CurveSegments trace_kind(const Options& o, const Resolved& r, const Box& box, const ToleranceConfig& cfg)
{
    if (o.grid < 2)
        throw UsageError("--grid must be at least 2");
    TraceOptions topts;
    topts.refine_crossings = o.refine;
    const ComplexPoly& A = r.cspec.A;
    const ComplexPoly& B = r.cspec.B;
    const int ell = r.cspec.ell, k = r.cspec.k;
    if (o.kind == "im")
        return trace_curve(im_curve_field(A, B, ell, k), box, o.grid, o.grid, topts);
    if (o.kind == "tran") {
        if (ell != 1)
            throw UsageError("--kind tran needs l = 1");
        return trace_curve(tran_region_field(A, B, k), box, o.grid, o.grid, topts);
    }
    const auto Q = tran_symbol(A, B, ell, k);
    return trace_bkw_curve(Q, box, o.grid, o.grid, cfg, topts);
}

json segments_json(const CurveSegments& c)
{
    json segs = json::array();
    for (const auto& poly : c.segments) {
        json line = json::array();
        for (const cplx& z : poly)
            line.push_back(json::array({num(z.real()), num(z.imag())}));
        segs.push_back(line);
    }
    return segs;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream&)
{
    const ToleranceConfig cfg = tolerances(o);
    const Resolved r = resolve(o, false);
    std::vector<cplx> roots;
    if (o.box.empty() && o.n >= 0)
        roots = check_points(run_check(r, o.n, cfg));
    const Box box = choose_box(o, roots);
    const CurveSegments c = trace_kind(o, r, box, cfg);
    json j{{"spec", spec_echo(o)},
           {"kind", o.kind},
           {"box", json::array({box.re_min, box.im_min, box.re_max, box.im_max})},
           {"grid", o.grid},
           {"segments", segments_json(c)}};
    write_result(o, j.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_plot(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.out.empty())
        throw UsageError("plot needs --out PATH for the SVG");
    const ToleranceConfig cfg = tolerances(o);
    const Resolved r = resolve(o, true);
    const TheoremCheck t = run_check(r, o.n, cfg);
    warn_rounding(err, t.rounded, t.max_rel_rounding);
    const std::vector<cplx> roots = check_points(t);
    const Box box = choose_box(o, roots);
    const CurveSegments c = trace_kind(o, r, box, cfg);
    emit_svg(c, roots, o.out);

    double worst = 0;
    int inside = 0;
    for (const cplx& z : roots) {
        if (!box.contains(z))
            continue;
        ++inside;
        worst = std::max(worst, distance_to_curve(c, z));
    }
    json j{{"svg", o.out},
           {"roots", roots.size()},
           {"roots_in_box", inside},
           {"cell_diagonal", num(c.cell_diagonal())},
           {"max_root_distance", num(worst)},
           {"roots_within_cell", worst <= c.cell_diagonal()},
           {"polylines", c.segments.size()}};
    out << j.dump(2) << "\n";
    return kExitOk;
}

// --- wiring ----------------------------------------------------------------

void add_spec(CLI::App* sub, Options& o, bool need_n)
{
    sub->add_option("--A", o.A, "polynomial A(z)");
    sub->add_option("--B", o.B, "polynomial B(z)");
    sub->add_option("--l", o.l, "lag ell")->required();
    sub->add_option("--k", o.k, "lag k")->required();
    auto* n = sub->add_option("--n", o.n, "index n");
    if (need_n)
        n->required();
    sub->add_option("--mode", o.mode, "coefficient domain")->check(CLI::IsMember({"exact", "float"}));
    sub->add_flag("--auto-reduce", o.auto_reduce, "divide (l, k) by their gcd instead of failing");
}

void add_tolerances(CLI::App* sub, Options& o)
{
    sub->add_option("--tol", o.tol, "relative |Im f| tolerance for curve membership");
    sub->add_option("--eps-ab", o.eps_ab, "relative exclusion radius around zeros of A*B");
    sub->add_option("--residual-tol", o.residual_tol, "scaled residual for a converged root");
    sub->add_option("--max-iters", o.max_iters, "Aberth iteration cap");
}

void add_curve(CLI::App* sub, Options& o)
{
    sub->add_option("--box", o.box, "x0,y0,x1,y1");
    sub->add_option("--grid", o.grid, "nodes per axis");
    sub->add_option("--kind", o.kind, "im | tran | bkw")->check(CLI::IsMember({"im", "tran", "bkw"}));
    sub->add_flag("--refine", o.refine, "refine edge crossings on the field");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Roots of three-term polynomial recurrences and the curve Im(B^k/A^l) = 0", "tranroots"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "coefficients of P_n");
    add_spec(gen, o, true);
    gen->add_option("--out", o.out, "output file");

    auto* gp = app.add_subcommand("gpoly", "lattice-path polynomial G_{l,k,n}");
    gp->add_option("--l", o.l, "lag ell")->required();
    gp->add_option("--k", o.k, "lag k")->required();
    gp->add_option("--n", o.n, "index n")->required();
    gp->add_flag("--roots", o.roots, "isolate its negative roots");
    gp->add_option("--out", o.out, "output file");

    auto* rt = app.add_subcommand("roots", "roots of P_n");
    add_spec(rt, o, true);
    add_tolerances(rt, o);
    rt->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    rt->add_option("--out", o.out, "output file");

    auto* vf = app.add_subcommand("verify", "check every root of P_n against the curve");
    add_spec(vf, o, true);
    add_tolerances(vf, o);
    vf->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    vf->add_option("--out", o.out, "output file");

    auto* cv = app.add_subcommand("curve", "trace a curve as polylines");
    add_spec(cv, o, false);
    add_tolerances(cv, o);
    add_curve(cv, o);
    cv->add_option("--out", o.out, "output file");

    auto* pl = app.add_subcommand("plot", "curve and roots of P_n as SVG");
    add_spec(pl, o, true);
    add_tolerances(pl, o);
    add_curve(pl, o);
    pl->add_option("--out", o.out, "SVG file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(o, out, err);
        if (gp->parsed())
            return cmd_gpoly(o, out, err);
        if (rt->parsed())
            return cmd_roots(o, out, err);
        if (vf->parsed())
            return cmd_verify(o, out, err);
        if (cv->parsed())
            return cmd_curve(o, out, err);
        return cmd_plot(o, out, err);
    } catch (const SyntaxError& e) {
        err << "error: malformed polynomial: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace tranroots::cli
