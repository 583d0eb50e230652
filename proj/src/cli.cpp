#include "calabi/cli.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calabi/bell.hpp"
#include "calabi/diastasis.hpp"
#include "calabi/exact.hpp"
#include "calabi/inequality.hpp"
#include "calabi/potential.hpp"

namespace calabi::cli {

namespace {

using nlohmann::json;

// Flag values that fail to parse; reported as usage errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational parse_rational_flag(const std::string& flag, const std::string& text)
{
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("--" + flag + ": expected a rational p or p/q, got '" + text + "'");
    }
}

std::vector<Rational> parse_rational_list(const std::string& flag, const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rational_flag(flag, item));
    if (out.empty())
        throw UsageError("--" + flag + ": expected a comma-separated list of rationals");
    return out;
}

double parse_decimal(const std::string& flag, const std::string& text)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw UsageError("--" + flag + ": expected a decimal number, got '" + text + "'");
    return value;
}

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void print_json(std::ostream& out, const json& j)
{
    out << j.dump(2) << '\n';
}

struct Common {
    std::string format = "table";
};

void add_format(CLI::App* sub, Common& common)
{
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
}

// --- bell -------------------------------------------------------------------

struct BellArgs {
    Common common;
    int r = 0;
    std::optional<int> j;
    std::string x;
    std::string method = "recurrence";
};

int run_bell(const BellArgs& a, std::ostream& out)
{
    const InputSequence x(parse_rational_list("x", a.x));
    Rational value;
    if (!a.j) {
        value = complete_bell(a.r, x);
    } else if (a.method == "partition") {
        value = partial_bell_partition(a.r, *a.j, x);
    } else {
        value = partial_bell_recurrence(a.r, *a.j, x);
        if (a.method == "both" && partial_bell_partition(a.r, *a.j, x) != value)
            throw std::runtime_error("partition and recurrence Bell values disagree");
    }

    if (a.common.format == "json") {
        json j{{"r", a.r}, {"value", value.to_string()}};
        j["j"] = a.j ? json(*a.j) : json(nullptr);
        print_json(out, j);
    } else if (a.common.format == "csv") {
        out << "r,j,value\n" << a.r << ',' << (a.j ? std::to_string(*a.j) : std::string()) << ',' << value << '\n';
    } else {
        out << value << '\n';
    }
    return ok;
}

// --- useries ----------------------------------------------------------------

struct SeriesArgs {
    Common common;
    int n = 2;
    std::string k0;
    std::string c;
    int order = 4;
    std::string method = "both";
    std::vector<std::string> eval;
};

int run_useries(const SeriesArgs& a, std::ostream& out)
{
    const CalabiParams params(a.n, parse_rational_flag("k0", a.k0), parse_rational_flag("c", a.c));

    std::vector<double> points;
    for (const auto& e : a.eval)
        points.push_back(parse_decimal("eval", e));

    CoefficientSequence seq = a.method == "closed" ? u_coeffs_closed(params, a.order)
                              : a.method == "ode"  ? u_coeffs_ode(params, a.order)
                                                   : u_coeffs(params, a.order);
    const bool both = a.method == "both";

    const ClosedFormEvaluator eval(params);
    std::vector<ClosedFormEvaluator::ConditionCheck> checks;
    for (double x : points) {
        if (x < 0)
            throw UsageError("--eval: x must be >= 0");
        checks.push_back(eval.conditions(x));
    }
    auto value_at = [&](double x) { return eval.evaluate(x).value; };

    if (a.common.format == "json") {
        json coeffs = json::array();
        for (const auto& v : seq.values)
            coeffs.push_back(v.to_string());
        json j{{"n", a.n},
               {"k0", params.k0().to_string()},
               {"c", params.c().to_string()},
               {"order", a.order},
               {"method", a.method},
               {"coefficients", coeffs}};
        if (both)
            j["methods_agree"] = true;
        json evals = json::array();
        for (const auto& chk : checks)
            evals.push_back({{"x", chk.x},
                             {"u", value_at(chk.x)},
                             {"imag_residue", chk.imag_residue},
                             {"condition_i_first", chk.first},
                             {"condition_i_second", chk.second},
                             {"condition_ii_residual", chk.residual}});
        if (!checks.empty())
            j["eval"] = evals;
        print_json(out, j);
    } else if (a.common.format == "csv") {
        out << "j,a_j\n";
        for (int k = 1; k <= seq.order(); ++k)
            out << k << ',' << seq.a(k) << '\n';
    } else {
        for (int k = 1; k <= seq.order(); ++k)
            out << "a_" << k << " = " << seq.a(k) << '\n';
        if (both)
            out << "methods agree\n";
        for (const auto& chk : checks) {
            out << "u(" << format_double(chk.x) << ") = " << format_double(value_at(chk.x))
                << "  imag residue " << format_double(chk.imag_residue) << '\n'
                << "  1 + k0 x u' = " << format_double(chk.first) << ", u' + x u'' = " << format_double(chk.second)
                << '\n'
                << "  condition (ii) relative residual " << format_double(chk.residual) << '\n';
        }
    }
    return ok;
}

// --- hr ---------------------------------------------------------------------

struct HrArgs {
    Common common;
    int n = 2;
    std::string k0;
    std::string c;
    std::string m = "1";
    std::optional<int> r;
    int r_max = 4;
};

int run_hr(const HrArgs& a, std::ostream& out)
{
    const CalabiParams params(a.n, parse_rational_flag("k0", a.k0), parse_rational_flag("c", a.c));
    const Rational m = parse_rational_flag("m", a.m);
    std::vector<HrValue> values;
    if (a.r) {
        values.push_back(h_r(params, m, *a.r));
    } else {
        values = h_values(params, m, a.r_max);
    }

    if (a.common.format == "json") {
        json rows = json::array();
        for (const auto& h : values)
            rows.push_back({{"r", h.r}, {"h", h.value.to_string()}});
        print_json(out, {{"n", a.n},
                         {"k0", params.k0().to_string()},
                         {"c", params.c().to_string()},
                         {"m", m.to_string()},
                         {"normalization", "h_r = (1/r!) sum_j m^j B_{r,j}(a)"},
                         {"values", rows}});
    } else if (a.common.format == "csv") {
        out << "r,h\n";
        for (const auto& h : values)
            out << h.r << ',' << h.value << '\n';
    } else {
        out << "# h_r(u,m) = (1/r!) sum_j m^j B_{r,j}(a_1..a_r); r! > 0 so signs match r! sum_j m^j B_{r,j}\n";
        for (const auto& h : values)
            out << "h_" << h.r << " = " << h.value << '\n';
    }
    return ok;
}

// --- scan -------------------------------------------------------------------

struct ScanArgs {
    Common common;
    int n = 2;
    std::string q;
    std::string grid;
    int r_max = default_scan_r_max;
};

void print_scan_table(std::ostream& out, const ScanReport& report)
{
    out << "n = " << report.n << ", q = " << report.q << '\n';
    for (const auto& row : report.rows)
        out << "S(" << row.r << ") = " << row.value << '\n';
    if (report.min_negative_r)
        out << "min_negative_r = " << *report.min_negative_r << '\n';
    else
        out << "not found <= " << report.r_max << '\n';
}

int run_scan(const ScanArgs& a, std::ostream& out)
{
    if (a.q.empty() == a.grid.empty())
        throw UsageError("scan: give exactly one of --q or --grid");

    if (a.q.empty()) {
        const auto qs = parse_rational_list("grid", a.grid);
        const auto reports = scan_grid(a.n, qs, a.r_max);
        if (a.common.format == "json") {
            json arr = json::array();
            for (const auto& rep : reports)
                arr.push_back(to_json(rep));
            print_json(out, arr);
        } else if (a.common.format == "csv") {
            out << "q,r,S\n";
            for (const auto& rep : reports)
                for (const auto& row : rep.rows)
                    out << rep.q << ',' << row.r << ',' << row.value << '\n';
        } else {
            for (const auto& rep : reports)
                print_scan_table(out, rep);
        }
        return ok;
    }

    const auto report = min_negative_r(a.n, parse_rational_flag("q", a.q), a.r_max);
    if (a.common.format == "json")
        print_json(out, to_json(report));
    else if (a.common.format == "csv")
        out << to_csv(report);
    else
        print_scan_table(out, report);
    return ok;
}

// --- blocks -----------------------------------------------------------------

struct BlocksArgs {
    Common common;
    int d = 1;
    int lambda = 1;
    std::string c = "1";
    int r_max = 6;
    int cutoff = default_block_cutoff;
};

int run_blocks(const BlocksArgs& a, std::ostream& out)
{
    const FubiniStudyBase base(a.d, a.lambda);
    const auto report = eh_block_scan(base, parse_rational_flag("c", a.c), a.r_max, a.cutoff);
    if (a.common.format == "json") {
        print_json(out, to_json(report));
    } else if (a.common.format == "csv") {
        out << "r,scale,verdict\n";
        for (const auto& b : report.blocks)
            out << b.r << ',' << b.scale.value << ',' << to_string(b.verdict) << '\n';
    } else {
        out << "d = " << a.d << ", lambda = " << a.lambda << ", k0 = " << report.k0 << ", c = " << report.c << '\n';
        for (const auto& b : report.blocks) {
            out << "r = " << b.r << ": scale " << b.scale.value << ", N = " << b.base_matrix.exponent << ", "
                << to_string(b.verdict) << '\n';
        }
        out << report.diagnostic() << '\n';
    }
    return ok;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Bell-polynomial and Calabi-potential computations", "calabi"};
    app.require_subcommand(1);

    BellArgs bell;
    auto* bell_cmd = app.add_subcommand("bell", "Partial Bell B_{r,j}(x), or complete Y_r(x) without --j");
    bell_cmd->add_option("--r", bell.r, "Degree r")->required();
    bell_cmd->add_option("--j", bell.j, "Weight j");
    bell_cmd->add_option("--x", bell.x, "Comma-separated rationals x_1,x_2,...")->required();
    bell_cmd->add_option("--method", bell.method, "Algorithm for B_{r,j}")
        ->check(CLI::IsMember({"recurrence", "partition", "both"}))
        ->capture_default_str();
    add_format(bell_cmd, bell.common);

    SeriesArgs series;
    auto* series_cmd = app.add_subcommand("useries", "Taylor coefficients a_j = u^(j)(0) of Calabi's potential");
    series_cmd->add_option("--n", series.n, "Complex dimension n >= 2")->required();
    series_cmd->add_option("--k0", series.k0, "Einstein constant k0 > 0 (rational)")->required();
    series_cmd->add_option("--c", series.c, "Constant c > 0 (rational)")->required();
    series_cmd->add_option("--order", series.order, "Number of coefficients")->capture_default_str();
    series_cmd->add_option("--method", series.method, "Coefficient route")
        ->check(CLI::IsMember({"closed", "ode", "both"}))
        ->capture_default_str();
    series_cmd->add_option("--eval", series.eval, "Evaluate the closed form at decimal x >= 0 (repeatable)");
    add_format(series_cmd, series.common);

    HrArgs hr;
    auto* hr_cmd = app.add_subcommand("hr", "Block constants h_r(u, m)");
    hr_cmd->add_option("--n", hr.n, "Complex dimension n >= 2")->required();
    hr_cmd->add_option("--k0", hr.k0, "Einstein constant k0 > 0 (rational)")->required();
    hr_cmd->add_option("--c", hr.c, "Constant c > 0 (rational)")->required();
    hr_cmd->add_option("--m", hr.m, "Multiple m > 0 (rational)")->capture_default_str();
    auto* hr_r = hr_cmd->add_option("--r", hr.r, "Single r >= 1");
    hr_cmd->add_option("--rmax", hr.r_max, "All r = 1..rmax")->capture_default_str()->excludes(hr_r);
    add_format(hr_cmd, hr.common);

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Least r with (-1)^r sum_j (-q)^j B_{r,j}(x) < 0");
    scan_cmd->add_option("--n", scan.n, "n >= 2")->required();
    scan_cmd->add_option("--q", scan.q, "q > 0 (rational)");
    scan_cmd->add_option("--grid", scan.grid, "Comma-separated q values, scanned concurrently");
    scan_cmd->add_option("--rmax", scan.r_max, "Largest r to try")->capture_default_str();
    add_format(scan_cmd, scan.common);

    BlocksArgs blocks;
    auto* blocks_cmd = app.add_subcommand("blocks", "Diastasis blocks over (CP^d, lambda g_FS)");
    blocks_cmd->add_option("--d", blocks.d, "Base dimension d >= 1")->capture_default_str();
    blocks_cmd->add_option("--lambda", blocks.lambda, "Metric multiple lambda >= 1")->capture_default_str();
    blocks_cmd->add_option("--c", blocks.c, "Constant c > 0 (rational)")->capture_default_str();
    blocks_cmd->add_option("--rmax", blocks.r_max, "Blocks r = 0..rmax")->capture_default_str();
    blocks_cmd->add_option("--cutoff", blocks.cutoff, "Monomial degree cutoff")->capture_default_str();
    add_format(blocks_cmd, blocks.common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (bell_cmd->parsed())
            return run_bell(bell, out);
        if (series_cmd->parsed())
            return run_useries(series, out);
        if (hr_cmd->parsed())
            return run_hr(hr, out);
        if (scan_cmd->parsed())
            return run_scan(scan, out);
        if (blocks_cmd->parsed())
            return run_blocks(blocks, out);
    } catch (const MethodDisagreement& e) {
        err << "diagnostic: " << e.what() << '\n';
        return internal_diagnostic;
    } catch (const BranchDiagnostic& e) {
        err << "diagnostic: " << e.what() << '\n';
        return internal_diagnostic;
    } catch (const std::logic_error& e) {
        // invalid_argument, out_of_range, domain_error (DivisionByZero)
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "diagnostic: " << e.what() << '\n';
        return internal_diagnostic;
    }
    err << app.help();
    return usage_error;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace calabi::cli
