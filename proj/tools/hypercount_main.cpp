#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hypercount/verify.hpp"

using namespace hypercount;

namespace {

FqElem parse_element(const FieldCtx& F, const std::string& s) {
    if (s.find(':') == std::string::npos) return F.from_int(std::stoll(s));
    std::vector<int> coeffs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) coeffs.push_back(std::stoi(tok));
    return F.from_coeffs(coeffs);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

// "auto", absolute "12", or relative "+4" on the default rule
void parse_precision(const std::string& s, std::optional<int>& absolute, int& delta) {
    if (s.empty() || s == "auto") return;
    if (s[0] == '+') {
        delta = std::stoi(s.substr(1));
        return;
    }
    absolute = std::stoi(s);
}

std::vector<FieldSpec> parse_field_list(const std::string& qlist, int p_flag, int r_flag) {
    std::vector<FieldSpec> fields;
    if (!qlist.empty()) {
        for (const auto& tok : split(qlist, ',')) {
            auto dash = tok.find('-');
            if (dash != std::string::npos && dash > 0) {
                long long lo = std::stoll(tok.substr(0, dash));
                long long hi = std::stoll(tok.substr(dash + 1));
                for (long long q = lo; q <= hi; ++q) {
                    try {
                        fields.push_back(field_spec_from_q(q));
                    } catch (const Error&) {
                        // not an odd prime power; ranges skip those silently
                    }
                }
            } else {
                fields.push_back(field_spec_from_q(std::stoll(tok)));
            }
        }
    }
    if (p_flag > 0) fields.push_back(FieldSpec{p_flag, std::max(1, r_flag)});
    if (fields.empty())
        throw Error(ErrorCode::BadParams, "no fields given; use --q or --p/--r");
    return fields;
}

int cmd_count(int p, int r, const std::string& coeffs_arg, const std::string& precision,
              int size_cap) {
    auto F = FieldCtx::build(p, r, size_cap);
    auto toks = split(coeffs_arg, ',');
    if (toks.size() != 6)
        throw Error(ErrorCode::BadParams, "--coeffs needs exactly six values a,b,c,d,e,f");
    CurveParams cp{parse_element(F, toks[0]), parse_element(F, toks[1]),
                   parse_element(F, toks[2]), parse_element(F, toks[3]),
                   parse_element(F, toks[4]), parse_element(F, toks[5])};
    validate_curve(F, cp);

    long long brute = brute_count(F, cp);
    std::cout << "brute=" << brute << "\n";

    if (!af_eq_ce(F, cp)) {
        std::cout << "formula=none (af != ce is outside the formula family)\n";
        return 0;
    }
    std::optional<int> M;
    int delta = 0;
    parse_precision(precision, M, delta);

    CountResult res;
    const char* label;
    if (!F.is_zero(discriminant(F, cp))) {
        res = mt1_count(F, cp);
        label = "mt1";
    } else {
        auto P = PadicCtx::init(F, M.has_value() || delta
                                       ? std::optional<int>(M.value_or(PadicCtx::auto_precision(F)) + delta)
                                       : std::nullopt);
        res = mt6_count(F, P, cp);
        label = "mt6";
    }
    std::cout << label << "=" << res.count << "\n";
    std::cout << "breakdown:";
    for (const auto& [k, v] : res.terms) std::cout << ' ' << k << '=' << v;
    std::cout << "\n";
    return res.count == brute ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& out_path, std::string format) {
    Report report = run_verify(cfg);
    if (format.empty()) format = out_path.empty() ? "text" : "json";
    std::string rendered;
    if (format == "json") rendered = report.to_json();
    else if (format == "csv") rendered = report.to_csv();
    else if (format == "text") rendered = report.to_text();
    else throw Error(ErrorCode::BadParams, "unknown format: " + format);

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorCode::BadParams, "cannot open output file " + out_path);
        out << rendered;
        std::cout << report.to_text();
    } else {
        std::cout << rendered;
    }
    return report.summary.fail == 0 ? 0 : 1;
}

int cmd_gfun(int p, int r, const std::string& set, const std::string& t_arg,
             const std::string& precision, int size_cap) {
    auto F = FieldCtx::build(p, r, size_cap);
    FqElem t = parse_element(F, t_arg);
    std::optional<int> M;
    int delta = 0;
    parse_precision(precision, M, delta);
    auto P = PadicCtx::init(F, std::optional<int>(M.value_or(PadicCtx::auto_precision(F)) + delta));

    std::vector<Rat> upper, lower;
    if (set == "G") {
        upper = PadicCtx::g_upper();
        lower = PadicCtx::g_lower();
    } else if (set == "half") {
        upper = PadicCtx::half_upper();
        lower = PadicCtx::half_lower();
    } else {
        throw Error(ErrorCode::BadParams, "--set must be G or half");
    }

    try {
        auto rec = P.ngn(upper, lower, t);
        std::cout << "value=" << rec.str() << "\n";
        if (set == "G") std::cout << "closed_form=" << g_closed_form(F, t) << "\n";
    } catch (const Error& e) {
        if (e.code() == ErrorCode::RecognitionFailure) {
            std::cerr << "recognition failure: " << e.what() << "\n";
            return 1;
        }
        throw;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-count and identity verifier for the curve family "
                 "a y^2 + b x^2 + c xy = d + e x^2 y^2 + f x^3 y"};
    app.require_subcommand(1);

    // count
    auto* count = app.add_subcommand("count", "brute-force and formula point counts");
    int c_p = 0, c_r = 1, c_cap = FieldCtx::kDefaultSizeCap;
    std::string c_coeffs, c_precision = "auto";
    count->add_option("--p", c_p, "field characteristic (odd prime)")->required();
    count->add_option("--r", c_r, "extension degree");
    count->add_option("--coeffs", c_coeffs, "a,b,c,d,e,f (extension elements as c0:c1:...)")
        ->required();
    count->add_option("--precision", c_precision, "p-adic precision: auto, N, or +N");
    count->add_option("--size-cap", c_cap, "maximum field size");

    // verify
    auto* verify = app.add_subcommand("verify", "run verification campaigns");
    std::string v_q, v_families, v_out, v_format, v_precision = "auto";
    int v_p = 0, v_r = 1, v_samples = 50, v_jobs = 1, v_cap = FieldCtx::kDefaultSizeCap;
    uint64_t v_seed = 0;
    double v_tol = -1;
    verify->add_option("--q", v_q, "comma list of sizes or lo-hi ranges, e.g. 5,9,13 or 5-30");
    verify->add_option("--p", v_p, "single field: characteristic");
    verify->add_option("--r", v_r, "single field: extension degree");
    verify->add_option("--families", v_families,
                       "comma list from mt1,mt6,cor_1_4,cor_1_5,cor_1_6,cor_2,bs1,identities");
    verify->add_option("--samples", v_samples, "tuples per family per field");
    verify->add_option("--seed", v_seed, "sampler seed");
    verify->add_option("--precision", v_precision, "p-adic precision: auto, N, or +N");
    verify->add_option("--tolerance", v_tol, "tolerance coefficient (default 1e-6)");
    verify->add_option("--jobs", v_jobs, "parallel field workers");
    verify->add_option("--out", v_out, "report file path");
    verify->add_option("--format", v_format, "json, csv, or text");
    verify->add_option("--size-cap", v_cap, "maximum field size");

    // gfun
    auto* gfun = app.add_subcommand("gfun", "evaluate the p-adic hypergeometric value");
    int g_p = 0, g_r = 1, g_cap = FieldCtx::kDefaultSizeCap;
    std::string g_set = "G", g_t, g_precision = "auto";
    gfun->add_option("--p", g_p, "field characteristic (odd prime)")->required();
    gfun->add_option("--r", g_r, "extension degree");
    gfun->add_option("--set", g_set, "parameter list: G or half");
    gfun->add_option("--t", g_t, "argument (field element)")->required();
    gfun->add_option("--precision", g_precision, "p-adic precision: auto, N, or +N");
    gfun->add_option("--size-cap", g_cap, "maximum field size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (count->parsed()) return cmd_count(c_p, c_r, c_coeffs, c_precision, c_cap);
        if (gfun->parsed()) return cmd_gfun(g_p, g_r, g_set, g_t, g_precision, g_cap);
        if (verify->parsed()) {
            RunConfig cfg;
            cfg.fields = parse_field_list(v_q, v_p, v_r);
            if (!v_families.empty()) cfg.families = split(v_families, ',');
            cfg.samples = v_samples;
            cfg.seed = v_seed;
            parse_precision(v_precision, cfg.precision, cfg.precision_delta);
            if (v_tol >= 0) cfg.tolerance = v_tol;
            cfg.jobs = v_jobs;
            cfg.size_cap = v_cap;
            return cmd_verify(cfg, v_out, v_format);
        }
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::RecognitionFailure:
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            default:
                std::cerr << "usage error: " << e.what() << "\n";
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
