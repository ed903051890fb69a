#include "hypercount/verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hypercount {

using ojson = nlohmann::ordered_json;

namespace {

int log_level() {
    static int level = [] {
        const char* env = std::getenv("HYPERCOUNT_LOG");
        if (!env) return 0;
        std::string v(env);
        if (v == "debug") return 2;
        if (v == "info") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

struct SplitMix {
    uint64_t s;
    explicit SplitMix(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    FqElem nonzero(const FieldCtx& F) {
        return FqElem{static_cast<uint32_t>(1 + next() % (F.q() - 1))};
    }
};

std::string render_curve(const FieldCtx& F, const CurveParams& cp) {
    std::ostringstream os;
    os << "a=" << F.to_string(cp.a) << ",b=" << F.to_string(cp.b) << ",c=" << F.to_string(cp.c)
       << ",d=" << F.to_string(cp.d) << ",e=" << F.to_string(cp.e) << ",f=" << F.to_string(cp.f);
    return os.str();
}

std::string render_edwards(const FieldCtx& F, const EdwardsParams& ep) {
    std::ostringstream os;
    os << "alpha=" << F.to_string(ep.alpha) << ",beta=" << F.to_string(ep.beta)
       << ",k=" << F.to_string(ep.k) << ",ell=" << F.to_string(ep.ell);
    return os.str();
}

std::string render_elliptic(const FieldCtx& F, const EllipticParams& ep) {
    std::ostringstream os;
    os << "h=" << F.to_string(ep.h) << ",g=" << F.to_string(ep.g);
    return os.str();
}

// one curve-family batch: sample, evaluate formula, compare against brute force
void run_curve_family(const FieldCtx& F, const PadicCtx* P, Family family, int samples,
                      uint64_t seed, std::vector<CheckRecord>& out) {
    auto tuples = sample_params(F, family, seed, samples);
    const long long q = F.q();
    for (int i = 0; i < static_cast<int>(tuples.size()); ++i) {
        const auto& t = tuples[i];
        CheckRecord rec;
        rec.family = family_name(family);
        rec.index = i;
        rec.params = render_curve(F, t.curve);
        try {
            rec.brute = brute_count(F, t.curve);
            switch (family) {
                case Family::mt1: {
                    bool both = P != nullptr && q <= 13;
                    auto res = mt1_count(F, t.curve, both ? GPath::both : GPath::fast, P);
                    rec.formula = res.count;
                    rec.terms = std::move(res.terms);
                    rec.g_path = both ? "both" : "fast";
                    break;
                }
                case Family::mt6: {
                    auto res = mt6_count(F, *P, t.curve);
                    rec.formula = res.count;
                    rec.terms = std::move(res.terms);
                    rec.g_path = "padic";
                    break;
                }
                case Family::cor_1_4: {
                    rec.formula = cor_1_4_count(F, t.curve);
                    auto general = mt1_count(F, t.curve);
                    rec.terms = std::move(general.terms);
                    rec.g_path = "fast";
                    if (general.count != rec.formula) {
                        rec.note = "general evaluator disagrees: " + std::to_string(general.count);
                        rec.pass = false;
                        out.push_back(std::move(rec));
                        continue;
                    }
                    break;
                }
                case Family::cor_1_5: {
                    rec.params += ";" + render_edwards(F, *t.edwards);
                    rec.formula = cor_1_5_count(F, *t.edwards);
                    auto general = mt1_count(F, t.curve);
                    rec.terms = std::move(general.terms);
                    rec.g_path = "fast";
                    if (general.count != rec.formula) {
                        rec.note = "general evaluator disagrees: " + std::to_string(general.count);
                        rec.pass = false;
                        out.push_back(std::move(rec));
                        continue;
                    }
                    break;
                }
                case Family::cor_1_6: {
                    rec.formula = cor_1_6_count(F, t.curve);
                    auto general = mt6_count(F, *P, t.curve);
                    rec.terms = std::move(general.terms);
                    rec.g_path = "padic";
                    if (general.count != rec.formula) {
                        rec.note = "general evaluator disagrees: " + std::to_string(general.count);
                        rec.pass = false;
                        out.push_back(std::move(rec));
                        continue;
                    }
                    break;
                }
                case Family::cor_2: {
                    rec.params += ";" + render_elliptic(F, *t.elliptic);
                    rec.formula = cor2_formula_value(F, t.curve, *t.elliptic);
                    rec.g_path = "brute-trace";
                    break;
                }
            }
            rec.pass = rec.brute == rec.formula;
        } catch (const Error& e) {
            rec.pass = false;
            rec.note = std::string(error_code_name(e.code())) + ": " + e.what();
        }
        out.push_back(std::move(rec));
    }
}

void run_bs1_family(const FieldCtx& F, const PadicCtx& P, int samples, uint64_t seed,
                    std::vector<CheckRecord>& out) {
    SplitMix rng(seed ^ 0xb51a000000000000ull);
    for (int i = 0; i < samples; ++i) {
        EllipticParams ep{rng.nonzero(F), rng.nonzero(F)};
        CheckRecord rec;
        rec.family = "bs1";
        rec.index = i;
        rec.params = render_elliptic(F, ep);
        rec.g_path = "padic";
        try {
            rec.brute = trace_of_frobenius(F, ep);
            rec.formula = trace_formula_value(F, P, ep);
            rec.pass = rec.brute == rec.formula;
        } catch (const Error& e) {
            rec.pass = false;
            rec.note = std::string(error_code_name(e.code())) + ": " + e.what();
        }
        out.push_back(std::move(rec));
    }
}

void push_identity(std::vector<CheckRecord>& out, const std::string& name, bool pass,
                   const std::string& domain, double max_defect, double tol) {
    CheckRecord rec;
    rec.family = "identities";
    rec.index = static_cast<int>(out.size());
    rec.params = domain;
    rec.note = name + " max_defect=" + std::to_string(max_defect) +
               " tol=" + std::to_string(tol);
    rec.pass = pass;
    out.push_back(std::move(rec));
}

void run_identities(const FieldCtx& F, const PadicCtx& P, const CharSumCtx& C, int samples,
                    uint64_t seed, std::vector<CheckRecord>& out) {
    const long long q = F.q();
    const int qm1 = static_cast<int>(q) - 1;
    const double tol = C.tolerance();
    SplitMix rng(seed ^ 0x1de57171e5000000ull);
    bool exhaustive = q <= 9;
    int n_random = std::max(samples, 1);

    // orthogonality of characters, both directions
    {
        double worst = 0;
        for (int j = 0; j < qm1; ++j) {
            std::complex<double> s = 0;
            for (uint32_t v = 0; v < F.q(); ++v) s += C.char_eval(j, FqElem{v}).value();
            worst = std::max(worst, std::abs(s - (j == 0 ? double(qm1) : 0.0)));
        }
        for (uint32_t v = 1; v < F.q(); ++v) {
            std::complex<double> s = 0;
            for (int j = 0; j < qm1; ++j) s += C.char_eval(j, FqElem{v}).value();
            worst = std::max(worst, std::abs(s - (v == 1 ? double(qm1) : 0.0)));
        }
        push_identity(out, "orthogonality", worst < tol, "all characters and elements", worst, tol);
    }
    // additive-character expansion over gauss sums, at every nonzero alpha
    {
        double worst = 0;
        for (uint32_t v = 1; v < F.q(); ++v) {
            IdentityParams prm;
            prm.alpha = FqElem{v};
            worst = std::max(worst, C.identity_defect(IdentityId::theta_expansion, prm));
        }
        push_identity(out, "theta_expansion", worst < tol, "all alpha != 0", worst, tol);
    }
    // gauss reflection for every character
    {
        double worst = 0;
        for (int j = 0; j < qm1; ++j) {
            IdentityParams prm;
            prm.j_a = j;
            worst = std::max(worst, C.identity_defect(IdentityId::gauss_reflection, prm));
        }
        push_identity(out, "gauss_reflection", worst < tol, "all characters", worst, tol);
    }
    // jacobi-gauss
    {
        double worst = 0;
        if (q <= 64) {
            for (int j1 = 0; j1 < qm1; ++j1)
                for (int j2 = 0; j2 < qm1; ++j2) {
                    IdentityParams prm;
                    prm.j_a = j1;
                    prm.j_b = j2;
                    worst = std::max(worst, C.identity_defect(IdentityId::jacobi_gauss, prm));
                }
        } else {
            for (int i = 0; i < n_random; ++i) {
                IdentityParams prm;
                prm.j_a = static_cast<int>(rng.next() % qm1);
                prm.j_b = static_cast<int>(rng.next() % qm1);
                worst = std::max(worst, C.identity_defect(IdentityId::jacobi_gauss, prm));
            }
        }
        push_identity(out, "jacobi_gauss", worst < tol, "character pairs", worst, tol);
    }
    // davenport-hasse for m in {2,4} where applicable
    for (int m : {2, 4}) {
        if (qm1 % m != 0) continue;
        double worst = 0;
        for (int j = 0; j < qm1; ++j) {
            IdentityParams prm;
            prm.m = m;
            prm.j_a = j;
            worst = std::max(worst, C.identity_defect(IdentityId::davenport_hasse, prm));
        }
        push_identity(out, "davenport_hasse_m" + std::to_string(m), worst < tol,
                      "all characters", worst, tol);
    }
    // 2F1: character-sum route vs binomial route
    {
        double worst = 0;
        long long tried = 0;
        auto try_one = [&](int ja, int jb, int jc, FqElem x) {
            auto u = C.greene_2f1(ja, jb, jc, x, F21Method::charsum);
            auto v = C.greene_2f1(ja, jb, jc, x, F21Method::binomsum);
            worst = std::max(worst, std::abs(u.value() - v.value()));
            ++tried;
        };
        if (exhaustive) {
            for (int ja = 0; ja < qm1; ++ja)
                for (int jb = 0; jb < qm1; ++jb)
                    for (int jc = 0; jc < qm1; ++jc)
                        for (uint32_t v = 0; v < F.q(); ++v) try_one(ja, jb, jc, FqElem{v});
        } else {
            for (int i = 0; i < n_random; ++i)
                try_one(static_cast<int>(rng.next() % qm1), static_cast<int>(rng.next() % qm1),
                        static_cast<int>(rng.next() % qm1),
                        FqElem{static_cast<uint32_t>(rng.next() % F.q())});
        }
        push_identity(out, "f21_two_routes", worst < tol,
                      (exhaustive ? "exhaustive" : std::to_string(tried) + " random"), worst, tol);
    }
    // four-gauss-sum average (Helversen-Pasotto shape)
    {
        double worst = 0;
        if (exhaustive) {
            for (int ja = 0; ja < qm1; ++ja)
                for (int jb = 0; jb < qm1; ++jb)
                    for (int jc = 0; jc < qm1; ++jc)
                        for (int jd = 0; jd < qm1; ++jd) {
                            IdentityParams prm;
                            prm.j_a = ja;
                            prm.j_b = jb;
                            prm.j_c = jc;
                            prm.j_d = jd;
                            worst = std::max(worst,
                                             C.identity_defect(IdentityId::hp_four_gauss, prm));
                        }
        } else {
            for (int i = 0; i < n_random; ++i) {
                IdentityParams prm;
                prm.j_a = static_cast<int>(rng.next() % qm1);
                prm.j_b = static_cast<int>(rng.next() % qm1);
                prm.j_c = static_cast<int>(rng.next() % qm1);
                prm.j_d = static_cast<int>(rng.next() % qm1);
                worst = std::max(worst, C.identity_defect(IdentityId::hp_four_gauss, prm));
            }
        }
        push_identity(out, "four_gauss_average", worst < tol,
                      (exhaustive ? "exhaustive" : "random"), worst, tol);
    }
    // 2F1 transformation
    {
        double worst = 0;
        if (exhaustive) {
            for (int ja = 0; ja < qm1; ++ja)
                for (int jb = 0; jb < qm1; ++jb)
                    for (int jc = 0; jc < qm1; ++jc)
                        for (uint32_t v = 0; v < F.q(); ++v) {
                            IdentityParams prm;
                            prm.j_a = ja;
                            prm.j_b = jb;
                            prm.j_c = jc;
                            prm.x = FqElem{v};
                            worst = std::max(worst,
                                             C.identity_defect(IdentityId::transform_4_4_iv, prm));
                        }
        } else {
            for (int i = 0; i < n_random; ++i) {
                IdentityParams prm;
                prm.j_a = static_cast<int>(rng.next() % qm1);
                prm.j_b = static_cast<int>(rng.next() % qm1);
                prm.j_c = static_cast<int>(rng.next() % qm1);
                prm.x = FqElem{static_cast<uint32_t>(rng.next() % F.q())};
                worst = std::max(worst, C.identity_defect(IdentityId::transform_4_4_iv, prm));
            }
        }
        push_identity(out, "f21_transformation", worst < tol,
                      (exhaustive ? "exhaustive" : "random"), worst, tol);
    }
    // bridge: the three-gauss-sum average equals q(q-1) phi(-x) G(1/x)
    {
        double worst = 0;
        for (uint32_t v = 1; v < F.q(); ++v) {
            FqElem x{v};
            double expect = static_cast<double>(q) * (q - 1) *
                            F.quad_char(F.neg(x)) * g_closed_form(F, F.inv(x));
            worst = std::max(worst, std::abs(C.prop1_lhs(x).value() - expect));
        }
        push_identity(out, "three_gauss_bridge", worst < tol, "all x != 0", worst, tol);
    }
    // exact floor identities
    {
        bool ok = true;
        for (int d : {2, 4})
            for (long long j = 1; j <= q - 2 && ok; ++j)
                for (int i = 0; i < F.r() && ok; ++i) {
                    PadicIdentityParams prm;
                    prm.d = d;
                    prm.j = j;
                    prm.i = i;
                    ok = P.identity_holds(PadicIdentityId::floor_lemma_d, prm);
                }
        push_identity(out, "floor_lemma_d", ok, "d in {2,4}, all j, all i", ok ? 0 : 1, 1);
        ok = true;
        for (int l : {2, 4})
            for (long long j = 0; j <= q - 2 && ok; ++j)
                for (int i = 0; i < F.r() && ok; ++i) {
                    PadicIdentityParams prm;
                    prm.l = l;
                    prm.j = j;
                    prm.i = i;
                    ok = P.identity_holds(PadicIdentityId::floor_lemma_l, prm);
                }
        push_identity(out, "floor_lemma_l", ok, "l in {2,4}, all j, all i", ok ? 0 : 1, 1);
    }
    // gamma product identities mod p^M
    {
        bool ok = true;
        for (int t : {2, 4})
            for (long long j = 0; j <= q - 2 && ok; ++j) {
                PadicIdentityParams prm;
                prm.t = t;
                prm.j = j;
                ok = P.identity_holds(PadicIdentityId::gamma_product_neg, prm) &&
                     P.identity_holds(PadicIdentityId::gamma_product_pos, prm);
            }
        push_identity(out, "gamma_products", ok, "t in {2,4}, all j", ok ? 0 : 1, 1);
    }
    {
        bool ok = P.identity_holds(PadicIdentityId::gross_koblitz_unit, {});
        push_identity(out, "gross_koblitz_unit", ok, "q phi(-1) vs gamma(1/2) powers",
                      ok ? 0 : 1, 1);
    }
}

FieldReport run_field(const FieldSpec& spec, const RunConfig& cfg,
                      const std::vector<std::string>& families) {
    FieldReport fr;
    fr.p = spec.p;
    fr.r = spec.r;
    try {
        auto F = FieldCtx::build(spec.p, spec.r, cfg.size_cap);
        fr.q = F.q();
        fr.modulus = F.modulus_string();

        bool needs_padic = false;
        for (const auto& fam : families) {
            if (fam == "mt6" || fam == "cor_1_6" || fam == "bs1" || fam == "identities")
                needs_padic = true;
            if (fam == "mt1" && F.q() <= 13) needs_padic = true; // both-path cross-check
        }
        std::optional<PadicCtx> P;
        if (needs_padic) {
            int M = cfg.precision.value_or(PadicCtx::auto_precision(F)) + cfg.precision_delta;
            P.emplace(PadicCtx::init(F, M));
            log_info("field q=" + std::to_string(fr.q) + " padic M=" + std::to_string(M));
        }
        std::optional<CharSumCtx> C;
        for (const auto& fam : families) {
            try {
                if (auto family = family_from_name(fam)) {
                    run_curve_family(F, P ? &*P : nullptr, *family, cfg.samples, cfg.seed,
                                     fr.checks);
                } else if (fam == "bs1") {
                    run_bs1_family(F, *P, std::max(cfg.samples, 20), cfg.seed, fr.checks);
                } else if (fam == "identities") {
                    if (!C) C.emplace(F, cfg.tolerance.value_or(1e-6));
                    run_identities(F, *P, *C, cfg.samples, cfg.seed, fr.checks);
                } else {
                    throw Error(ErrorCode::BadParams, "unknown family: " + fam);
                }
            } catch (const Error& e) {
                CheckRecord rec;
                rec.family = fam;
                rec.index = 0;
                if (e.code() == ErrorCode::Unsatisfiable) {
                    rec.skipped = true;
                    rec.skip_reason = e.what();
                    rec.pass = true;
                } else {
                    rec.pass = false;
                    rec.note = std::string(error_code_name(e.code())) + ": " + e.what();
                }
                fr.checks.push_back(std::move(rec));
            }
        }
    } catch (const Error& e) {
        fr.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    return fr;
}

} // namespace

FieldSpec field_spec_from_q(long long q) {
    if (q < 3) throw Error(ErrorCode::BadParams, "q must be an odd prime power >= 3");
    long long p = 0;
    for (long long d = 3; d * d <= q; d += 2)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q; // q itself prime (or 1, rejected above)
    if (p % 2 == 0 || !is_prime(p))
        throw Error(ErrorCode::BadParams, std::to_string(q) + " is not an odd prime power");
    int r = 0;
    long long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++r;
    }
    if (rest != 1)
        throw Error(ErrorCode::BadParams, std::to_string(q) + " is not a prime power");
    return FieldSpec{static_cast<int>(p), r};
}

const std::vector<std::string>& all_family_names() {
    static const std::vector<std::string> names = {"mt1",     "mt6",  "cor_1_4", "cor_1_5",
                                                   "cor_1_6", "cor_2", "bs1",     "identities"};
    return names;
}

Report run_verify(const RunConfig& config) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.config = config;
    std::vector<std::string> families =
        config.families.empty() ? all_family_names() : config.families;
    for (const auto& fam : families)
        if (!family_from_name(fam) && fam != "bs1" && fam != "identities")
            throw Error(ErrorCode::BadParams, "unknown family: " + fam);

    report.fields.resize(config.fields.size());
    int jobs = std::max(1, config.jobs);
    if (jobs == 1 || config.fields.size() <= 1) {
        for (size_t i = 0; i < config.fields.size(); ++i)
            report.fields[i] = run_field(config.fields[i], config, families);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= config.fields.size()) return;
                report.fields[i] = run_field(config.fields[i], config, families);
            }
        };
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& fr : report.fields) {
        if (!fr.error.empty()) ++report.summary.fail;
        for (const auto& c : fr.checks) {
            if (c.skipped) ++report.summary.skipped;
            else if (c.pass) ++report.summary.pass;
            else ++report.summary.fail;
        }
    }
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

std::string Report::to_json(bool include_timing) const {
    ojson meta;
    meta["version"] = kVersion;
    meta["seed"] = config.seed;
    ojson cfg;
    ojson flist = ojson::array();
    for (const auto& f : config.fields) flist.push_back({{"p", f.p}, {"r", f.r}});
    cfg["fields"] = flist;
    cfg["families"] = config.families.empty() ? all_family_names() : config.families;
    cfg["samples"] = config.samples;
    if (config.precision) cfg["precision"] = *config.precision;
    else cfg["precision"] = nullptr;
    cfg["precision_delta"] = config.precision_delta;
    if (config.tolerance) cfg["tolerance"] = *config.tolerance;
    else cfg["tolerance"] = nullptr;
    cfg["jobs"] = config.jobs;
    cfg["size_cap"] = config.size_cap;
    meta["config"] = cfg;
    if (include_timing) {
        ojson timing;
        timing["elapsed_ms"] = elapsed_ms;
        meta["timing"] = timing;
    }

    ojson jfields = ojson::array();
    for (const auto& fr : fields) {
        ojson jf;
        jf["p"] = fr.p;
        jf["r"] = fr.r;
        jf["q"] = fr.q;
        jf["modulus"] = fr.modulus;
        if (!fr.error.empty()) jf["error"] = fr.error;
        ojson checks = ojson::array();
        for (const auto& c : fr.checks) {
            ojson jc;
            jc["family"] = c.family;
            jc["index"] = c.index;
            jc["params"] = c.params;
            if (c.skipped) {
                jc["skipped"] = true;
                jc["skip_reason"] = c.skip_reason;
            } else {
                jc["brute"] = c.brute;
                jc["formula"] = c.formula;
                if (!c.terms.empty()) {
                    ojson jt;
                    for (const auto& [k, v] : c.terms) jt[k] = v;
                    jc["terms"] = jt;
                }
                if (!c.g_path.empty()) jc["g_path"] = c.g_path;
                jc["pass"] = c.pass;
            }
            if (!c.note.empty()) jc["note"] = c.note;
            checks.push_back(jc);
        }
        jf["checks"] = checks;
        jfields.push_back(jf);
    }

    ojson root;
    root["meta"] = meta;
    root["fields"] = jfields;
    root["summary"] = {{"pass", summary.pass}, {"fail", summary.fail}, {"skipped", summary.skipped}};
    return root.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "family,p,r,q,index,brute,formula,pass,skipped,skip_reason\n";
    for (const auto& fr : fields)
        for (const auto& c : fr.checks) {
            os << c.family << ',' << fr.p << ',' << fr.r << ',' << fr.q << ',' << c.index << ','
               << c.brute << ',' << c.formula << ',' << (c.pass ? 1 : 0) << ','
               << (c.skipped ? 1 : 0) << ',' << '"' << c.skip_reason << '"' << '\n';
        }
    return os.str();
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& fr : fields) {
        os << "q=" << fr.q << " (p=" << fr.p << ", r=" << fr.r << ", modulus " << fr.modulus
           << ")\n";
        if (!fr.error.empty()) {
            os << "  error: " << fr.error << "\n";
            continue;
        }
        std::string last_family;
        long long fam_pass = 0, fam_total = 0;
        auto flush = [&] {
            if (!last_family.empty())
                os << "  " << last_family << ": " << fam_pass << "/" << fam_total << " pass\n";
            fam_pass = fam_total = 0;
        };
        for (const auto& c : fr.checks) {
            if (c.family != last_family) {
                flush();
                last_family = c.family;
            }
            if (c.skipped) {
                os << "  " << c.family << ": skipped (" << c.skip_reason << ")\n";
                last_family.clear();
                continue;
            }
            ++fam_total;
            if (c.pass) ++fam_pass;
            else
                os << "  FAIL " << c.family << "[" << c.index << "] params=" << c.params
                   << " brute=" << c.brute << " formula=" << c.formula
                   << (c.note.empty() ? "" : " note=" + c.note) << "\n";
        }
        flush();
    }
    os << "summary: pass=" << summary.pass << " fail=" << summary.fail
       << " skipped=" << summary.skipped << "\n";
    return os.str();
}

} // namespace hypercount
