#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypercount/verify.hpp"

namespace py = pybind11;
using namespace hypercount;

namespace {

// python passes field elements as their canonical integer encodings
FqElem elem(const FieldCtx& F, uint32_t v) {
    if (v >= F.q()) throw Error(ErrorCode::BadParams, "element encoding out of range");
    return FqElem{v};
}

CurveParams curve_from(const FieldCtx& F, const std::vector<uint32_t>& v) {
    if (v.size() != 6) throw Error(ErrorCode::BadParams, "need six coefficients a,b,c,d,e,f");
    return CurveParams{elem(F, v[0]), elem(F, v[1]), elem(F, v[2]),
                       elem(F, v[3]), elem(F, v[4]), elem(F, v[5])};
}

std::vector<Rat> rats_from(const std::vector<std::pair<long long, long long>>& v) {
    std::vector<Rat> out;
    for (auto [n, d] : v) out.push_back(Rat::of(n, d));
    return out;
}

py::dict count_result_to_dict(const CountResult& res) {
    py::dict d;
    d["count"] = res.count;
    py::dict terms;
    for (const auto& [k, v] : res.terms) terms[py::str(k)] = v;
    d["terms"] = terms;
    return d;
}

} // namespace

PYBIND11_MODULE(_hypercount, m) {
    m.doc() = "point counts on a y^2 + b x^2 + c xy = d + e x^2 y^2 + f x^3 y over F_q, "
              "with character-sum and p-adic hypergeometric verification";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "HypercountError");

    py::class_<FieldCtx, std::shared_ptr<FieldCtx>>(m, "Field")
        .def(py::init([](int p, int r, int size_cap) {
                 return std::make_shared<FieldCtx>(FieldCtx::build(p, r, size_cap));
             }),
             py::arg("p"), py::arg("r") = 1, py::arg("size_cap") = FieldCtx::kDefaultSizeCap)
        .def_property_readonly("p", &FieldCtx::p)
        .def_property_readonly("r", &FieldCtx::r)
        .def_property_readonly("q", &FieldCtx::q)
        .def_property_readonly("modulus", [](const FieldCtx& F) { return F.modulus(); })
        .def_property_readonly("generator", [](const FieldCtx& F) { return F.generator().v; })
        .def("from_int", [](const FieldCtx& F, long long n) { return F.from_int(n).v; })
        .def("from_coeffs",
             [](const FieldCtx& F, const std::vector<int>& c) { return F.from_coeffs(c).v; })
        .def("coeffs", [](const FieldCtx& F, uint32_t x) { return F.coeffs(elem(F, x)); })
        .def("add", [](const FieldCtx& F, uint32_t x, uint32_t y) {
            return F.add(elem(F, x), elem(F, y)).v;
        })
        .def("sub", [](const FieldCtx& F, uint32_t x, uint32_t y) {
            return F.sub(elem(F, x), elem(F, y)).v;
        })
        .def("mul", [](const FieldCtx& F, uint32_t x, uint32_t y) {
            return F.mul(elem(F, x), elem(F, y)).v;
        })
        .def("inv", [](const FieldCtx& F, uint32_t x) { return F.inv(elem(F, x)).v; })
        .def("neg", [](const FieldCtx& F, uint32_t x) { return F.neg(elem(F, x)).v; })
        .def("pow", [](const FieldCtx& F, uint32_t x, long long e) {
            return F.pow(elem(F, x), e).v;
        })
        .def("dlog", [](const FieldCtx& F, uint32_t x) { return F.dlog(elem(F, x)); })
        .def("trace", [](const FieldCtx& F, uint32_t x) { return F.trace(elem(F, x)); })
        .def("quad_char", [](const FieldCtx& F, uint32_t x) { return F.quad_char(elem(F, x)); })
        .def("sqrt",
             [](const FieldCtx& F, uint32_t x) -> std::optional<uint32_t> {
                 auto s = F.sqrt(elem(F, x));
                 if (!s) return std::nullopt;
                 return s->v;
             })
        .def("to_string", [](const FieldCtx& F, uint32_t x) { return F.to_string(elem(F, x)); });

    py::class_<PadicCtx, std::shared_ptr<PadicCtx>>(m, "Padic")
        .def(py::init([](std::shared_ptr<FieldCtx> F, std::optional<int> M) {
                 return std::make_shared<PadicCtx>(PadicCtx::init(*F, M));
             }),
             py::arg("field"), py::arg("M") = std::nullopt,
             py::keep_alive<1, 2>()) // the context references the field
        .def_property_readonly("M", &PadicCtx::M)
        .def_property_readonly("p_power", &PadicCtx::p_power)
        .def("gamma",
             [](const PadicCtx& P, long long num, long long den) {
                 return P.gamma_res(num, den);
             },
             py::arg("num"), py::arg("den") = 1)
        .def("teichmuller",
             [](const PadicCtx& P, uint32_t x) { return P.teichmuller(elem(P.field(), x)).c; })
        .def("ngn",
             [](const PadicCtx& P, const std::vector<std::pair<long long, long long>>& upper,
                const std::vector<std::pair<long long, long long>>& lower, uint32_t t,
                long long bound) {
                 auto rec = P.ngn(rats_from(upper), rats_from(lower), elem(P.field(), t), bound);
                 return std::make_pair(rec.num, rec.den);
             },
             py::arg("upper"), py::arg("lower"), py::arg("t"), py::arg("bound") = -1)
        .def("g_value",
             [](const PadicCtx& P, uint32_t t) {
                 auto rec = P.ngn(PadicCtx::g_upper(), PadicCtx::g_lower(), elem(P.field(), t));
                 return std::make_pair(rec.num, rec.den);
             })
        .def("g_closed_form",
             [](const PadicCtx& P, uint32_t t) { return P.g_closed_form(elem(P.field(), t)); });

    py::class_<CharSumCtx, std::shared_ptr<CharSumCtx>>(m, "CharSums")
        .def(py::init([](std::shared_ptr<FieldCtx> F, double tol) {
                 return std::make_shared<CharSumCtx>(*F, tol);
             }),
             py::arg("field"), py::arg("tol_coeff") = 1e-6, py::keep_alive<1, 2>())
        .def_property_readonly("tolerance", &CharSumCtx::tolerance)
        .def("char_eval",
             [](const CharSumCtx& C, int j, uint32_t x) {
                 return C.char_eval(j, elem(C.field(), x)).value();
             })
        .def("gauss_sum", [](const CharSumCtx& C, int j) { return C.gauss_sum(j).value(); })
        .def("jacobi_sum",
             [](const CharSumCtx& C, int j1, int j2) { return C.jacobi_sum(j1, j2).value(); })
        .def("greene_2f1",
             [](const CharSumCtx& C, int ja, int jb, int jc, uint32_t x,
                const std::string& method) {
                 return C
                     .greene_2f1(ja, jb, jc, elem(C.field(), x),
                                 method == "binomsum" ? F21Method::binomsum : F21Method::charsum)
                     .value();
             },
             py::arg("ja"), py::arg("jb"), py::arg("jc"), py::arg("x"),
             py::arg("method") = "charsum");

    m.def("brute_count", [](const FieldCtx& F, const std::vector<uint32_t>& coeffs) {
        return brute_count(F, curve_from(F, coeffs));
    });
    m.def(
        "mt1_count",
        [](const FieldCtx& F, const std::vector<uint32_t>& coeffs, const std::string& g_path,
           const PadicCtx* P) {
            GPath path = g_path == "padic" ? GPath::padic
                         : g_path == "both" ? GPath::both
                                            : GPath::fast;
            return count_result_to_dict(mt1_count(F, curve_from(F, coeffs), path, P));
        },
        py::arg("field"), py::arg("coeffs"), py::arg("g_path") = "fast",
        py::arg("padic") = nullptr);
    m.def("mt6_count", [](const FieldCtx& F, const PadicCtx& P,
                          const std::vector<uint32_t>& coeffs) {
        return count_result_to_dict(mt6_count(F, P, curve_from(F, coeffs)));
    });
    m.def("cor_1_4_count", [](const FieldCtx& F, const std::vector<uint32_t>& coeffs) {
        return cor_1_4_count(F, curve_from(F, coeffs));
    });
    m.def("cor_1_6_count", [](const FieldCtx& F, const std::vector<uint32_t>& coeffs) {
        return cor_1_6_count(F, curve_from(F, coeffs));
    });
    m.def("cor_1_5_count", [](const FieldCtx& F, const std::vector<uint32_t>& e) {
        if (e.size() != 4) throw Error(ErrorCode::BadParams, "need alpha,beta,k,ell");
        return cor_1_5_count(F, EdwardsParams{elem(F, e[0]), elem(F, e[1]), elem(F, e[2]),
                                              elem(F, e[3])});
    });
    m.def("edwards_to_curve", [](const FieldCtx& F, const std::vector<uint32_t>& e) {
        if (e.size() != 4) throw Error(ErrorCode::BadParams, "need alpha,beta,k,ell");
        auto cp = edwards_to_curve(F, EdwardsParams{elem(F, e[0]), elem(F, e[1]), elem(F, e[2]),
                                                    elem(F, e[3])});
        return std::vector<uint32_t>{cp.a.v, cp.b.v, cp.c.v, cp.d.v, cp.e.v, cp.f.v};
    });
    m.def("ec_affine_count", [](const FieldCtx& F, uint32_t h, uint32_t g) {
        return ec_affine_count(F, EllipticParams{elem(F, h), elem(F, g)});
    });
    m.def("trace_of_frobenius", [](const FieldCtx& F, uint32_t h, uint32_t g) {
        return trace_of_frobenius(F, EllipticParams{elem(F, h), elem(F, g)});
    });
    m.def("bs1_trace_check", [](const FieldCtx& F, const PadicCtx& P, uint32_t h, uint32_t g) {
        return bs1_trace_check(F, P, EllipticParams{elem(F, h), elem(F, g)});
    });
    m.def("cor2_check", [](const FieldCtx& F, const std::vector<uint32_t>& coeffs, uint32_t h,
                           uint32_t g) {
        return cor2_check(F, curve_from(F, coeffs), EllipticParams{elem(F, h), elem(F, g)});
    });
    m.def(
        "sample_params",
        [](const FieldCtx& F, const std::string& family, uint64_t seed, int count) {
            auto fam = family_from_name(family);
            if (!fam) throw Error(ErrorCode::BadParams, "unknown family " + family);
            py::list out;
            for (const auto& t : sample_params(F, *fam, seed, count)) {
                py::dict d;
                d["curve"] = std::vector<uint32_t>{t.curve.a.v, t.curve.b.v, t.curve.c.v,
                                                   t.curve.d.v, t.curve.e.v, t.curve.f.v};
                if (t.edwards)
                    d["edwards"] = std::vector<uint32_t>{t.edwards->alpha.v, t.edwards->beta.v,
                                                         t.edwards->k.v, t.edwards->ell.v};
                if (t.elliptic)
                    d["elliptic"] = std::vector<uint32_t>{t.elliptic->h.v, t.elliptic->g.v};
                out.append(d);
            }
            return out;
        },
        py::arg("field"), py::arg("family"), py::arg("seed") = 0, py::arg("count") = 1);
    m.def(
        "run_verify",
        [](const std::vector<std::pair<int, int>>& fields,
           const std::vector<std::string>& families, int samples, uint64_t seed,
           std::optional<int> precision, int precision_delta, std::optional<double> tolerance,
           int jobs, bool include_timing) {
            RunConfig cfg;
            for (auto [p, r] : fields) cfg.fields.push_back(FieldSpec{p, r});
            cfg.families = families;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.precision = precision;
            cfg.precision_delta = precision_delta;
            cfg.tolerance = tolerance;
            cfg.jobs = jobs;
            return run_verify(cfg).to_json(include_timing);
        },
        py::arg("fields"), py::arg("families") = std::vector<std::string>{},
        py::arg("samples") = 50, py::arg("seed") = 0, py::arg("precision") = std::nullopt,
        py::arg("precision_delta") = 0, py::arg("tolerance") = std::nullopt, py::arg("jobs") = 1,
        py::arg("include_timing") = true);
}
