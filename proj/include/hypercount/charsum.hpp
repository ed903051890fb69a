#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hypercount/field.hpp"

namespace hypercount {

// Exact Gaussian rational (re + im*i)/den, normalized with den > 0.
struct GaussianRat {
    long long re = 0;
    long long im = 0;
    long long den = 1;
    bool operator==(const GaussianRat&) const = default;
};

// Value of a character sum: exact Gaussian rational whenever every character
// involved has order dividing 4, complex double otherwise. Mixing an exact and
// an approximate value demotes the result to the complex path.
class SumValue {
public:
    SumValue() : exact_(true), g_{0, 0, 1} {}
    static SumValue exact(long long re, long long im = 0, long long den = 1);
    static SumValue approx(std::complex<double> z);

    bool is_exact() const { return exact_; }
    const GaussianRat& rat() const; // requires is_exact()
    std::complex<double> value() const;

    SumValue operator+(const SumValue& o) const;
    SumValue operator-(const SumValue& o) const;
    SumValue operator*(const SumValue& o) const;
    SumValue conj() const;

private:
    bool exact_;
    GaussianRat g_{};
    std::complex<double> z_{};
};

// Multiplicative character chi_j, j taken mod q-1: chi_j(x) =
// zeta_{q-1}^(j*dlog x) for x != 0 and chi_j(0) = 0 for every j.
struct MultChar {
    int index = 0;
    int order(const FieldCtx& F) const;
};

enum class F21Method { charsum, binomsum };

enum class IdentityId {
    theta_expansion,
    gauss_reflection,
    jacobi_gauss,
    davenport_hasse,
    hp_four_gauss,
    transform_4_4_iv,
};

struct IdentityParams {
    int j_a = 0;
    int j_b = 0;
    int j_c = 0;
    int j_d = 0;
    int m = 0;
    FqElem alpha{0};
    FqElem x{0};
};

// Gauss sums, Jacobi sums, Greene's 2F1 and the identity suite over one field.
// All Gauss sums are tabulated eagerly at construction; the object is
// immutable afterwards and safe to share across threads.
class CharSumCtx {
public:
    explicit CharSumCtx(const FieldCtx& F, double tol_coeff = 1e-6);

    const FieldCtx& field() const { return *F_; }

    // Absolute tolerance for complex-engine checks: tol_coeff * q^(5/2).
    double tolerance() const;

    SumValue char_eval(int j, FqElem x) const;
    int char_order(int j) const;
    // chi_j(-1) = (-1)^j, always exact.
    int char_at_minus_one(int j) const { return (j % 2 == 0) ? 1 : -1; }

    SumValue gauss_sum(int j) const;
    SumValue jacobi_sum(int j1, int j2) const;
    SumValue binom(int j1, int j2) const;
    SumValue greene_2f1(int j_a, int j_b, int j_c, FqElem x, F21Method method) const;

    // |LHS - RHS| of the named identity in the complex engine.
    double identity_defect(IdentityId id, const IdentityParams& params) const;

    // sum over all psi of g(conj psi) g(conj psi * phi) g(psi^2 phi) psi(x/4).
    SumValue prop1_lhs(FqElem x) const;

private:
    const FieldCtx* F_;
    double tol_coeff_;
    int qm1_;
    std::vector<std::complex<double>> zeta_;  // zeta_{q-1}^k
    std::vector<std::complex<double>> theta_; // zeta_p^{tr x} per element
    std::vector<std::complex<double>> gauss_; // g(chi_j) per j
    std::vector<std::complex<double>> jtable_; // J(chi_j1, chi_j2), small q only

    int norm_index(long long j) const {
        long long m = j % qm1_;
        if (m < 0) m += qm1_;
        return static_cast<int>(m);
    }
    bool exact_capable(int j) const { return (4LL * norm_index(j)) % qm1_ == 0; }
    std::complex<double> chi(int j, FqElem x) const {
        if (x.v == 0) return {0.0, 0.0};
        return zeta_[static_cast<size_t>(norm_index(j)) * F_->dlog(x) % qm1_];
    }
    std::complex<double> gauss(long long j) const { return gauss_[norm_index(j)]; }
    std::complex<double> jacobi_c(int j1, int j2) const;
    SumValue jacobi_exact(int j1, int j2) const;
};

} // namespace hypercount
