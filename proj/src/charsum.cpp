#include "hypercount/charsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace hypercount {

namespace {

long long gcd3(long long a, long long b, long long c) {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

GaussianRat normalize(long long re, long long im, long long den) {
    if (den < 0) {
        re = -re;
        im = -im;
        den = -den;
    }
    long long g = gcd3(re, im, den);
    if (g > 1) {
        re /= g;
        im /= g;
        den /= g;
    }
    if (re == 0 && im == 0) den = 1;
    return GaussianRat{re, im, den};
}

} // namespace

SumValue SumValue::exact(long long re, long long im, long long den) {
    SumValue v;
    v.exact_ = true;
    v.g_ = normalize(re, im, den);
    return v;
}

SumValue SumValue::approx(std::complex<double> z) {
    SumValue v;
    v.exact_ = false;
    v.z_ = z;
    return v;
}

const GaussianRat& SumValue::rat() const {
    if (!exact_) throw Error(ErrorCode::BadParams, "SumValue is not exact");
    return g_;
}

std::complex<double> SumValue::value() const {
    if (!exact_) return z_;
    return {static_cast<double>(g_.re) / g_.den, static_cast<double>(g_.im) / g_.den};
}

SumValue SumValue::operator+(const SumValue& o) const {
    if (exact_ && o.exact_) {
        __int128 den = static_cast<__int128>(g_.den) * o.g_.den;
        __int128 re = static_cast<__int128>(g_.re) * o.g_.den + static_cast<__int128>(o.g_.re) * g_.den;
        __int128 im = static_cast<__int128>(g_.im) * o.g_.den + static_cast<__int128>(o.g_.im) * g_.den;
        return exact(static_cast<long long>(re), static_cast<long long>(im),
                     static_cast<long long>(den));
    }
    return approx(value() + o.value());
}

SumValue SumValue::operator-(const SumValue& o) const {
    if (exact_ && o.exact_) {
        SumValue neg = exact(-o.g_.re, -o.g_.im, o.g_.den);
        return *this + neg;
    }
    return approx(value() - o.value());
}

SumValue SumValue::operator*(const SumValue& o) const {
    if (exact_ && o.exact_) {
        __int128 re = static_cast<__int128>(g_.re) * o.g_.re - static_cast<__int128>(g_.im) * o.g_.im;
        __int128 im = static_cast<__int128>(g_.re) * o.g_.im + static_cast<__int128>(g_.im) * o.g_.re;
        __int128 den = static_cast<__int128>(g_.den) * o.g_.den;
        return exact(static_cast<long long>(re), static_cast<long long>(im),
                     static_cast<long long>(den));
    }
    return approx(value() * o.value());
}

SumValue SumValue::conj() const {
    if (exact_) return exact(g_.re, -g_.im, g_.den);
    return approx(std::conj(z_));
}

int MultChar::order(const FieldCtx& F) const {
    int qm1 = static_cast<int>(F.q()) - 1;
    int j = ((index % qm1) + qm1) % qm1;
    return qm1 / std::gcd(j, qm1);
}

CharSumCtx::CharSumCtx(const FieldCtx& F, double tol_coeff)
    : F_(&F), tol_coeff_(tol_coeff), qm1_(static_cast<int>(F.q()) - 1) {
    const double two_pi = 2.0 * std::numbers::pi;
    zeta_.resize(qm1_);
    for (int k = 0; k < qm1_; ++k)
        zeta_[k] = std::polar(1.0, two_pi * k / qm1_);

    theta_.resize(F.q());
    for (uint32_t v = 0; v < F.q(); ++v)
        theta_[v] = std::polar(1.0, two_pi * F.trace(FqElem{v}) / F.p());

    gauss_.resize(qm1_);
    for (int j = 0; j < qm1_; ++j) {
        std::complex<double> s = 0;
        for (uint32_t v = 1; v < F.q(); ++v)
            s += zeta_[static_cast<size_t>(j) * F.dlog(FqElem{v}) % qm1_] * theta_[v];
        gauss_[j] = s;
    }

    if (F.q() <= 128) {
        jtable_.resize(static_cast<size_t>(qm1_) * qm1_);
        for (int j1 = 0; j1 < qm1_; ++j1)
            for (int j2 = 0; j2 < qm1_; ++j2) {
                std::complex<double> s = 0;
                for (uint32_t v = 0; v < F.q(); ++v) {
                    FqElem x{v};
                    FqElem y = F.sub(F.one(), x);
                    s += chi(j1, x) * chi(j2, y);
                }
                jtable_[static_cast<size_t>(j1) * qm1_ + j2] = s;
            }
    }
}

double CharSumCtx::tolerance() const {
    return tol_coeff_ * std::pow(static_cast<double>(F_->q()), 2.5);
}

int CharSumCtx::char_order(int j) const {
    return qm1_ / std::gcd(norm_index(j), static_cast<long long>(qm1_));
}

SumValue CharSumCtx::char_eval(int j, FqElem x) const {
    if (x.v == 0) return SumValue::exact(0);
    int jn = norm_index(j);
    if (exact_capable(jn)) {
        long long k = (4LL * jn / qm1_) * F_->dlog(x) % 4;
        switch (k) {
            case 0: return SumValue::exact(1);
            case 1: return SumValue::exact(0, 1);
            case 2: return SumValue::exact(-1);
            default: return SumValue::exact(0, -1);
        }
    }
    return SumValue::approx(chi(jn, x));
}

SumValue CharSumCtx::gauss_sum(int j) const {
    if (norm_index(j) == 0) return SumValue::exact(-1);
    return SumValue::approx(gauss_[norm_index(j)]);
}

std::complex<double> CharSumCtx::jacobi_c(int j1, int j2) const {
    int a = norm_index(j1), b = norm_index(j2);
    if (!jtable_.empty()) return jtable_[static_cast<size_t>(a) * qm1_ + b];
    std::complex<double> s = 0;
    for (uint32_t v = 0; v < F_->q(); ++v) {
        FqElem x{v};
        s += chi(a, x) * chi(b, F_->sub(F_->one(), x));
    }
    return s;
}

SumValue CharSumCtx::jacobi_exact(int j1, int j2) const {
    SumValue s = SumValue::exact(0);
    for (uint32_t v = 0; v < F_->q(); ++v) {
        FqElem x{v};
        s = s + char_eval(j1, x) * char_eval(j2, F_->sub(F_->one(), x));
    }
    return s;
}

SumValue CharSumCtx::jacobi_sum(int j1, int j2) const {
    if (exact_capable(j1) && exact_capable(j2)) return jacobi_exact(j1, j2);
    return SumValue::approx(jacobi_c(j1, j2));
}

SumValue CharSumCtx::binom(int j1, int j2) const {
    // (A choose B) = B(-1)/q * J(A, conj B)
    SumValue j = jacobi_sum(j1, -j2);
    SumValue scale = SumValue::exact(char_at_minus_one(j2), 0, F_->q());
    return j * scale;
}

SumValue CharSumCtx::greene_2f1(int j_a, int j_b, int j_c, FqElem x, F21Method method) const {
    if (method == F21Method::charsum) {
        if (x.v == 0) return SumValue::exact(0);
        bool ex = exact_capable(j_a) && exact_capable(j_b) && exact_capable(j_c);
        // prefactor BC(-1)/q
        int sign = char_at_minus_one(j_b) * char_at_minus_one(j_c);
        if (ex) {
            SumValue s = SumValue::exact(0);
            for (uint32_t v = 0; v < F_->q(); ++v) {
                FqElem y{v};
                s = s + char_eval(j_b, y) * char_eval(j_c - j_b, F_->sub(F_->one(), y)) *
                        char_eval(-j_a, F_->sub(F_->one(), F_->mul(x, y)));
            }
            return s * SumValue::exact(sign, 0, F_->q());
        }
        std::complex<double> s = 0;
        for (uint32_t v = 0; v < F_->q(); ++v) {
            FqElem y{v};
            s += chi(j_b, y) * chi(norm_index(j_c - j_b), F_->sub(F_->one(), y)) *
                 chi(norm_index(-j_a), F_->sub(F_->one(), F_->mul(x, y)));
        }
        return SumValue::approx(s * (static_cast<double>(sign) / F_->q()));
    }

    // binomial form: q/(q-1) * sum_chi (A chi choose chi)(B chi choose C chi) chi(x)
    std::complex<double> s = 0;
    for (int j = 0; j < qm1_; ++j) {
        std::complex<double> b1 = jacobi_c(norm_index(j_a + j), norm_index(-j)) *
                                  (static_cast<double>(char_at_minus_one(j)) / F_->q());
        std::complex<double> b2 = jacobi_c(norm_index(j_b + j), norm_index(-(j_c + j))) *
                                  (static_cast<double>(char_at_minus_one(j_c + j)) / F_->q());
        s += b1 * b2 * chi(j, x);
    }
    return SumValue::approx(s * (static_cast<double>(F_->q()) / qm1_));
}

double CharSumCtx::identity_defect(IdentityId id, const IdentityParams& prm) const {
    const uint32_t q = F_->q();
    switch (id) {
        case IdentityId::theta_expansion: {
            if (prm.alpha.v == 0)
                throw Error(ErrorCode::BadParams, "theta expansion needs alpha != 0");
            std::complex<double> rhs = 0;
            for (int j = 0; j < qm1_; ++j)
                rhs += gauss(-j) * chi(j, prm.alpha);
            rhs /= static_cast<double>(qm1_);
            return std::abs(theta_[prm.alpha.v] - rhs);
        }
        case IdentityId::gauss_reflection: {
            int j = norm_index(prm.j_a);
            std::complex<double> lhs = gauss(j) * gauss(-j);
            double rhs = static_cast<double>(q) * char_at_minus_one(j) -
                         (j == 0 ? static_cast<double>(qm1_) : 0.0);
            return std::abs(lhs - rhs);
        }
        case IdentityId::jacobi_gauss: {
            int j1 = norm_index(prm.j_a), j2 = norm_index(prm.j_b);
            std::complex<double> lhs = jacobi_c(j1, j2);
            std::complex<double> rhs = gauss(j1) * gauss(j2) / gauss(j1 + j2);
            if (norm_index(j1 + j2) == 0)
                rhs += static_cast<double>(qm1_) * char_at_minus_one(j2);
            return std::abs(lhs - rhs);
        }
        case IdentityId::davenport_hasse: {
            int m = prm.m;
            if (m <= 0 || qm1_ % m != 0)
                throw Error(ErrorCode::BadParams, "davenport-hasse needs m | q-1");
            if (m % F_->p() == 0)
                throw Error(ErrorCode::BadParams, "davenport-hasse needs p not dividing m");
            int step = qm1_ / m;
            std::complex<double> lhs = 1, prod = 1;
            for (int k = 0; k < m; ++k) {
                lhs *= gauss(prm.j_a + k * step);
                prod *= gauss(k * step);
            }
            FqElem mf = F_->from_int(m);
            std::complex<double> rhs =
                -gauss(static_cast<long long>(prm.j_a) * m) * chi(norm_index(prm.j_a), F_->pow(mf, -m)) * prod;
            return std::abs(lhs - rhs);
        }
        case IdentityId::hp_four_gauss: {
            int ja = prm.j_a, jb = prm.j_b, jc = prm.j_c, jd = prm.j_d;
            std::complex<double> lhs = 0;
            for (int j = 0; j < qm1_; ++j)
                lhs += gauss(ja + j) * gauss(jb - j) * gauss(jc + j) * gauss(jd - j);
            lhs /= static_cast<double>(qm1_);
            std::complex<double> rhs = gauss(ja + jb) * gauss(ja + jd) * gauss(jb + jc) *
                                       gauss(jc + jd) / gauss(ja + jb + jc + jd);
            if (norm_index(static_cast<long long>(ja) + jb + jc + jd) == 0)
                rhs += static_cast<double>(q) * qm1_ *
                       char_at_minus_one(norm_index(static_cast<long long>(ja) + jc));
            return std::abs(lhs - rhs);
        }
        case IdentityId::transform_4_4_iv: {
            std::complex<double> lhs =
                greene_2f1(prm.j_a, prm.j_b, prm.j_c, prm.x, F21Method::charsum).value();
            FqElem one_minus_x = F_->sub(F_->one(), prm.x);
            std::complex<double> rhs =
                static_cast<double>(char_at_minus_one(prm.j_c)) *
                chi(norm_index(prm.j_c - prm.j_a - prm.j_b), one_minus_x) *
                greene_2f1(norm_index(prm.j_c - prm.j_a), norm_index(prm.j_c - prm.j_b),
                           prm.j_c, prm.x, F21Method::charsum)
                    .value();
            if (one_minus_x.v == 0)
                rhs += static_cast<double>(char_at_minus_one(prm.j_a)) *
                       binom(prm.j_b, norm_index(prm.j_c - prm.j_a)).value();
            return std::abs(lhs - rhs);
        }
    }
    throw Error(ErrorCode::BadParams, "unknown identity");
}

SumValue CharSumCtx::prop1_lhs(FqElem x) const {
    if (x.v == 0) throw Error(ErrorCode::DivZero, "prop1_lhs needs x != 0");
    int half = qm1_ / 2;
    FqElem x4 = F_->div(x, F_->from_int(4));
    std::complex<double> s = 0;
    for (int j = 0; j < qm1_; ++j)
        s += gauss(-j) * gauss(-j + half) * gauss(2 * j + half) * chi(j, x4);
    return SumValue::approx(s);
}

} // namespace hypercount
