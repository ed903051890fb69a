#include "hypercount/field.hpp"

#include <algorithm>
#include <sstream>

namespace hypercount {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense polynomial over F_p, low degree first, trailing zeros trimmed.
using Poly = std::vector<int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& m, int p) {
    trim(f);
    int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(f.size()) - 1 >= dm) {
        int df = static_cast<int>(f.size()) - 1;
        int lead = f[df]; // m is monic
        for (int i = 0; i <= dm; ++i) {
            int& c = f[df - dm + i];
            c = (c - lead * m[i]) % p;
            if (c < 0) c += p;
        }
        trim(f);
    }
    return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(out), m, p);
}

Poly poly_powmod(Poly base, long long e, const Poly& m, int p) {
    Poly result{1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    auto inv_mod_p = [p](int x) {
        int res = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) res = res * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return res;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // reduce a mod b (b made monic on the fly)
        int lead_inv = inv_mod_p(b.back());
        Poly bm = b;
        for (int& c : bm) c = c * lead_inv % p;
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

// Rabin irreducibility test: f (monic, degree r) is irreducible over F_p iff
// x^(p^r) == x mod f and gcd(x^(p^(r/s)) - x, f) = 1 for every prime s | r.
bool is_irreducible(const Poly& f, int p, int r) {
    Poly x{0, 1};
    // x^(p^k) computed by repeated p-th powering
    auto frob_iterate = [&](int k) {
        Poly t = x;
        for (int i = 0; i < k; ++i) t = poly_powmod(t, p, f, p);
        return t;
    };
    Poly top = frob_iterate(r);
    Poly diff = top;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] - 1 + p) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (int s = 2; s <= r; ++s) {
        if (r % s != 0 || !is_prime(s)) continue;
        Poly t = frob_iterate(r / s);
        t.resize(std::max<size_t>(t.size(), 2), 0);
        t[1] = (t[1] - 1 + p) % p;
        trim(t);
        Poly g = poly_gcd(f, t, p);
        if (static_cast<int>(g.size()) - 1 > 0) return false;
    }
    return true;
}

} // namespace

FieldCtx FieldCtx::build(int p, int r, int size_cap) {
    if (p == 2 || !is_prime(p))
        throw Error(ErrorCode::NonOddPrime, "p must be an odd prime, got " + std::to_string(p));
    if (r < 1) throw Error(ErrorCode::BadParams, "extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > size_cap)
            throw Error(ErrorCode::TooLarge,
                        "p^r exceeds size cap " + std::to_string(size_cap));
    }

    FieldCtx F;
    F.p_ = p;
    F.r_ = r;
    F.q_ = static_cast<uint32_t>(q);

    // Lexicographically least monic irreducible modulus, low-degree
    // coefficients most significant in the comparison.
    if (r == 1) {
        F.modulus_ = {0, 1};
    } else {
        std::vector<int> c(r, 0);
        bool found = false;
        while (!found) {
            Poly f(c.begin(), c.end());
            f.push_back(1);
            if (is_irreducible(f, p, r)) {
                F.modulus_.assign(f.begin(), f.end());
                found = true;
                break;
            }
            int i = r - 1;
            while (i >= 0 && c[i] == p - 1) c[i--] = 0;
            if (i < 0) break;
            ++c[i];
        }
        if (!found)
            throw Error(ErrorCode::BadParams, "no irreducible modulus found (internal bug)");
    }

    // Multiplication needs the modulus; bootstrap slow ops before tables.
    auto decode = [&](uint32_t v) {
        std::vector<int> c(r);
        for (int i = 0; i < r; ++i) {
            c[i] = static_cast<int>(v % p);
            v /= p;
        }
        return c;
    };
    auto encode = [&](const std::vector<int>& c) {
        uint32_t v = 0;
        for (int i = r - 1; i >= 0; --i) v = v * p + c[i];
        return v;
    };
    auto raw_mul = [&](uint32_t a, uint32_t b) {
        Poly pa = decode(a), pb = decode(b);
        trim(pa);
        trim(pb);
        Poly m(F.modulus_.begin(), F.modulus_.end());
        Poly prod = poly_mulmod(pa, pb, m, p);
        prod.resize(r, 0);
        std::vector<int> c(prod.begin(), prod.end());
        return encode(c);
    };

    // Generator: least encoding with multiplicative order q - 1.
    std::vector<long long> prime_factors;
    long long n = q - 1;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) prime_factors.push_back(n);

    auto raw_pow = [&](uint32_t base, long long e) {
        uint32_t result = 1, acc = base;
        while (e > 0) {
            if (e & 1) result = raw_mul(result, acc);
            acc = raw_mul(acc, acc);
            e >>= 1;
        }
        return result;
    };

    uint32_t gen = 0;
    for (uint32_t cand = 2; cand < F.q_; ++cand) {
        bool ok = true;
        for (long long f : prime_factors) {
            if (raw_pow(cand, (q - 1) / f) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = cand;
            break;
        }
    }
    if (gen == 0)
        throw Error(ErrorCode::BadParams, "no generator found (internal bug)");
    F.generator_ = FqElem{gen};

    F.exp_table_.resize(q - 1);
    F.dlog_table_.assign(F.q_, 0);
    uint32_t acc = 1;
    for (long long k = 0; k < q - 1; ++k) {
        F.exp_table_[k] = FqElem{acc};
        F.dlog_table_[acc] = static_cast<uint32_t>(k);
        acc = raw_mul(acc, gen);
    }
    if (acc != 1)
        throw Error(ErrorCode::BadParams, "generator order mismatch (internal bug)");

    F.trace_table_.resize(F.q_);
    for (uint32_t v = 0; v < F.q_; ++v) {
        uint32_t t = 0, x = v;
        for (int i = 0; i < r; ++i) {
            // digit-wise add of x into t (no carries across base-p digits)
            uint32_t nt = 0, mul = 1, tv = t, xv = x;
            for (int j = 0; j < r; ++j) {
                nt += ((tv % p + xv % p) % p) * mul;
                tv /= p;
                xv /= p;
                mul *= p;
            }
            t = nt;
            x = raw_pow(x, p);
        }
        F.trace_table_[v] = static_cast<int>(t % p); // trace lands in F_p
    }

    if (F.q_ <= kTableCap) {
        F.add_table_.resize(static_cast<size_t>(F.q_) * F.q_);
        F.mul_table_.resize(static_cast<size_t>(F.q_) * F.q_);
        for (uint32_t a = 0; a < F.q_; ++a) {
            for (uint32_t b = 0; b < F.q_; ++b) {
                uint32_t s = 0, mul = 1, av = a, bv = b;
                for (int j = 0; j < r; ++j) {
                    s += ((av % p + bv % p) % p) * mul;
                    av /= p;
                    bv /= p;
                    mul *= p;
                }
                F.add_table_[static_cast<size_t>(a) * F.q_ + b] = s;
                F.mul_table_[static_cast<size_t>(a) * F.q_ + b] = raw_mul(a, b);
            }
        }
    }

    return F;
}

FqElem FieldCtx::from_int(long long n) const {
    long long m = n % p_;
    if (m < 0) m += p_;
    return FqElem{static_cast<uint32_t>(m)};
}

FqElem FieldCtx::from_coeffs(const std::vector<int>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > r_)
        throw Error(ErrorCode::BadParams, "too many coefficients for extension degree");
    uint32_t v = 0;
    for (int i = r_ - 1; i >= 0; --i) {
        int c = i < static_cast<int>(coeffs.size()) ? coeffs[i] % p_ : 0;
        if (c < 0) c += p_;
        v = v * p_ + c;
    }
    return FqElem{v};
}

std::vector<int> FieldCtx::coeffs(FqElem x) const {
    std::vector<int> c(r_);
    uint32_t v = x.v;
    for (int i = 0; i < r_; ++i) {
        c[i] = static_cast<int>(v % p_);
        v /= p_;
    }
    return c;
}

FqElem FieldCtx::add_slow(FqElem x, FqElem y) const {
    uint32_t s = 0, mul = 1, xv = x.v, yv = y.v;
    for (int j = 0; j < r_; ++j) {
        s += ((xv % p_ + yv % p_) % p_) * mul;
        xv /= p_;
        yv /= p_;
        mul *= p_;
    }
    return FqElem{s};
}

FqElem FieldCtx::add(FqElem x, FqElem y) const {
    if (!add_table_.empty()) return FqElem{add_table_[static_cast<size_t>(x.v) * q_ + y.v]};
    return add_slow(x, y);
}

FqElem FieldCtx::neg(FqElem x) const {
    uint32_t s = 0, mul = 1, xv = x.v;
    for (int j = 0; j < r_; ++j) {
        uint32_t d = xv % p_;
        s += (d == 0 ? 0 : p_ - d) * mul;
        xv /= p_;
        mul *= p_;
    }
    return FqElem{s};
}

FqElem FieldCtx::mul_slow(FqElem x, FqElem y) const {
    if (x.v == 0 || y.v == 0) return FqElem{0};
    uint64_t k = static_cast<uint64_t>(dlog_table_[x.v]) + dlog_table_[y.v];
    return exp_table_[k % (q_ - 1)];
}

FqElem FieldCtx::mul(FqElem x, FqElem y) const {
    if (!mul_table_.empty()) return FqElem{mul_table_[static_cast<size_t>(x.v) * q_ + y.v]};
    return mul_slow(x, y);
}

FqElem FieldCtx::inv(FqElem x) const {
    if (x.v == 0) throw Error(ErrorCode::DivZero, "inverse of zero");
    uint32_t k = dlog_table_[x.v];
    return exp_table_[(q_ - 1 - k) % (q_ - 1)];
}

FqElem FieldCtx::pow(FqElem x, long long e) const {
    if (x.v == 0) {
        if (e == 0) return one();
        if (e < 0) throw Error(ErrorCode::DivZero, "negative power of zero");
        return zero();
    }
    long long m = e % (q_ - 1);
    if (m < 0) m += q_ - 1;
    uint64_t k = static_cast<uint64_t>(dlog_table_[x.v]) * m % (q_ - 1);
    return exp_table_[k];
}

uint32_t FieldCtx::dlog(FqElem x) const {
    if (x.v == 0) throw Error(ErrorCode::DlogOfZero, "discrete log of zero");
    return dlog_table_[x.v];
}

int FieldCtx::quad_char(FqElem x) const {
    if (x.v == 0) return 0;
    return (dlog_table_[x.v] & 1) ? -1 : 1;
}

std::optional<FqElem> FieldCtx::sqrt(FqElem x) const {
    if (x.v == 0) return FqElem{0};
    uint32_t k = dlog_table_[x.v];
    if (k & 1) return std::nullopt;
    return exp_table_[k / 2];
}

std::string FieldCtx::to_string(FqElem x) const {
    if (r_ == 1) return std::to_string(x.v);
    auto c = coeffs(x);
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        if (i) os << ':';
        os << c[i];
    }
    return os.str();
}

std::string FieldCtx::modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = r_; i >= 0; --i) {
        if (modulus_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || modulus_[i] != 1) os << modulus_[i];
        if (i >= 1) {
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace hypercount
