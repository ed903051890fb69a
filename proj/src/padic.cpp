#include "hypercount/padic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace hypercount {

// ---------------------------------------------------------------------------
// exact rationals

Rat Rat::of(long long n, long long d) {
    if (d == 0) throw Error(ErrorCode::BadParams, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(std::abs(n), d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rat{n, d};
}

Rat Rat::operator+(const Rat& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rat::of(static_cast<long long>(n), static_cast<long long>(d));
}

Rat Rat::operator-(const Rat& o) const { return *this + Rat{-o.num, o.den}; }

Rat Rat::operator*(const Rat& o) const {
    __int128 n = static_cast<__int128>(num) * o.num;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rat::of(static_cast<long long>(n), static_cast<long long>(d));
}

long long Rat::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

Rat Rat::frac() const {
    long long f = floor();
    return Rat{num - f * den, den};
}

std::string Rat::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// Montgomery arithmetic mod an odd N < 2^63, used only inside the gamma sweep

namespace {

struct Mont {
    uint64_t N = 0, Ninv = 0, R2 = 0, one = 0;

    explicit Mont(uint64_t n) : N(n) {
        uint64_t x = n; // Newton iteration for n^-1 mod 2^64
        for (int i = 0; i < 6; ++i) x *= 2 - n * x;
        Ninv = ~x + 1; // -n^-1 mod 2^64
        uint64_t r = (~uint64_t{0}) % n + 1; // 2^64 mod n
        R2 = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * r % n);
        one = r;
    }
    uint64_t redc(unsigned __int128 t) const {
        uint64_t m = static_cast<uint64_t>(t) * Ninv;
        unsigned __int128 u = t + static_cast<unsigned __int128>(m) * N;
        uint64_t v = static_cast<uint64_t>(u >> 64);
        return v >= N ? v - N : v;
    }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return redc(static_cast<unsigned __int128>(a) * b);
    }
    uint64_t to_m(uint64_t a) const { return mul(a, R2); }
    uint64_t from_m(uint64_t a) const { return redc(a); }
};

} // namespace

// ---------------------------------------------------------------------------

int PadicCtx::auto_precision(const FieldCtx& F) {
    long long q = F.q();
    long long u_max = std::max<long long>(4, static_cast<long long>(std::floor(2.0 * std::sqrt(static_cast<double>(q)))));
    int d = 1;
    long long pw = F.p();
    while (pw <= 2 * u_max) {
        pw *= F.p();
        ++d;
    }
    int M = 2 * F.r() + d;
    M = std::max({M, F.r() + 2, 3});
    return M;
}

PadicCtx PadicCtx::init(const FieldCtx& F, std::optional<int> M_opt) {
    int M = M_opt.value_or(auto_precision(F));
    if (M < 2)
        throw Error(ErrorCode::BadPrecision, "precision exponent must be >= 2");
    PadicCtx ctx;
    ctx.F_ = &F;
    ctx.M_ = M;
    unsigned __int128 N = 1;
    for (int i = 0; i < M; ++i) {
        N *= F.p();
        // the gamma sweep walks [1, p^M), so the budget is compute, not width
        if (N > (static_cast<unsigned __int128>(1) << 42))
            throw Error(ErrorCode::TooLarge,
                        "p^M exceeds the 2^42 gamma-sweep budget; lower the precision");
    }
    ctx.N_ = static_cast<uint64_t>(N);
    ctx.mod_.assign(F.modulus().begin(), F.modulus().end());
    ctx.frac_den_ = 4LL * (F.q() - 1);

    // q - 1 = -1 mod p, so division by q - 1 never loses precision
    ctx.inv_mod(static_cast<uint64_t>((F.q() - 1) % ctx.N_));

    ctx.build_gamma_tables();

    // Teichmuller lifts for every nonzero element: iterate z -> z^q to the
    // fixed point starting from the naive coefficient lift.
    ctx.teich_.resize(F.q());
    for (uint32_t v = 1; v < F.q(); ++v) {
        auto coeffs = F.coeffs(FqElem{v});
        ZqElem z = ctx.zq_zero();
        for (int i = 0; i < F.r(); ++i) z.c[i] = static_cast<uint64_t>(coeffs[i]);
        for (int iter = 0; iter <= M + 2; ++iter) {
            ZqElem nz = ctx.zq_pow(z, F.q());
            if (nz == z) break;
            z = std::move(nz);
            if (iter == M + 2)
                throw Error(ErrorCode::BadPrecision, "teichmuller iteration failed to converge");
        }
        ctx.teich_[v] = std::move(z);
    }
    return ctx;
}

PadicCtx PadicCtx::with_extra_precision(int extra) const {
    return PadicCtx::init(*F_, M_ + extra);
}

uint64_t PadicCtx::powmod(uint64_t a, unsigned long long e) const {
    uint64_t res = 1 % N_;
    while (e) {
        if (e & 1) res = mulmod(res, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return res;
}

uint64_t PadicCtx::inv_mod(uint64_t a) const {
    // extended euclid; a must be a unit mod p^M
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(N_), nr = static_cast<long long>(a % N_);
    while (nr != 0) {
        long long qq = r / nr;
        t -= qq * nt;
        std::swap(t, nt);
        r -= qq * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw Error(ErrorCode::BadParams, "not a unit mod p^M");
    if (t < 0) t += static_cast<long long>(N_);
    return static_cast<uint64_t>(t);
}

long long PadicCtx::balanced(uint64_t a, int digits) const {
    uint64_t mod = 1;
    for (int i = 0; i < digits; ++i) mod *= static_cast<uint64_t>(F_->p());
    a %= mod;
    if (a > mod / 2) return static_cast<long long>(a) - static_cast<long long>(mod);
    return static_cast<long long>(a);
}

uint64_t PadicCtx::lift_of(long long num, long long den) const {
    if (den % F_->p() == 0)
        throw Error(ErrorCode::BadDenominator, "denominator divisible by p");
    long long n = num % static_cast<long long>(N_);
    if (n < 0) n += static_cast<long long>(N_);
    long long d = den % static_cast<long long>(N_);
    if (d < 0) d += static_cast<long long>(N_);
    return mulmod(static_cast<uint64_t>(n), inv_mod(static_cast<uint64_t>(d)));
}

// ---------------------------------------------------------------------------
// gamma sweep: prefix products of p-coprime integers below p^M, with
// checkpoints for on-demand arguments and an eager table for every fraction
// with denominator dividing 4(q-1)

void PadicCtx::build_gamma_tables() {
    const uint64_t N = N_;
    const uint64_t p = static_cast<uint64_t>(F_->p());
    Mont mont(N);

    uint64_t n_ck = std::min<uint64_t>(N, 1u << 15);
    ck_stride_ = (N + n_ck - 1) / n_ck;
    n_ck = (N + ck_stride_ - 1) / ck_stride_; // grid points i*stride < N
    ck_mont_.assign(n_ck, mont.one);

    // lifts of u/(4(q-1)) for u in [0, 4(q-1))
    std::vector<std::pair<uint64_t, uint64_t>> targets; // lift -> key u
    uint64_t dinv = inv_mod(static_cast<uint64_t>(frac_den_ % static_cast<long long>(N)));
    for (long long u = 0; u < frac_den_; ++u) {
        uint64_t lift = mulmod(static_cast<uint64_t>(u % static_cast<long long>(N)), dinv);
        targets.emplace_back(lift, static_cast<uint64_t>(u));
    }
    std::sort(targets.begin(), targets.end());

    std::vector<uint64_t> target_partial(targets.size(), mont.one);
    std::vector<uint64_t> interval_prod(n_ck, mont.one);

    // phase 1: independent interval products [i*stride, min((i+1)*stride, N))
    auto run_interval = [&](uint64_t i) {
        uint64_t lo = i * ck_stride_;
        uint64_t hi = std::min(N, lo + ck_stride_);
        auto t_lo = std::lower_bound(targets.begin(), targets.end(),
                                     std::make_pair(lo, uint64_t{0}));
        size_t ti = static_cast<size_t>(t_lo - targets.begin());
        uint64_t acc = mont.one;
        uint64_t j = std::max<uint64_t>(lo, 1);
        // targets below the walk start see the empty partial product
        while (ti < targets.size() && targets[ti].first < j) {
            target_partial[ti] = acc;
            ++ti;
        }
        uint64_t jm = mont.to_m(j % N);
        uint64_t jmodp = j % p;
        for (; j < hi; ++j) {
            while (ti < targets.size() && targets[ti].first == j) {
                target_partial[ti] = acc;
                ++ti;
            }
            if (jmodp != 0) acc = mont.mul(acc, jm);
            jm += mont.one;
            if (jm >= N) jm -= N;
            ++jmodp;
            if (jmodp == p) jmodp = 0;
        }
        interval_prod[i] = acc;
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (N > (1u << 22) && hw > 1) {
        std::atomic<uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                uint64_t i = next.fetch_add(1);
                if (i >= n_ck) return;
                run_interval(i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < hw; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        for (uint64_t i = 0; i < n_ck; ++i) run_interval(i);
    }

    // phase 2: serial prefix combine
    uint64_t prefix = mont.one;
    for (uint64_t i = 0; i < n_ck; ++i) {
        ck_mont_[i] = prefix;
        prefix = mont.mul(prefix, interval_prod[i]);
    }

    gamma_by_scaled_.reserve(targets.size() * 2);
    for (size_t ti = 0; ti < targets.size(); ++ti) {
        uint64_t lift = targets[ti].first;
        uint64_t f = mont.from_m(mont.mul(ck_mont_[lift / ck_stride_], target_partial[ti]));
        uint64_t val = (lift & 1) ? (N - f) % N : f; // (-1)^n prefactor
        gamma_by_scaled_[targets[ti].second] = val;
    }
}

uint64_t PadicCtx::gamma_at_lift(uint64_t n) const {
    Mont mont(N_);
    const uint64_t p = static_cast<uint64_t>(F_->p());
    uint64_t i = n / ck_stride_;
    uint64_t j = i * ck_stride_;
    uint64_t acc = ck_mont_[i];
    if (j == 0) j = 1;
    uint64_t jm = mont.to_m(j % N_);
    uint64_t jmodp = j % p;
    for (; j < n; ++j) {
        if (jmodp != 0) acc = mont.mul(acc, jm);
        jm += mont.one;
        if (jm >= N_) jm -= N_;
        ++jmodp;
        if (jmodp == p) jmodp = 0;
    }
    uint64_t f = mont.from_m(acc);
    return (n & 1) ? (N_ - f) % N_ : f;
}

uint64_t PadicCtx::gamma_res(long long num, long long den) const {
    if (den == 0 || den % F_->p() == 0)
        throw Error(ErrorCode::BadDenominator, "gamma argument outside Z_p");
    // fast path: fractions with denominator dividing 4(q-1) are precomputed,
    // keyed by the scaled fractional part; the integer part shifts by the
    // defining product, so fall back to the lift walk for anything else.
    Rat x = Rat::of(num, den);
    if (x.num >= 0 && x.num < x.den && frac_den_ % x.den == 0) {
        uint64_t key = static_cast<uint64_t>(x.num * (frac_den_ / x.den));
        auto it = gamma_by_scaled_.find(key);
        if (it != gamma_by_scaled_.end()) return it->second;
    }
    return gamma_at_lift(lift_of(num, den));
}

ZqElem PadicCtx::gamma_p(long long num, long long den) const {
    return zq_const(gamma_res(num, den));
}

// ---------------------------------------------------------------------------
// Z_q arithmetic

ZqElem PadicCtx::zq_zero() const { return ZqElem{std::vector<uint64_t>(F_->r(), 0)}; }

ZqElem PadicCtx::zq_one() const {
    auto z = zq_zero();
    z.c[0] = 1;
    return z;
}

ZqElem PadicCtx::zq_const(uint64_t a) const {
    auto z = zq_zero();
    z.c[0] = a % N_;
    return z;
}

ZqElem PadicCtx::zq_add(const ZqElem& a, const ZqElem& b) const {
    ZqElem out = a;
    for (int i = 0; i < F_->r(); ++i) out.c[i] = addmod(out.c[i], b.c[i]);
    return out;
}

ZqElem PadicCtx::zq_sub(const ZqElem& a, const ZqElem& b) const {
    ZqElem out = a;
    for (int i = 0; i < F_->r(); ++i) out.c[i] = submod(out.c[i], b.c[i]);
    return out;
}

ZqElem PadicCtx::zq_mul(const ZqElem& a, const ZqElem& b) const {
    const int r = F_->r();
    if (r == 1) return ZqElem{{mulmod(a.c[0], b.c[0])}};
    std::vector<uint64_t> prod(2 * r - 1, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            prod[i + j] = addmod(prod[i + j], mulmod(a.c[i], b.c[j]));
    // reduce by the monic lifted modulus
    for (int i = 2 * r - 2; i >= r; --i) {
        uint64_t lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < r; ++j)
            prod[i - r + j] = submod(prod[i - r + j], mulmod(lead, mod_[j]));
    }
    prod.resize(r);
    return ZqElem{std::move(prod)};
}

ZqElem PadicCtx::zq_scale(const ZqElem& a, uint64_t s) const {
    ZqElem out = a;
    for (int i = 0; i < F_->r(); ++i) out.c[i] = mulmod(out.c[i], s % N_);
    return out;
}

ZqElem PadicCtx::zq_pow(ZqElem base, unsigned long long e) const {
    ZqElem res = zq_one();
    while (e) {
        if (e & 1) res = zq_mul(res, base);
        base = zq_mul(base, base);
        e >>= 1;
    }
    return res;
}

bool PadicCtx::zq_equal_mod(const ZqElem& a, const ZqElem& b, int digits) const {
    uint64_t mod = 1;
    for (int i = 0; i < digits; ++i) mod *= static_cast<uint64_t>(F_->p());
    for (int i = 0; i < F_->r(); ++i)
        if (a.c[i] % mod != b.c[i] % mod) return false;
    return true;
}

ZqElem PadicCtx::teichmuller(FqElem x) const {
    if (x.v == 0) throw Error(ErrorCode::TeichOfZero, "teichmuller lift of zero");
    return teich_[x.v];
}

// ---------------------------------------------------------------------------
// hypergeometric sum

QpValue PadicCtx::normalize(ZqElem mantissa, int valuation, int known) const {
    const uint64_t p = static_cast<uint64_t>(F_->p());
    const int r = F_->r();
    for (;;) {
        bool all_zero = true, all_div = true;
        for (int i = 0; i < r; ++i) {
            if (mantissa.c[i] != 0) all_zero = false;
            if (mantissa.c[i] % p != 0) all_div = false;
        }
        if (all_zero || !all_div || known <= 1) {
            if (all_zero) return QpValue{zq_zero(), 0, known};
            return QpValue{std::move(mantissa), valuation, known};
        }
        for (int i = 0; i < r; ++i) mantissa.c[i] /= p;
        ++valuation;
        --known;
    }
}

RecognizedRational PadicCtx::recognize(const QpValue& v, long long bound) const {
    const int r = F_->r();
    bool all_zero = true;
    for (int i = 0; i < r; ++i)
        if (v.mantissa.c[i] != 0) all_zero = false;
    if (all_zero || v.known_digits <= 0)
        return RecognizedRational{0, 1, v};

    uint64_t mod = 1;
    for (int i = 0; i < v.known_digits; ++i) mod *= static_cast<uint64_t>(F_->p());
    for (int i = 1; i < r; ++i)
        if (v.mantissa.c[i] % mod != 0)
            throw Error(ErrorCode::RecognitionFailure,
                        "non-constant Z_q coordinates survive at working precision");

    long long num = balanced(v.mantissa.c[0], v.known_digits);
    long long den = 1;
    int w = v.valuation;
    if (w < 0) {
        for (int i = 0; i < -w; ++i) {
            den *= F_->p();
            if (den > (1LL << 60))
                throw Error(ErrorCode::RecognitionFailure, "denominator overflow");
        }
    } else {
        for (int i = 0; i < w; ++i) {
            num *= F_->p();
            if (std::abs(num) > (1LL << 60))
                throw Error(ErrorCode::RecognitionFailure, "numerator overflow");
        }
    }
    if (std::abs(num) > bound * den)
        throw Error(ErrorCode::RecognitionFailure,
                    "balanced lift " + std::to_string(num) + "/" + std::to_string(den) +
                        " exceeds bound " + std::to_string(bound));
    RecognizedRational out;
    out.num = num;
    out.den = den;
    out.raw = v;
    return out;
}

RecognizedRational PadicCtx::ngn(const std::vector<Rat>& upper, const std::vector<Rat>& lower,
                                 FqElem t, long long bound) const {
    const int n = static_cast<int>(upper.size());
    if (n == 0 || lower.size() != upper.size())
        throw Error(ErrorCode::BadParams, "parameter lists must be nonempty and equal length");
    if (t.v == 0) throw Error(ErrorCode::BadParams, "nGn needs t != 0");
    const int r = F_->r();
    const long long q = F_->q();
    const long long qm1 = q - 1;
    if (bound < 0) bound = 4 * q;
    const int slack = n * r;
    if (M_ < slack + 1)
        throw Error(ErrorCode::BadPrecision,
                    "precision too low for n=" + std::to_string(n) + " at r=" + std::to_string(r));
    for (const auto& a : upper)
        if (a.den % F_->p() == 0) throw Error(ErrorCode::BadDenominator, "upper parameter not in Z_p");
    for (const auto& b : lower)
        if (b.den % F_->p() == 0) throw Error(ErrorCode::BadDenominator, "lower parameter not in Z_p");

    // per (k, i) fractional parts of a_k p^i and -b_k p^i, and their gammas
    std::vector<Rat> alpha(n * r), beta(n * r);
    std::vector<uint64_t> inv_gamma_alpha(n * r), inv_gamma_beta(n * r);
    {
        long long pi = 1;
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < n; ++k) {
                alpha[k * r + i] = (upper[k] * Rat{pi, 1}).frac();
                beta[k * r + i] = (Rat{-lower[k].num, lower[k].den} * Rat{pi, 1}).frac();
                inv_gamma_alpha[k * r + i] = inv_mod(gamma_res(alpha[k * r + i]));
                inv_gamma_beta[k * r + i] = inv_mod(gamma_res(beta[k * r + i]));
            }
            pi *= F_->p();
        }
    }

    ZqElem acc = zq_zero();
    ZqElem omega_bar = teichmuller(F_->inv(t));
    ZqElem w = zq_one(); // omega-bar^s(t)
    for (long long s = 0; s <= qm1 - 1; ++s) {
        long long E = 0;
        uint64_t ratio = 1;
        long long pi = 1;
        for (int i = 0; i < r; ++i) {
            Rat wfrac{s * pi, qm1}; // raw s p^i / (q-1), not reduced mod 1
            for (int k = 0; k < n; ++k) {
                const Rat& A = alpha[k * r + i];
                const Rat& B = beta[k * r + i];
                long long e = -(A - wfrac).floor() - (B + wfrac).floor();
                E += e;
                ratio = mulmod(ratio, gamma_res((A - wfrac).frac()));
                ratio = mulmod(ratio, inv_gamma_alpha[k * r + i]);
                ratio = mulmod(ratio, gamma_res((B + wfrac).frac()));
                ratio = mulmod(ratio, inv_gamma_beta[k * r + i]);
            }
            pi *= F_->p();
        }
        if (E < -slack)
            throw Error(ErrorCode::BadParams, "exponent bound violated (internal bug)");
        uint64_t scale = mulmod(powmod(static_cast<uint64_t>(F_->p()), static_cast<unsigned long long>(E + slack)), ratio);
        bool negative = ((s * n) & 1LL) ^ (E & 1LL); // (-1)^{sn} (-1)^E
        ZqElem term = zq_scale(w, scale);
        acc = negative ? zq_sub(acc, term) : zq_add(acc, term);
        w = zq_mul(w, omega_bar);
    }

    // total = -1/(q-1) * p^{-slack} * acc
    uint64_t inv_qm1 = inv_mod(static_cast<uint64_t>(qm1 % static_cast<long long>(N_)));
    acc = zq_scale(acc, N_ - inv_qm1); // multiply by -(q-1)^{-1}
    QpValue val = normalize(std::move(acc), -slack, M_);
    return recognize(val, bound);
}

int g_closed_form(const FieldCtx& F, FqElem t) {
    if (t.v == 0) throw Error(ErrorCode::BadParams, "g value needs t != 0");
    if (t == F.one()) {
        int m8 = static_cast<int>(F.q() % 8);
        return (m8 == 1 || m8 == 7) ? 1 : -1;
    }
    FqElem s = F.div(F.sub(t, F.one()), t);
    auto a = F.sqrt(s);
    if (!a) return 0;
    FqElem two = F.from_int(2);
    return F.quad_char(two) *
           (F.quad_char(F.add(F.one(), *a)) + F.quad_char(F.sub(F.one(), *a)));
}

int PadicCtx::g_closed_form(FqElem t) const { return hypercount::g_closed_form(*F_, t); }

// ---------------------------------------------------------------------------
// identity checks

bool PadicCtx::identity_holds(PadicIdentityId id, const PadicIdentityParams& prm) const {
    const auto& F = *F_;
    const long long q = F.q();
    const long long qm1 = q - 1;
    const int r = F.r();

    switch (id) {
        case PadicIdentityId::floor_lemma_d: {
            if (prm.d < 2 || prm.d % F.p() == 0)
                throw Error(ErrorCode::BadParams, "floor lemma needs d >= 2, p not dividing d");
            if (prm.j < 1 || prm.j > qm1 - 1 || prm.i < 0 || prm.i >= r)
                throw Error(ErrorCode::BadParams, "floor lemma index out of range");
            long long pi = 1;
            for (int k = 0; k < prm.i; ++k) pi *= F.p();
            Rat jp{prm.j * pi, qm1};
            long long lhs = jp.floor() + Rat{-prm.d * prm.j * pi, qm1}.floor();
            long long rhs = -1;
            for (int h = 1; h < prm.d; ++h)
                rhs += (Rat{static_cast<long long>(h) * pi, prm.d}.frac() - jp).floor();
            return lhs == rhs;
        }
        case PadicIdentityId::floor_lemma_l: {
            if (prm.l < 1 || prm.l % F.p() == 0)
                throw Error(ErrorCode::BadParams, "floor lemma needs l >= 1, p not dividing l");
            if (prm.j < 0 || prm.j > qm1 - 1 || prm.i < 0 || prm.i >= r)
                throw Error(ErrorCode::BadParams, "floor lemma index out of range");
            long long pi = 1;
            for (int k = 0; k < prm.i; ++k) pi *= F.p();
            Rat jp{prm.j * pi, qm1};
            long long lhs = Rat{prm.l * prm.j * pi, qm1}.floor();
            long long rhs = 0;
            for (int h = 0; h < prm.l; ++h)
                rhs += (Rat{-static_cast<long long>(h) * pi, prm.l}.frac() + jp).floor();
            return lhs == rhs;
        }
        case PadicIdentityId::gamma_product_neg:
        case PadicIdentityId::gamma_product_pos: {
            bool neg_form = id == PadicIdentityId::gamma_product_neg;
            int t = prm.t;
            if (t < 1 || t % F.p() == 0)
                throw Error(ErrorCode::BadParams, "gamma product needs p not dividing t");
            if (prm.j < 0 || prm.j > qm1 - 1)
                throw Error(ErrorCode::BadParams, "gamma product index out of range");
            long long sgn = neg_form ? -1 : 1;
            FqElem tf = F.from_int(t);
            long long e = sgn * t * prm.j;
            ZqElem lhs = teichmuller(F.pow(tf, e));
            uint64_t scal = 1;
            long long pi = 1;
            for (int i = 0; i < r; ++i) {
                scal = mulmod(scal, gamma_res(Rat{sgn * t * prm.j * pi, qm1}.frac()));
                for (int h = 1; h < t; ++h)
                    scal = mulmod(scal, gamma_res(Rat{static_cast<long long>(h) * pi, t}.frac()));
                pi *= F.p();
            }
            lhs = zq_scale(lhs, scal);
            uint64_t rhs = 1;
            pi = 1;
            for (int i = 0; i < r; ++i) {
                for (int h = 0; h < t; ++h) {
                    Rat arg = neg_form
                        ? (Rat{(1 + static_cast<long long>(h)) * pi, t} - Rat{prm.j * pi, qm1}).frac()
                        : (Rat{static_cast<long long>(h) * pi, t} + Rat{prm.j * pi, qm1}).frac();
                    rhs = mulmod(rhs, gamma_res(arg));
                }
                pi *= F.p();
            }
            return zq_equal_mod(lhs, zq_const(rhs), M_);
        }
        case PadicIdentityId::gross_koblitz_unit: {
            // q phi(-1) = (-p)^r prod_i gamma(<p^i/2>)^2 mod p^M
            int phi_m1 = F.quad_char(F.neg(F.one()));
            uint64_t lhs = static_cast<uint64_t>(q % static_cast<long long>(N_));
            if (phi_m1 < 0) lhs = (N_ - lhs) % N_;
            uint64_t rhs = powmod(static_cast<uint64_t>(F.p()), r);
            if (r & 1) rhs = (N_ - rhs) % N_;
            long long pi = 1;
            for (int i = 0; i < r; ++i) {
                uint64_t g = gamma_res(Rat{pi, 2}.frac());
                rhs = mulmod(rhs, mulmod(g, g));
                pi *= F.p();
            }
            return lhs == rhs;
        }
    }
    throw Error(ErrorCode::BadParams, "unknown identity");
}

} // namespace hypercount
