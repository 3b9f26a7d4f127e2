#include "latinv/ffield.hpp"

#include <algorithm>
#include <numeric>

namespace latinv {

namespace {

// Dense F_p[x] helpers on uint8_t coefficient vectors (lowest degree first).
using Poly = std::vector<uint8_t>;

int pdeg(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

Poly ptrim(Poly a) {
    a.resize(static_cast<size_t>(pdeg(a) + 1));
    return a;
}

Poly pmul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<uint8_t>((c[i + j] + a[i] * b[j]) % p);
    }
    return ptrim(std::move(c));
}

Poly pmod(Poly a, const Poly& f, int p) {
    int df = pdeg(f);
    uint8_t lead_inv = 1;
    // f monic in all our uses; tolerate general lead anyway
    for (int v = 1; v < p; ++v)
        if (v * f[df] % p == 1) { lead_inv = static_cast<uint8_t>(v); break; }
    for (int i = pdeg(a); i >= df; --i) {
        if (a[i] == 0) continue;
        int coef = a[i] * lead_inv % p;
        for (int j = 0; j <= df; ++j) {
            int idx = i - df + j;
            a[idx] = static_cast<uint8_t>((a[idx] + p - coef * f[j] % p) % p);
        }
    }
    return ptrim(std::move(a));
}

Poly pgcd(Poly a, Poly b, int p) {
    while (pdeg(b) >= 0) {
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^k) mod f, computed by iterated p-th powers.
Poly xp_pow(const Poly& f, int p, int k) {
    Poly x{0, 1};
    Poly cur = pmod(x, f, p);
    for (int step = 0; step < k; ++step) {
        // cur^p via square-and-multiply on exponent p
        Poly result{1};
        Poly base = cur;
        int exp = p;
        while (exp > 0) {
            if (exp & 1) result = pmod(pmul(result, base, p), f, p);
            base = pmod(pmul(base, base, p), f, p);
            exp >>= 1;
        }
        cur = std::move(result);
    }
    return cur;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

bool FieldCtx::poly_irreducible(const Poly& f) const {
    int n = pdeg(f);
    if (n < 1) return false;
    // Rabin: x^{p^n} = x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for primes l|n
    Poly xpn = xp_pow(f, p_, n);
    Poly x{0, 1};
    if (ptrim(xpn) != pmod(x, f, p_)) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime(l)) continue;
        Poly g = xp_pow(f, p_, n / l);
        // g - x
        Poly diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<uint8_t>((diff[1] + p_ - 1) % p_);
        diff = ptrim(std::move(diff));
        Poly gc = pgcd(f, diff, p_);
        if (pdeg(gc) != 0) return false;
    }
    return true;
}

Poly FieldCtx::find_defining_poly() const {
    // Lexicographically least monic irreducible of degree n, coefficient
    // tuples (c_0, ..., c_{n-1}) compared with the constant term first.
    Poly f(static_cast<size_t>(n_) + 1, 0);
    f[n_] = 1;
    std::vector<int> c(n_, 0);
    while (true) {
        for (int i = 0; i < n_; ++i) f[i] = static_cast<uint8_t>(c[i]);
        if (poly_irreducible(f)) return f;
        // increment tuple: last coordinate is least significant
        int pos = n_ - 1;
        while (pos >= 0) {
            if (++c[pos] < p_) break;
            c[pos] = 0;
            --pos;
        }
        if (pos < 0) raise(ErrCode::BadSpec, "no irreducible polynomial found");
    }
}

FieldCtxPtr FieldCtx::make(int p, int r, int e, int work_prec) {
    if (!is_prime(p)) raise(ErrCode::BadSpec, "p must be prime");
    if (r < 1 || e < 1) raise(ErrCode::BadSpec, "need r >= 1 and e >= 1");
    if (p > 251) raise(ErrCode::BadSpec, "p too large for byte-packed elements");
    if (static_cast<long long>(r) * e > kMaxFieldDeg)
        raise(ErrCode::BadSpec, "field degree r*e exceeds supported maximum 16");
    if (work_prec < 4) raise(ErrCode::BadSpec, "work_prec too small");
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->r_ = r;
    ctx->e_ = e;
    ctx->n_ = r * e;
    ctx->work_prec_ = work_prec;
    ctx->q_ = 1;
    for (int i = 0; i < r; ++i) ctx->q_ *= static_cast<unsigned long long>(p);
    ctx->poly_ = ctx->find_defining_poly();
    ctx->build_tables();
    return ctx;
}

void FieldCtx::build_tables() {
    // reduction rows x^{n+k} mod f
    red_.assign(static_cast<size_t>(std::max(0, n_ - 1)), {});
    Poly cur(static_cast<size_t>(n_) + 1, 0);
    cur[n_] = 1;
    for (int k = 0; k <= n_ - 2; ++k) {
        Poly red = pmod(cur, poly_, p_);
        red.resize(n_, 0);
        for (int j = 0; j < n_; ++j) red_[k][j] = red[j];
        // multiply by x
        cur.insert(cur.begin(), 0);
    }
    // p-power matrix: column j = (x^j)^p mod f
    pmat_.assign(static_cast<size_t>(n_), {});
    for (int j = 0; j < n_; ++j) {
        Poly xj(static_cast<size_t>(j) + 1, 0);
        xj[j] = 1;
        Poly result{1};
        Poly base = pmod(xj, poly_, p_);
        int exp = p_;
        while (exp > 0) {
            if (exp & 1) result = pmod(pmul(result, base, p_), poly_, p_);
            base = pmod(pmul(base, base, p_), poly_, p_);
            exp >>= 1;
        }
        result.resize(n_, 0);
        for (int i = 0; i < n_; ++i) pmat_[j][i] = result[i];
    }
    // sigma^k for k = 0..e-1 as iterated matrix products
    auto apply_mat = [&](const std::vector<std::array<uint8_t, kMaxFieldDeg>>& m,
                         const std::array<uint8_t, kMaxFieldDeg>& v) {
        std::array<uint8_t, kMaxFieldDeg> out{};
        for (int j = 0; j < n_; ++j) {
            if (v[j] == 0) continue;
            for (int i = 0; i < n_; ++i)
                out[i] = static_cast<uint8_t>((out[i] + v[j] * m[j][i]) % p_);
        }
        return out;
    };
    std::vector<std::array<uint8_t, kMaxFieldDeg>> id(n_);
    for (int j = 0; j < n_; ++j) id[j][j] = 1;
    sigma_.clear();
    sigma_.push_back(id);
    std::vector<std::array<uint8_t, kMaxFieldDeg>> step = id;
    // one sigma = r applications of the p-power map
    auto compose_p = [&](std::vector<std::array<uint8_t, kMaxFieldDeg>> m) {
        std::vector<std::array<uint8_t, kMaxFieldDeg>> out(n_);
        for (int j = 0; j < n_; ++j) out[j] = apply_mat(pmat_, m[j]);
        return out;
    };
    for (int k = 1; k < e_; ++k) {
        for (int i = 0; i < r_; ++i) step = compose_p(step);
        sigma_.push_back(step);
    }
    if (e_ > 1) {
        // nothing: sigma_ built incrementally above
    } else {
        sigma_.resize(1);
    }
}

unsigned long long FieldCtx::size() const {
    unsigned long long s = 1;
    for (int i = 0; i < n_; ++i) {
        if (s > (~0ULL) / static_cast<unsigned long long>(p_))
            raise(ErrCode::BadSpec, "field size overflows 64 bits");
        s *= static_cast<unsigned long long>(p_);
    }
    return s;
}

FFElem FieldCtx::zero() const {
    FFElem x;
    x.ctx = this;
    return x;
}

FFElem FieldCtx::one() const {
    FFElem x = zero();
    x.c[0] = 1;
    return x;
}

FFElem FieldCtx::gen() const {
    if (n_ == 1) return one();
    FFElem x = zero();
    x.c[1] = 1;
    return x;
}

FFElem FieldCtx::from_digits(const std::vector<uint8_t>& digits) const {
    if (static_cast<int>(digits.size()) > n_)
        raise(ErrCode::BadInput, "digit list longer than field degree");
    FFElem x = zero();
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] >= p_) raise(ErrCode::BadInput, "digit out of range");
        x.c[i] = digits[i];
    }
    return x;
}

std::vector<uint8_t> FieldCtx::digits(const FFElem& x) const {
    return std::vector<uint8_t>(x.c.begin(), x.c.begin() + n_);
}

FFElem FieldCtx::from_index(unsigned long long idx) const {
    FFElem x = zero();
    for (int i = 0; i < n_ && idx > 0; ++i) {
        x.c[i] = static_cast<uint8_t>(idx % p_);
        idx /= p_;
    }
    if (idx > 0) raise(ErrCode::BadInput, "index out of field range");
    return x;
}

unsigned long long FieldCtx::index(const FFElem& x) const {
    unsigned long long idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * p_ + x.c[i];
    return idx;
}

bool FFElem::operator==(const FFElem& o) const {
    if (ctx != o.ctx) return false;
    int n = ctx ? ctx->deg() : 0;
    return std::equal(c.begin(), c.begin() + n, o.c.begin());
}

bool FFElem::is_zero() const {
    int n = ctx->deg();
    return std::all_of(c.begin(), c.begin() + n, [](uint8_t v) { return v == 0; });
}

bool FFElem::is_one() const {
    if (c[0] != 1) return false;
    int n = ctx->deg();
    return std::all_of(c.begin() + 1, c.begin() + n, [](uint8_t v) { return v == 0; });
}

FFElem FFElem::operator+(const FFElem& o) const {
    FFElem out = *this;
    int p = ctx->p(), n = ctx->deg();
    for (int i = 0; i < n; ++i) out.c[i] = static_cast<uint8_t>((c[i] + o.c[i]) % p);
    return out;
}

FFElem FFElem::operator-(const FFElem& o) const {
    FFElem out = *this;
    int p = ctx->p(), n = ctx->deg();
    for (int i = 0; i < n; ++i) out.c[i] = static_cast<uint8_t>((c[i] + p - o.c[i]) % p);
    return out;
}

FFElem FFElem::operator-() const {
    FFElem out = *this;
    int p = ctx->p(), n = ctx->deg();
    for (int i = 0; i < n; ++i) out.c[i] = static_cast<uint8_t>((p - c[i]) % p);
    return out;
}

FFElem FieldCtx::reduce_product(const std::array<uint8_t, 2 * kMaxFieldDeg>& prod) const {
    FFElem out = zero();
    for (int i = 0; i < n_; ++i) out.c[i] = prod[i];
    for (int k = 0; k <= n_ - 2; ++k) {
        uint8_t v = prod[n_ + k];
        if (v == 0) continue;
        for (int j = 0; j < n_; ++j)
            out.c[j] = static_cast<uint8_t>((out.c[j] + v * red_[k][j]) % p_);
    }
    return out;
}

FFElem FFElem::operator*(const FFElem& o) const {
    const FieldCtx* f = ctx;
    int p = f->p(), n = f->deg();
    std::array<uint8_t, 2 * kMaxFieldDeg> prod{};
    for (int i = 0; i < n; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (o.c[j] == 0) continue;
            prod[i + j] = static_cast<uint8_t>((prod[i + j] + c[i] * o.c[j]) % p);
        }
    }
    return f->reduce_product(prod);
}

FFElem FieldCtx::inv(const FFElem& x) const {
    if (x.is_zero()) raise(ErrCode::ZeroInput, "inverse of zero");
    // extended Euclid in F_p[x] against the defining polynomial
    Poly a = poly_;
    Poly b(x.c.begin(), x.c.begin() + n_);
    b = ptrim(std::move(b));
    Poly s0{}, s1{1};  // coefficients tracking b-side combination
    while (pdeg(b) > 0) {
        // divide a by b
        Poly q(static_cast<size_t>(std::max(0, pdeg(a) - pdeg(b) + 1)), 0);
        Poly rem = a;
        int db = pdeg(b);
        int lead_inv = 1;
        for (int v = 1; v < p_; ++v)
            if (v * b[db] % p_ == 1) { lead_inv = v; break; }
        for (int i = pdeg(rem); i >= db; --i) {
            if (rem[i] == 0) continue;
            int coef = rem[i] * lead_inv % p_;
            q[i - db] = static_cast<uint8_t>(coef);
            for (int j = 0; j <= db; ++j)
                rem[i - db + j] =
                    static_cast<uint8_t>((rem[i - db + j] + p_ - coef * b[j] % p_) % p_);
        }
        rem = ptrim(std::move(rem));
        // (a, b) <- (b, rem); (s0, s1) <- (s1, s0 - q*s1)
        Poly qs = pmul(q, s1, p_);
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i)
            s2[i] = static_cast<uint8_t>((s2[i] + p_ - qs[i]) % p_);
        a = std::move(b);
        b = std::move(rem);
        s0 = std::move(s1);
        s1 = ptrim(std::move(s2));
    }
    if (pdeg(b) != 0) raise(ErrCode::ZeroInput, "element not invertible");
    int lead_inv = 1;
    for (int v = 1; v < p_; ++v)
        if (v * b[0] % p_ == 1) { lead_inv = v; break; }
    FFElem out = zero();
    for (size_t i = 0; i < s1.size() && static_cast<int>(i) < n_; ++i)
        out.c[i] = static_cast<uint8_t>(s1[i] * lead_inv % p_);
    return out;
}

FFElem FieldCtx::pow(const FFElem& x, long long k) const {
    FFElem base = x;
    if (k < 0) {
        base = inv(x);
        k = -k;
    }
    FFElem result = one();
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

FFElem FieldCtx::frobenius_p(const FFElem& x, int k) const {
    FFElem cur = x;
    for (int step = 0; step < k; ++step) {
        FFElem next = zero();
        for (int j = 0; j < n_; ++j) {
            if (cur.c[j] == 0) continue;
            for (int i = 0; i < n_; ++i)
                next.c[i] = static_cast<uint8_t>((next.c[i] + cur.c[j] * pmat_[j][i]) % p_);
        }
        cur = next;
    }
    return cur;
}

FFElem FieldCtx::frobenius(const FFElem& x, long long k) const {
    long long kk = ((k % e_) + e_) % e_;
    if (kk == 0) return x;
    const auto& m = sigma_[static_cast<size_t>(kk)];
    FFElem out = zero();
    for (int j = 0; j < n_; ++j) {
        if (x.c[j] == 0) continue;
        for (int i = 0; i < n_; ++i)
            out.c[i] = static_cast<uint8_t>((out.c[i] + x.c[j] * m[j][i]) % p_);
    }
    return out;
}

int FieldCtx::element_degree(const FFElem& x) const {
    if (x.is_zero()) raise(ErrCode::ZeroInput, "element_degree of zero");
    FFElem cur = x;
    for (int d = 1; d <= n_; ++d) {
        cur = frobenius_p(cur, 1);
        if (cur == x) return d;
    }
    raise(ErrCode::BadSpec, "Frobenius orbit did not close");
}

FFElem FieldCtx::embed(const FieldCtx& sub, const FFElem& x) const {
    if (x.ctx != &sub) raise(ErrCode::BadInput, "element not in claimed subfield");
    if (sub.deg() == 0 || n_ % sub.deg() != 0)
        raise(ErrCode::BadInput, "degree does not divide; no embedding");
    // Locate (and cache) the lex-least root of the subfield's defining
    // polynomial in this field; map the power basis through it.
    FFElem root = zero();
    bool found = false;
    for (const auto& entry : embed_cache_) {
        if (entry.first == &sub) {
            root = entry.second;
            found = true;
            break;
        }
    }
    if (!found) {
        unsigned long long total = size();
        const Poly& f = sub.defining_poly();
        for (unsigned long long idx = 0; idx < total; ++idx) {
            FFElem cand = from_index(idx);
            FFElem acc = zero();
            FFElem power = one();
            for (size_t i = 0; i < f.size(); ++i) {
                if (f[i] != 0) {
                    FFElem term = power;
                    for (int rep = 1; rep < f[i]; ++rep) term = term + power;
                    acc = acc + term;
                }
                power = power * cand;
            }
            if (acc.is_zero()) {
                root = cand;
                found = true;
                break;
            }
        }
        if (!found) raise(ErrCode::BadSpec, "no root of subfield polynomial found");
        embed_cache_.emplace_back(&sub, root);
    }
    FFElem acc = zero();
    FFElem power = one();
    for (int i = 0; i < sub.deg(); ++i) {
        if (x.c[i] != 0) {
            FFElem term = power;
            for (int rep = 1; rep < x.c[i]; ++rep) term = term + power;
            acc = acc + term;
        }
        power = power * root;
    }
    return acc;
}

std::string FieldCtx::to_string(const FFElem& x) const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
        if (i) s += ",";
        s += std::to_string(static_cast<int>(x.c[i]));
    }
    s += "]";
    return s;
}

}  // namespace latinv
