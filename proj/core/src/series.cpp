#include "latinv/series.hpp"

#include <algorithm>

namespace latinv {

namespace {
long long clamp_prec(long long v) {
    return std::min<long long>(v, Series::kExact);
}
}  // namespace

void Series::normalize() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        v_min_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) v_min_ = 0;
    if (!coeffs_.empty() && prec_ != kExact) {
        // stored window must lie strictly below the precision cap
        if (v_min_ + static_cast<int>(coeffs_.size()) > prec_) {
            coeffs_.resize(static_cast<size_t>(std::max(0, prec_ - v_min_)));
            while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
            if (coeffs_.empty()) v_min_ = 0;
        }
    }
}

Series Series::zero(const FieldCtx* ctx) {
    Series s;
    s.ctx_ = ctx;
    return s;
}

Series Series::zero_capped(const FieldCtx* ctx, int prec) {
    Series s;
    s.ctx_ = ctx;
    s.prec_ = prec;
    return s;
}

Series Series::monomial(const FieldCtx* ctx, const FFElem& a, int k) {
    Series s;
    s.ctx_ = ctx;
    if (!a.is_zero()) {
        s.v_min_ = k;
        s.coeffs_ = {a};
    }
    return s;
}

Series Series::constant(const FFElem& a) { return monomial(a.ctx, a, 0); }

Series Series::one(const FieldCtx* ctx) { return monomial(ctx, ctx->one(), 0); }

Series Series::t(const FieldCtx* ctx) { return monomial(ctx, ctx->one(), 1); }

Series Series::t_pow(const FieldCtx* ctx, int k) { return monomial(ctx, ctx->one(), k); }

Series Series::from_coeffs(const FieldCtx* ctx, int lo, std::vector<FFElem> coeffs) {
    Series s;
    s.ctx_ = ctx;
    s.v_min_ = lo;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
}

std::optional<int> Series::val() const {
    if (!coeffs_.empty()) return v_min_;
    if (is_exact()) return std::nullopt;
    raise(ErrCode::PrecisionExceeded,
          "series is zero to precision t^" + std::to_string(prec_) +
              "; valuation not certified");
}

int Series::val_nonzero() const {
    auto v = val();
    if (!v) raise(ErrCode::ZeroInput, "valuation of exact zero series");
    return *v;
}

int Series::val_lower_bound() const {
    if (!coeffs_.empty()) return v_min_;
    if (is_exact()) return kExact;
    return prec_;
}

FFElem Series::coeff(int k) const {
    if (!coeffs_.empty() && k >= v_min_ && k < v_min_ + static_cast<int>(coeffs_.size()))
        return coeffs_[static_cast<size_t>(k - v_min_)];
    if (k < prec_) return ctx_->zero();
    raise(ErrCode::PrecisionExceeded,
          "coefficient at t^" + std::to_string(k) + " beyond precision " +
              std::to_string(prec_));
}

Series Series::operator+(const Series& o) const {
    Series out;
    out.ctx_ = ctx_;
    out.prec_ = static_cast<int>(clamp_prec(std::min<long long>(prec_, o.prec_)));
    if (coeffs_.empty() && o.coeffs_.empty()) {
        out.normalize();
        return out;
    }
    int lo = coeffs_.empty() ? o.v_min_ : (o.coeffs_.empty() ? v_min_ : std::min(v_min_, o.v_min_));
    int hi_a = coeffs_.empty() ? lo : v_min_ + static_cast<int>(coeffs_.size());
    int hi_b = o.coeffs_.empty() ? lo : o.v_min_ + static_cast<int>(o.coeffs_.size());
    int hi = std::max(hi_a, hi_b);
    if (out.prec_ != kExact) hi = std::min(hi, out.prec_);
    out.v_min_ = lo;
    out.coeffs_.assign(static_cast<size_t>(std::max(0, hi - lo)), ctx_->zero());
    for (int k = lo; k < hi; ++k) {
        FFElem v = ctx_->zero();
        if (!coeffs_.empty() && k >= v_min_ && k < hi_a)
            v = v + coeffs_[static_cast<size_t>(k - v_min_)];
        if (!o.coeffs_.empty() && k >= o.v_min_ && k < hi_b)
            v = v + o.coeffs_[static_cast<size_t>(k - o.v_min_)];
        out.coeffs_[static_cast<size_t>(k - lo)] = v;
    }
    out.normalize();
    return out;
}

Series Series::operator-() const {
    Series out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    Series out;
    out.ctx_ = ctx_;
    if (is_zero() || o.is_zero()) return zero(ctx_);
    long long prec = kExact;
    if (prec_ != kExact) prec = std::min(prec, static_cast<long long>(prec_) + o.val_lower_bound());
    if (o.prec_ != kExact) prec = std::min(prec, static_cast<long long>(o.prec_) + val_lower_bound());
    out.prec_ = static_cast<int>(clamp_prec(prec));
    if (coeffs_.empty() || o.coeffs_.empty()) {
        out.normalize();
        return out;
    }
    int lo = v_min_ + o.v_min_;
    int hi = lo + static_cast<int>(coeffs_.size() + o.coeffs_.size()) - 1;
    if (out.prec_ != kExact) hi = std::min(hi, out.prec_);
    out.v_min_ = lo;
    out.coeffs_.assign(static_cast<size_t>(std::max(0, hi - lo)), ctx_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) {
            long long k = static_cast<long long>(lo) + static_cast<long long>(i + j);
            if (k - lo >= static_cast<long long>(out.coeffs_.size())) break;
            out.coeffs_[static_cast<size_t>(k - lo)] =
                out.coeffs_[static_cast<size_t>(k - lo)] + coeffs_[i] * o.coeffs_[j];
        }
    }
    out.normalize();
    return out;
}

Series Series::scale(const FFElem& a) const {
    if (a.is_zero()) {
        if (is_exact()) return zero(ctx_);
        return zero_capped(ctx_, prec_ == kExact ? ctx_->work_prec() : prec_);
    }
    Series out = *this;
    for (auto& c : out.coeffs_) c = c * a;
    return out;
}

Series Series::shift(int k) const {
    Series out = *this;
    if (!out.coeffs_.empty()) out.v_min_ += k;
    if (out.prec_ != kExact) out.prec_ = static_cast<int>(clamp_prec(static_cast<long long>(out.prec_) + k));
    return out;
}

Series Series::inverse() const {
    if (is_zero()) raise(ErrCode::ZeroInput, "inverse of exact zero series");
    if (coeffs_.empty())
        raise(ErrCode::SingularSeries, "inverse needs a certified nonzero leading coefficient");
    int v = v_min_;
    int rel = ctx_->work_prec();
    if (prec_ != kExact) rel = std::min(rel, prec_ - v);
    // invert the unit part c_0(1 + w) by long division
    FFElem c0inv = ctx_->inv(coeffs_[0]);
    std::vector<FFElem> d(static_cast<size_t>(rel), ctx_->zero());
    d[0] = c0inv;
    for (int j = 1; j < rel; ++j) {
        FFElem acc = ctx_->zero();
        for (int i = 1; i <= j && i < static_cast<int>(coeffs_.size()); ++i)
            acc = acc + coeffs_[static_cast<size_t>(i)] * d[static_cast<size_t>(j - i)];
        d[static_cast<size_t>(j)] = -(c0inv * acc);
    }
    Series out;
    out.ctx_ = ctx_;
    out.v_min_ = -v;
    out.coeffs_ = std::move(d);
    out.prec_ = static_cast<int>(clamp_prec(static_cast<long long>(-v) + rel));
    out.normalize();
    return out;
}

Series Series::sigma(long long k) const {
    Series out = *this;
    for (auto& c : out.coeffs_) c = ctx_->frobenius(c, k);
    return out;
}

Series Series::truncated(int prec) const {
    Series out = *this;
    out.prec_ = std::min(out.prec_, prec);
    out.normalize();
    return out;
}

bool Series::operator==(const Series& o) const {
    return ctx_ == o.ctx_ && v_min_ == o.v_min_ && prec_ == o.prec_ && coeffs_ == o.coeffs_;
}

int Series::cmp(const Series& a, const Series& b) {
    if (a.v_min_ != b.v_min_) return a.v_min_ < b.v_min_ ? -1 : 1;
    size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
        unsigned long long ia = a.ctx_->index(a.coeffs_[i]);
        unsigned long long ib = b.ctx_->index(b.coeffs_[i]);
        if (ia != ib) return ia < ib ? -1 : 1;
    }
    if (a.coeffs_.size() != b.coeffs_.size())
        return a.coeffs_.size() < b.coeffs_.size() ? -1 : 1;
    if (a.prec_ != b.prec_) return a.prec_ < b.prec_ ? -1 : 1;
    return 0;
}

std::string Series::to_string() const {
    if (coeffs_.empty()) {
        if (is_exact()) return "0";
        return "O(t^" + std::to_string(prec_) + ")";
    }
    std::string s;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += ctx_->to_string(coeffs_[i]) + "*t^" + std::to_string(v_min_ + static_cast<int>(i));
    }
    if (prec_ != kExact) s += " + O(t^" + std::to_string(prec_) + ")";
    return s;
}

}  // namespace latinv
