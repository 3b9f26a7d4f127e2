#include "latinv/isocrystal.hpp"

#include <algorithm>
#include <numeric>

namespace latinv {

namespace {
int gcd_int(int a, int b) { return std::gcd(a, b); }

// floor division / positive modulus for chain index arithmetic
int floordiv(int a, int b) { return (a >= 0) ? a / b : -(((-a) + b - 1) / b); }
int posmod(int a, int b) { int m = a % b; return m < 0 ? m + b : m; }
}  // namespace

void Frame::index_chains() {
    chain_off_.clear();
    int off = 0;
    for (int len : chain_len_) {
        chain_off_.push_back(off);
        off += len;
    }
    h_total_ = off;
}

Frame Frame::superbasic_res(FieldCtxPtr ctx, int h, std::vector<int> m_tau) {
    if (h < 1 || m_tau.empty()) raise(ErrCode::BadSpec, "superbasic frame needs h >= 1, d >= 1");
    int m = std::accumulate(m_tau.begin(), m_tau.end(), 0);
    if (gcd_int(posmod(m, h) == 0 ? h : posmod(m, h), h) != 1 && h != 1)
        raise(ErrCode::BadSlope, "superbasic slope m/(dh) needs gcd(m, h) = 1");
    Frame fr;
    fr.kind_ = FrameKind::SuperbasicRes;
    fr.ctx_ = std::move(ctx);
    fr.d_ = static_cast<int>(m_tau.size());
    fr.res_h_ = h;
    fr.m_tau_ = std::move(m_tau);
    fr.chain_len_.assign(static_cast<size_t>(fr.d_), h);
    fr.phi_shift_.resize(static_cast<size_t>(fr.d_));
    fr.phi_target_.resize(static_cast<size_t>(fr.d_));
    for (int tau = 0; tau < fr.d_; ++tau) {
        int st = (tau + 1) % fr.d_;
        fr.phi_target_[static_cast<size_t>(tau)] = st;
        fr.phi_shift_[static_cast<size_t>(tau)] = fr.m_tau_[static_cast<size_t>(st)];
    }
    fr.tau0_twist_ = fr.d_ * h;
    fr.index_chains();
    return fr;
}

Frame Frame::isoclinic_gl(FieldCtxPtr ctx, std::vector<SlopeDatum> slopes) {
    if (slopes.empty()) raise(ErrCode::BadSpec, "need at least one isotypic summand");
    Frame fr;
    fr.kind_ = FrameKind::IsoclinicGL;
    fr.ctx_ = std::move(ctx);
    fr.slopes_ = std::move(slopes);
    for (const auto& s : fr.slopes_) {
        if (s.h < 1 || s.l < 1) raise(ErrCode::BadSpec, "slope datum needs h >= 1, l >= 1");
        if (gcd_int(posmod(s.m, s.h) == 0 ? s.h : posmod(s.m, s.h), s.h) != 1 && s.h != 1)
            raise(ErrCode::BadSlope, "need gcd(m_z, h_z) = 1");
        for (int i = 0; i < s.l; ++i) {
            fr.chain_len_.push_back(s.h);
            fr.phi_shift_.push_back(s.m);
            fr.phi_target_.push_back(static_cast<int>(fr.phi_target_.size()));
        }
    }
    fr.tau0_twist_ = (fr.slopes_.size() == 1) ? fr.slopes_[0].h : 0;
    if (fr.slopes_.size() == 1) {
        // minimal positive a with a m + a' h = 1
        int m = fr.slopes_[0].m, h = fr.slopes_[0].h;
        for (int a = 1; a <= h; ++a)
            if (posmod(a * m - 1, h) == 0) {
                fr.tau1_twist_ = a;
                break;
            }
        if (h == 1) fr.tau1_twist_ = 1;
    }
    fr.index_chains();
    return fr;
}

Frame Frame::gsp4(FieldCtxPtr ctx) {
    Frame fr;
    fr.kind_ = FrameKind::GSp4;
    fr.ctx_ = std::move(ctx);
    fr.chain_len_ = {2, 2};
    fr.phi_shift_ = {1, 1};
    fr.phi_target_ = {0, 1};
    fr.tau0_twist_ = 2;
    fr.index_chains();
    const FieldCtx* c = fr.ctx_.get();
    Form f;
    f.gram = SMat(c, 4, 4);
    f.gram.at(0, 3) = Series::one(c);
    f.gram.at(1, 2) = Series::one(c);
    f.gram.at(2, 1) = -Series::one(c);
    f.gram.at(3, 0) = -Series::one(c);
    f.twist = 0;
    f.kind = FormKind::Alternating;
    fr.form_ = std::move(f);
    return fr;
}

Frame Frame::unitary_n0(FieldCtxPtr ctx, int n) {
    if (n < 2) raise(ErrCode::BadSpec, "unitary frame needs n >= 2");
    Frame fr;
    fr.kind_ = FrameKind::UnitaryN0;
    fr.ctx_ = std::move(ctx);
    fr.n_ = n;
    fr.chain_len_.assign(static_cast<size_t>(n), 1);
    fr.phi_shift_.assign(static_cast<size_t>(n), 0);
    fr.phi_target_.resize(static_cast<size_t>(n));
    std::iota(fr.phi_target_.begin(), fr.phi_target_.end(), 0);
    fr.tau0_twist_ = 2;
    fr.index_chains();
    const FieldCtx* c = fr.ctx_.get();
    Form f;
    f.gram = SMat(c, n, n);
    for (int i = 0; i < n - 1; ++i) f.gram.at(i, i) = Series::t(c);
    f.gram.at(n - 1, n - 1) = Series::one(c);
    f.twist = 1;
    f.kind = FormKind::Hermitian;
    fr.form_ = std::move(f);
    return fr;
}

const Form& Frame::form() const {
    if (!form_) raise(ErrCode::BadSpec, "frame carries no form");
    return *form_;
}

std::vector<std::pair<int, int>> Frame::blocks() const {
    if (kind_ == FrameKind::SuperbasicRes) {
        std::vector<std::pair<int, int>> b;
        for (int tau = 0; tau < d_; ++tau)
            b.emplace_back(chain_off_[static_cast<size_t>(tau)], res_h_);
        return b;
    }
    return {{0, h_total_}};
}

int Frame::coord(int comp, int j) const {
    return chain_off_[static_cast<size_t>(comp)] + j;
}

std::vector<Series> Frame::zero_vector() const {
    return std::vector<Series>(static_cast<size_t>(h_total_), Series::zero(ctx_.get()));
}

std::vector<Series> Frame::chain_vector(int comp, int idx) const {
    int len = chain_len_[static_cast<size_t>(comp)];
    int pos = posmod(idx, len);
    int carry = floordiv(idx, len);
    auto v = zero_vector();
    v[static_cast<size_t>(coord(comp, pos))] = Series::t_pow(ctx_.get(), carry);
    return v;
}

std::vector<Series> Frame::apply_phi(const std::vector<Series>& v) const {
    if (kind_ == FrameKind::UnitaryN0) raise(ErrCode::BadSpec, "unitary N_0 frame has no Phi");
    auto out = zero_vector();
    for (int c = 0; c < num_components(); ++c) {
        int len = chain_len_[static_cast<size_t>(c)];
        int tgt = phi_target_[static_cast<size_t>(c)];
        int s = phi_shift_[static_cast<size_t>(c)];
        for (int j = 0; j < len; ++j) {
            const Series& x = v[static_cast<size_t>(coord(c, j))];
            if (x.is_zero()) continue;
            int pos = posmod(j + s, len), carry = floordiv(j + s, len);
            size_t o = static_cast<size_t>(coord(tgt, pos));
            out[o] = out[o] + x.sigma(1).shift(carry);
        }
    }
    return out;
}

std::vector<Series> Frame::apply_phi_inv(const std::vector<Series>& v) const {
    if (kind_ == FrameKind::UnitaryN0) raise(ErrCode::BadSpec, "unitary N_0 frame has no Phi");
    auto out = zero_vector();
    for (int c = 0; c < num_components(); ++c) {
        int len = chain_len_[static_cast<size_t>(c)];
        int tgt = phi_target_[static_cast<size_t>(c)];
        int s = phi_shift_[static_cast<size_t>(c)];
        for (int j = 0; j < len; ++j) {
            const Series& x = v[static_cast<size_t>(coord(tgt, j))];
            if (x.is_zero()) continue;
            int pos = posmod(j - s, len), carry = floordiv(j - s, len);
            size_t o = static_cast<size_t>(coord(c, pos));
            out[o] = out[o] + x.sigma(-1).shift(carry);
        }
    }
    return out;
}

std::vector<Series> Frame::apply_v_op(const std::vector<Series>& v) const {
    auto out = apply_phi_inv(v);
    for (auto& s : out) s = s.shift(1);
    return out;
}

std::vector<Series> Frame::apply_pi(const std::vector<Series>& v, int z, int count) const {
    if (kind_ == FrameKind::UnitaryN0) raise(ErrCode::BadSpec, "unitary N_0 frame has no pi");
    // pi is O-linear: chain shift without coefficient twist
    std::vector<bool> selected(static_cast<size_t>(num_components()), z < 0);
    if (z >= 0) {
        if (kind_ != FrameKind::IsoclinicGL) raise(ErrCode::BadSpec, "per-summand pi needs an isoclinic frame");
        int c0 = 0;
        for (size_t zz = 0; zz < slopes_.size(); ++zz) {
            for (int i = 0; i < slopes_[zz].l; ++i, ++c0)
                if (static_cast<int>(zz) == z) selected[static_cast<size_t>(c0)] = true;
        }
    }
    auto out = zero_vector();
    for (int c = 0; c < num_components(); ++c) {
        int len = chain_len_[static_cast<size_t>(c)];
        for (int j = 0; j < len; ++j) {
            const Series& x = v[static_cast<size_t>(coord(c, j))];
            if (x.is_zero()) continue;
            if (!selected[static_cast<size_t>(c)]) {
                size_t o = static_cast<size_t>(coord(c, j));
                out[o] = out[o] + x;
                continue;
            }
            int pos = posmod(j + count, len), carry = floordiv(j + count, len);
            size_t o = static_cast<size_t>(coord(c, pos));
            out[o] = out[o] + x.shift(carry);
        }
    }
    return out;
}

std::vector<Series> Frame::apply_tau0(const std::vector<Series>& v) const {
    if (tau0_twist_ == 0) raise(ErrCode::BadSpec, "tau0 undefined for this frame");
    auto out = v;
    for (auto& s : out) s = s.sigma(tau0_twist_);
    return out;
}

std::vector<Series> Frame::apply_tau1(const std::vector<Series>& v) const {
    if (kind_ == FrameKind::IsoclinicGL) {
        if (slopes_.size() != 1) raise(ErrCode::BadSpec, "tau1 needs an isoclinic frame");
        // (b sigma)^a eps^{a'}: coefficient twist sigma^a composed with the
        // central chain shift
        auto out = v;
        for (auto& s : out) s = s.sigma(tau1_twist_);
        return apply_pi(out, -1, 1);
    }
    if (kind_ == FrameKind::SuperbasicRes) return apply_pi(v, -1, 1);
    raise(ErrCode::BadSpec, "tau1 defined for GL kinds only");
}

std::vector<Series> Frame::apply_eps(const std::vector<Series>& v, int k) const {
    auto out = v;
    for (auto& s : out) s = s.shift(k);
    return out;
}

std::vector<Series> Frame::apply_token(const std::vector<Series>& v, const Token& t) const {
    switch (t.kind) {
        case Token::Phi: return apply_phi(v);
        case Token::PhiInv: return apply_phi_inv(v);
        case Token::V: return apply_v_op(v);
        case Token::Pi: return apply_pi(v, t.arg == 0 ? -1 : t.arg - 1, 1);
        case Token::PiInv: return apply_pi(v, t.arg == 0 ? -1 : t.arg - 1, -1);
        case Token::Tau0: return apply_tau0(v);
        case Token::Tau1: return apply_tau1(v);
        case Token::Eps: return apply_eps(v, t.arg);
    }
    raise(ErrCode::BadInput, "unknown token");
}

std::vector<Series> Frame::apply_word(const SemilinearWord& w, const std::vector<Series>& v) const {
    auto cur = v;
    for (const auto& t : w) cur = apply_token(cur, t);
    return cur;
}

Lattice Frame::map_lattice(
    const Lattice& M,
    const std::function<std::vector<Series>(const std::vector<Series>&)>& op) const {
    SMat out(ctx_.get(), M.dim(), M.rank());
    for (int j = 0; j < M.rank(); ++j) out.set_col(j, op(M.basis().col(j)));
    return Lattice::from_cols(out);
}

Lattice Frame::phi_lattice(const Lattice& M) const {
    return map_lattice(M, [this](const std::vector<Series>& v) { return apply_phi(v); });
}

Lattice Frame::v_lattice(const Lattice& M) const {
    return map_lattice(M, [this](const std::vector<Series>& v) { return apply_v_op(v); });
}

Lattice Frame::pi_lattice(const Lattice& M, int count) const {
    return map_lattice(M, [this, count](const std::vector<Series>& v) { return apply_pi(v, -1, count); });
}

Lattice Frame::tau0_lattice(const Lattice& M) const {
    return map_lattice(M, [this](const std::vector<Series>& v) { return apply_tau0(v); });
}

Lattice Frame::tau1_lattice(const Lattice& M) const {
    return map_lattice(M, [this](const std::vector<Series>& v) { return apply_tau1(v); });
}

Lattice Frame::standard_lattice() const { return Lattice::standard(ctx_.get(), h_total_); }

bool is_dieudonne(const Frame& fr, const Lattice& M) {
    for (int j = 0; j < M.rank(); ++j) {
        if (!member(fr.apply_phi(M.basis().col(j)), M)) return false;
        if (!member(fr.apply_v_op(M.basis().col(j)), M)) return false;
    }
    return true;
}

Cochar frame_inv(const Frame& fr, const Lattice& M1, const Lattice& M2) {
    auto blocks = fr.blocks();
    if (blocks.size() == 1) return relative_position(M1, M2);
    // graded lattices: split the canonical basis into per-block bases
    auto split = [&](const Lattice& M) {
        std::vector<SMat> parts;
        for (auto [off, size] : blocks) {
            std::vector<int> cols;
            for (int j = 0; j < M.rank(); ++j) {
                int pr = M.pivot_rows()[static_cast<size_t>(j)];
                if (pr >= off && pr < off + size) cols.push_back(j);
            }
            SMat part(fr.field(), size, static_cast<int>(cols.size()));
            for (size_t jj = 0; jj < cols.size(); ++jj) {
                for (int i = 0; i < M.dim(); ++i) {
                    const Series& e = M.basis().at(i, cols[jj]);
                    if (i >= off && i < off + size) {
                        part.at(i - off, static_cast<int>(jj)) = e;
                    } else if (e.known_nonzero()) {
                        raise(ErrCode::BadInput, "lattice is not graded for the product frame");
                    }
                }
            }
            parts.push_back(std::move(part));
        }
        return parts;
    };
    auto p1 = split(M1), p2 = split(M2);
    Cochar out;
    for (size_t b = 0; b < blocks.size(); ++b) {
        Cochar mu = relative_position(Lattice::from_cols(p1[b]), Lattice::from_cols(p2[b]));
        out.insert(out.end(), mu.begin(), mu.end());
    }
    return out;
}

bool in_adlv(const Frame& fr, const Lattice& M, const Cochar& mu) {
    return frame_inv(fr, M, fr.phi_lattice(M)) == mu;
}

std::optional<std::vector<Series>> coords_in(const std::vector<Series>& v, const Lattice& M) {
    std::vector<Series> w = v;
    std::vector<Series> x(static_cast<size_t>(M.rank()), Series::zero(M.ctx()));
    for (int j = 0; j < M.rank(); ++j) {
        int r = M.pivot_rows()[static_cast<size_t>(j)];
        int pv = M.pivot_vals()[static_cast<size_t>(j)];
        const Series& e = w[static_cast<size_t>(r)];
        if (e.is_zero()) continue;
        if (e.known_nonzero() && e.val_nonzero() < pv) return std::nullopt;
        if (!e.known_nonzero() && !e.is_zero() && e.prec() < pv)
            raise(ErrCode::PrecisionExceeded, "coordinates undecidable at pivot row");
        Series q = e.shift(-pv);
        x[static_cast<size_t>(j)] = q;
        for (int i = 0; i < M.dim(); ++i)
            w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] - q * M.basis().at(i, j);
    }
    for (const auto& e : w) {
        if (e.known_nonzero()) return std::nullopt;
        if (!e.is_zero() && e.prec() < M.ctx()->work_prec() / 2)
            raise(ErrCode::PrecisionExceeded, "coordinate residual not certified zero");
    }
    return x;
}

namespace {

int ffelem_matrix_rank(std::vector<std::vector<FFElem>> rows, const FieldCtx* ctx) {
    size_t nrows = rows.size();
    size_t ncols = nrows ? rows[0].size() : 0;
    int rank = 0;
    size_t rr = 0;
    for (size_t c = 0; c < ncols && rr < nrows; ++c) {
        size_t piv = rr;
        while (piv < nrows && rows[piv][c].is_zero()) ++piv;
        if (piv == nrows) continue;
        std::swap(rows[rr], rows[piv]);
        FFElem inv = ctx->inv(rows[rr][c]);
        for (size_t i = 0; i < nrows; ++i) {
            if (i == rr || rows[i][c].is_zero()) continue;
            FFElem f = rows[i][c] * inv;
            for (size_t j = c; j < ncols; ++j) rows[i][j] = rows[i][j] - f * rows[rr][j];
        }
        ++rank;
        ++rr;
    }
    return rank;
}

}  // namespace

int a_number(const Frame& fr, const Lattice& M) {
    if (!is_dieudonne(fr, M)) raise(ErrCode::NotDieudonne, "a_number needs a Dieudonne lattice");
    int r = M.rank();
    const FieldCtx* ctx = fr.field();
    // residues of Phi(b_j), V(b_j) in M/tM, written in M's own basis
    std::vector<std::vector<FFElem>> rows;
    auto push_residue = [&](const std::vector<Series>& img) {
        auto x = coords_in(img, M);
        if (!x) raise(ErrCode::NotDieudonne, "image escaped the lattice");
        std::vector<FFElem> row;
        row.reserve(static_cast<size_t>(r));
        for (const auto& s : *x) row.push_back(s.coeff(0));
        rows.push_back(std::move(row));
    };
    for (int j = 0; j < r; ++j) push_residue(fr.apply_phi(M.basis().col(j)));
    for (int j = 0; j < r; ++j) push_residue(fr.apply_v_op(M.basis().col(j)));
    return r - ffelem_matrix_rank(std::move(rows), ctx);
}

Lattice dieudonne_closure(const Frame& fr, const std::vector<Series>& v, int depth) {
    bool nonzero = false;
    for (const auto& s : v) nonzero = nonzero || s.known_nonzero();
    if (!nonzero) raise(ErrCode::ZeroInput, "closure of the zero vector");
    if (depth < 0) {
        int maxh = 1;
        for (int c = 0; c < fr.num_components(); ++c) maxh = std::max(maxh, fr.chain_len(c));
        depth = 2 * fr.dim() * maxh;
    }
    std::vector<std::vector<Series>> level{v};
    std::vector<std::vector<Series>> all{v};
    SMat gens(fr.field(), fr.dim(), 1);
    gens.set_col(0, v);
    Lattice span = Lattice::from_cols(gens);
    for (int k = 1; k <= depth + 1; ++k) {
        // level k: words Phi^x V^y with x + y = k, index by y
        std::vector<std::vector<Series>> next;
        next.reserve(level.size() + 1);
        for (size_t y = 0; y < level.size(); ++y) next.push_back(fr.apply_phi(level[y]));
        next.push_back(fr.apply_v_op(level.back()));
        bool contained = true;
        for (const auto& w : next) contained = contained && member(w, span);
        if (contained) return span;
        for (const auto& w : next) all.push_back(w);
        SMat g(fr.field(), fr.dim(), static_cast<int>(all.size()));
        for (size_t j = 0; j < all.size(); ++j) g.set_col(static_cast<int>(j), all[j]);
        span = Lattice::from_cols(g);
        level = std::move(next);
    }
    raise(ErrCode::DepthExhausted,
          "orbit span did not stabilize within depth " + std::to_string(depth));
}

bool is_minuscule(const Cochar& mu) {
    if (!weakly_decreasing(mu)) return false;
    for (int v : mu)
        if (v != 0 && v != 1) return false;
    return true;
}

}  // namespace latinv
