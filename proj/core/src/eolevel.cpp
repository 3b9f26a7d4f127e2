#include "latinv/eolevel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace latinv {

WeylElt WeylElt::identity(int h) {
    WeylElt w;
    w.perm.resize(static_cast<size_t>(h));
    for (int i = 0; i < h; ++i) w.perm[static_cast<size_t>(i)] = i;
    return w;
}

WeylElt WeylElt::operator*(const WeylElt& o) const {
    WeylElt out;
    out.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
        out.perm[i] = perm[static_cast<size_t>(o.perm[i])];
    return out;
}

WeylElt WeylElt::inverse() const {
    WeylElt out;
    out.perm.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) out.perm[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    return out;
}

int WeylElt::length() const {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv;
}

std::string cycle_string(const WeylElt& w) {
    int h = w.size();
    std::vector<bool> seen(static_cast<size_t>(h), false);
    std::string out;
    for (int start = 0; start < h; ++start) {
        if (seen[static_cast<size_t>(start)] || w(start) == start) continue;
        out += "(";
        int cur = start;
        bool first = true;
        do {
            seen[static_cast<size_t>(cur)] = true;
            if (!first && h > 9) out += ",";
            out += (h > 9) ? std::to_string(cur + 1) : std::string(1, static_cast<char>('1' + cur));
            first = false;
            cur = w(cur);
        } while (cur != start);
        out += ")";
    }
    if (out.empty()) out = "()";
    return out;
}

WeylElt from_cycle_string(const std::string& s, int h) {
    WeylElt w = WeylElt::identity(h);
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') {
            ++i;
            continue;
        }
        ++i;
        std::vector<int> cyc;
        int cur = 0;
        bool have = false;
        while (i < s.size() && s[i] != ')') {
            if (s[i] >= '0' && s[i] <= '9') {
                cur = cur * 10 + (s[i] - '0');
                have = true;
            } else if (s[i] == ',') {
                if (have) cyc.push_back(cur - 1);
                cur = 0;
                have = false;
            } else {
                raise(ErrCode::BadInput, "bad cycle string");
            }
            // single-digit convention when h <= 9 and no commas
            if (h <= 9 && have) {
                cyc.push_back(cur - 1);
                cur = 0;
                have = false;
            }
            ++i;
        }
        if (have) cyc.push_back(cur - 1);
        ++i;
        for (size_t k = 0; k < cyc.size(); ++k) {
            int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
            if (a < 0 || a >= h) raise(ErrCode::BadInput, "cycle entry out of range");
            w.perm[static_cast<size_t>(a)] = b;
        }
    }
    return w;
}

WeylElt longest_element(int h) {
    WeylElt w;
    w.perm.resize(static_cast<size_t>(h));
    for (int i = 0; i < h; ++i) w.perm[static_cast<size_t>(i)] = h - 1 - i;
    return w;
}

MuWeylData mu_weyl_set(const Cochar& mu, int h) {
    if (static_cast<int>(mu.size()) != h || !is_minuscule(mu))
        raise(ErrCode::NotMinuscule, "need a minuscule weakly decreasing cocharacter");
    int m = 0;
    for (int v : mu) m += v;
    MuWeylData data;
    data.mu = mu;
    data.h = h;
    data.m = m;
    // x_mu = w_0 w_{0,mu} with w_{0,mu} the block reversal
    WeylElt w0mu = WeylElt::identity(h);
    for (int i = 0; i < m; ++i) w0mu.perm[static_cast<size_t>(i)] = m - 1 - i;
    for (int i = m; i < h; ++i) w0mu.perm[static_cast<size_t>(i)] = m + (h - 1 - i);
    data.x_mu = longest_element(h) * w0mu;
    // minimal-length representatives of W_{M_mu} \ W: choose the positions
    // receiving the small block, values ascending along each fiber
    std::vector<int> pick(static_cast<size_t>(m));
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == m) {
            WeylElt w = WeylElt::identity(h);
            std::vector<bool> in(static_cast<size_t>(h), false);
            for (int v : pick) in[static_cast<size_t>(v)] = true;
            int small = 0, large = m;
            for (int i = 0; i < h; ++i)
                w.perm[static_cast<size_t>(i)] = in[static_cast<size_t>(i)] ? small++ : large++;
            data.reps.push_back(std::move(w));
            return;
        }
        for (int v = start; v <= h - (m - k); ++v) {
            pick[static_cast<size_t>(k)] = v;
            rec(v + 1, k + 1);
        }
    };
    if (m == 0) {
        data.reps.push_back(WeylElt::identity(h));
    } else {
        rec(0, 0);
    }
    return data;
}

namespace {

// reduced row-echelon basis of the span of the given row vectors
std::vector<std::vector<FFElem>> rref(std::vector<std::vector<FFElem>> rows, const FieldCtx* ctx) {
    size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    size_t rr = 0;
    for (size_t c = 0; c < nc && rr < nr; ++c) {
        size_t piv = rr;
        while (piv < nr && rows[piv][c].is_zero()) ++piv;
        if (piv == nr) continue;
        std::swap(rows[rr], rows[piv]);
        FFElem inv = ctx->inv(rows[rr][c]);
        for (auto& x : rows[rr]) x = x * inv;
        for (size_t i = 0; i < nr; ++i) {
            if (i == rr || rows[i][c].is_zero()) continue;
            FFElem f = rows[i][c];
            for (size_t j = 0; j < nc; ++j) rows[i][j] = rows[i][j] - f * rows[rr][j];
        }
        ++rr;
    }
    rows.resize(rr);
    return rows;
}

struct Subspace {
    std::vector<std::vector<FFElem>> basis;  // rref rows
    int dim() const { return static_cast<int>(basis.size()); }
    bool operator==(const Subspace& o) const { return basis == o.basis; }
    bool operator<(const Subspace& o) const {
        if (basis.size() != o.basis.size()) return basis.size() < o.basis.size();
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis[i].size(); ++j) {
                auto a = basis[i][j].ctx->index(basis[i][j]);
                auto b = o.basis[i][j].ctx->index(o.basis[i][j]);
                if (a != b) return a < b;
            }
        return false;
    }
};

Subspace make_subspace(std::vector<std::vector<FFElem>> rows, const FieldCtx* ctx) {
    return Subspace{rref(std::move(rows), ctx)};
}

// image of a subspace under the semilinear map (matrix, sigma^tw)
Subspace semilinear_image(const std::vector<std::vector<FFElem>>& mat, int tw, const Subspace& U,
                          const FieldCtx* ctx, int h) {
    std::vector<std::vector<FFElem>> rows;
    for (const auto& u : U.basis) {
        std::vector<FFElem> img(static_cast<size_t>(h), ctx->zero());
        for (int j = 0; j < h; ++j) {
            FFElem c = ctx->frobenius(u[static_cast<size_t>(j)], tw);
            if (c.is_zero()) continue;
            for (int i = 0; i < h; ++i)
                img[static_cast<size_t>(i)] = img[static_cast<size_t>(i)] + mat[static_cast<size_t>(i)][static_cast<size_t>(j)] * c;
        }
        rows.push_back(std::move(img));
    }
    return make_subspace(std::move(rows), ctx);
}

// kernel of the matrix as row vectors {x : mat sigma^tw(x) = 0}
Subspace semilinear_preimage(const std::vector<std::vector<FFElem>>& mat, int tw, const Subspace& U,
                             const FieldCtx* ctx, int h) {
    // conditions: C mat sigma^tw(x) = 0 where U = ker C; build C from U
    // U given by basis rows; C rows = null space of the transpose of U-basis
    // first: annihilator of U = kernel of U-basis matrix (rows) acting on columns
    std::vector<std::vector<FFElem>> urows = U.basis;
    // solve y: urows-perp: the set {y : for all u in U, sum u_j y_j = 0}? No:
    // we need functionals vanishing on U: kernel of U^T, i.e. solve U y = 0.
    // compute kernel of the (dim x h) matrix urows
    std::vector<std::vector<FFElem>> R = urows;
    size_t nr = R.size();
    std::vector<int> pivot_col;
    R = rref(std::move(R), ctx);
    nr = R.size();
    std::vector<bool> is_pivot(static_cast<size_t>(h), false);
    for (const auto& row : R) {
        for (int j = 0; j < h; ++j)
            if (!row[static_cast<size_t>(j)].is_zero()) {
                is_pivot[static_cast<size_t>(j)] = true;
                pivot_col.push_back(j);
                break;
            }
    }
    std::vector<std::vector<FFElem>> C;
    for (int free = 0; free < h; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<FFElem> y(static_cast<size_t>(h), ctx->zero());
        y[static_cast<size_t>(free)] = ctx->one();
        for (size_t r = 0; r < R.size(); ++r)
            y[static_cast<size_t>(pivot_col[r])] = -R[r][static_cast<size_t>(free)];
        C.push_back(std::move(y));
    }
    // now solve (C mat) sigma^tw(x) = 0: first solve (C mat) z = 0, then
    // x = sigma^{-tw}(z)
    std::vector<std::vector<FFElem>> CM;
    for (const auto& c : C) {
        std::vector<FFElem> row(static_cast<size_t>(h), ctx->zero());
        for (int j = 0; j < h; ++j) {
            FFElem acc = ctx->zero();
            for (int i = 0; i < h; ++i) acc = acc + c[static_cast<size_t>(i)] * mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
            row[static_cast<size_t>(j)] = acc;
        }
        CM.push_back(std::move(row));
    }
    // kernel of CM
    std::vector<std::vector<FFElem>> K = rref(std::move(CM), ctx);
    std::vector<int> kpiv;
    std::vector<bool> kis(static_cast<size_t>(h), false);
    for (const auto& row : K)
        for (int j = 0; j < h; ++j)
            if (!row[static_cast<size_t>(j)].is_zero()) {
                kis[static_cast<size_t>(j)] = true;
                kpiv.push_back(j);
                break;
            }
    std::vector<std::vector<FFElem>> xs;
    for (int free = 0; free < h; ++free) {
        if (kis[static_cast<size_t>(free)]) continue;
        std::vector<FFElem> z(static_cast<size_t>(h), ctx->zero());
        z[static_cast<size_t>(free)] = ctx->one();
        for (size_t r = 0; r < K.size(); ++r)
            z[static_cast<size_t>(kpiv[r])] = -K[r][static_cast<size_t>(free)];
        for (auto& c : z) c = ctx->frobenius(c, -tw);
        xs.push_back(std::move(z));
    }
    return make_subspace(std::move(xs), ctx);
}

int subspace_image_dim(const std::vector<std::vector<FFElem>>& mat, int tw, const Subspace& U,
                       const FieldCtx* ctx, int h) {
    return semilinear_image(mat, tw, U, ctx, h).dim();
}

}  // namespace

ResidueModule residue_module(const Frame& fr, const Lattice& M) {
    if (!M.full_rank()) raise(ErrCode::NotFullRank, "residue module needs a full-rank lattice");
    const FieldCtx* ctx = fr.field();
    int h = M.rank();
    ResidueModule D;
    D.ctx = ctx;
    D.h = h;
    D.Fbar.assign(static_cast<size_t>(h), std::vector<FFElem>(static_cast<size_t>(h), ctx->zero()));
    D.Vbar = D.Fbar;
    for (int j = 0; j < h; ++j) {
        auto xf = coords_in(fr.apply_phi(M.basis().col(j)), M);
        auto xv = coords_in(fr.apply_v_op(M.basis().col(j)), M);
        if (!xf || !xv) raise(ErrCode::NotDieudonne, "lattice is not Phi- and V-stable");
        for (int i = 0; i < h; ++i) {
            D.Fbar[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*xf)[static_cast<size_t>(i)].coeff(0);
            D.Vbar[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*xv)[static_cast<size_t>(i)].coeff(0);
        }
    }
    return D;
}

ResidueModule model_residue(const FieldCtx* ctx, const MuWeylData& data, const WeylElt& w) {
    int h = data.h;
    ResidueModule D;
    D.ctx = ctx;
    D.h = h;
    D.Fbar.assign(static_cast<size_t>(h), std::vector<FFElem>(static_cast<size_t>(h), ctx->zero()));
    D.Vbar = D.Fbar;
    WeylElt g = w * data.x_mu;
    for (int i = 0; i < h; ++i) {
        if (data.mu[static_cast<size_t>(i)] == 0)
            D.Fbar[static_cast<size_t>(g(i))][static_cast<size_t>(i)] = ctx->one();
        else
            D.Vbar[static_cast<size_t>(i)][static_cast<size_t>(g(i))] = ctx->one();
    }
    return D;
}

FiltSignature canonical_filtration_signature(const ResidueModule& D) {
    const FieldCtx* ctx = D.ctx;
    int h = D.h;
    // validate the minuscule residue conditions: im Fbar = ker Vbar and
    // im Vbar = ker Fbar (the "= 0" composites hold by construction)
    std::vector<std::vector<FFElem>> id(static_cast<size_t>(h),
                                        std::vector<FFElem>(static_cast<size_t>(h), ctx->zero()));
    for (int i = 0; i < h; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = ctx->one();
    Subspace full = make_subspace(id, ctx);
    Subspace zero{{}};
    Subspace imF = semilinear_image(D.Fbar, 1, full, ctx, h);
    Subspace imV = semilinear_image(D.Vbar, -1, full, ctx, h);
    Subspace kerF = semilinear_preimage(D.Fbar, 1, zero, ctx, h);
    Subspace kerV = semilinear_preimage(D.Vbar, -1, zero, ctx, h);
    if (!(imF == kerV) || !(imV == kerF))
        raise(ErrCode::NotBT1, "residue module violates im F = ker V, im V = ker F");

    std::vector<Subspace> members{zero, full};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Subspace> add;
        for (const auto& X : members) {
            Subspace fx = semilinear_image(D.Fbar, 1, X, ctx, h);
            Subspace vx = semilinear_preimage(D.Vbar, -1, X, ctx, h);
            for (auto& Y : {fx, vx}) {
                bool known = false;
                for (const auto& Z : members) known = known || (Z == Y);
                for (const auto& Z : add) known = known || (Z == Y);
                if (!known) add.push_back(Y);
            }
        }
        if (!add.empty()) {
            grew = true;
            for (auto& Y : add) members.push_back(std::move(Y));
        }
    }
    std::sort(members.begin(), members.end(),
              [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
    // the closure must be a chain
    for (size_t i = 1; i < members.size(); ++i) {
        if (members[i].dim() == members[i - 1].dim() && !(members[i] == members[i - 1]))
            raise(ErrCode::NotBT1, "canonical filtration is not a chain");
    }
    FiltSignature sig;
    for (const auto& X : members) {
        int fd = subspace_image_dim(D.Fbar, 1, X, ctx, h);
        if (sig.empty() || sig.back() != std::make_pair(X.dim(), fd))
            sig.emplace_back(X.dim(), fd);
    }
    return sig;
}

WeylElt trunc_level1(const Frame& fr, const Lattice& M, const Cochar& mu) {
    if (!is_minuscule(mu)) raise(ErrCode::NotMinuscule, "trunc_level1 needs minuscule mu");
    if (!in_adlv(fr, M, mu)) raise(ErrCode::NotInADLV, "lattice not in the mu-cell");
    MuWeylData data = mu_weyl_set(mu, static_cast<int>(mu.size()));
    FiltSignature target = canonical_filtration_signature(residue_module(fr, M));
    std::vector<WeylElt> matches;
    for (const auto& w : data.reps) {
        FiltSignature sig = canonical_filtration_signature(model_residue(fr.field(), data, w));
        if (sig == target) matches.push_back(w);
    }
    if (matches.empty()) raise(ErrCode::NoMatch, "no model matches the filtration signature");
    if (matches.size() > 1) raise(ErrCode::AmbiguousMatch, "multiple models match the signature");
    return matches[0];
}

WeylElt bruhat_invariant(const WeylElt& w, const Cochar& mu) {
    int h = w.size();
    MuWeylData data = mu_weyl_set(mu, h);
    int m = data.m;
    // generators of W_{M_mu} and of x_mu W_{M_mu} x_mu^{-1}
    std::vector<WeylElt> left, right;
    for (int i = 0; i + 1 < h; ++i) {
        if (i + 1 == m) continue;  // crosses the block boundary
        WeylElt s = WeylElt::identity(h);
        std::swap(s.perm[static_cast<size_t>(i)], s.perm[static_cast<size_t>(i + 1)]);
        left.push_back(s);
        right.push_back(data.x_mu * s * data.x_mu.inverse());
    }
    // BFS over the double coset
    auto encode = [&](const WeylElt& u) {
        unsigned long long code = 0;
        for (int v : u.perm) code = code * 16 + static_cast<unsigned long long>(v);
        return code;
    };
    std::unordered_set<unsigned long long> seen;
    std::vector<WeylElt> queue{w};
    seen.insert(encode(w));
    WeylElt best = w;
    int best_len = w.length();
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        WeylElt cur = queue[qi];
        int cl = cur.length();
        if (cl < best_len || (cl == best_len && cur.perm < best.perm)) {
            best = cur;
            best_len = cl;
        }
        for (const auto& s : left) {
            WeylElt nxt = s * cur;
            if (seen.insert(encode(nxt)).second) queue.push_back(nxt);
        }
        for (const auto& s : right) {
            WeylElt nxt = cur * s;
            if (seen.insert(encode(nxt)).second) queue.push_back(nxt);
        }
    }
    return best;
}

WeylElt opposite_borel(const WeylElt& w) {
    WeylElt w0 = longest_element(w.size());
    return w0 * w * w0;
}

Cochar opposite_mu(const Cochar& mu) { return Cochar(mu.rbegin(), mu.rend()); }

}  // namespace latinv
