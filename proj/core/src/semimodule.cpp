#include "latinv/semimodule.hpp"

#include <algorithm>
#include <numeric>

namespace latinv {

namespace {

int floordiv(int a, int b) { return (a >= 0) ? a / b : -(((-a) + b - 1) / b); }
int posmod(int a, int b) { int m = a % b; return m < 0 ? m + b : m; }

int chain_base(const Frame& fr) {
    return fr.kind() == FrameKind::SuperbasicRes ? 1 : 0;
}

// start index of a chain-component vector w (length h), base-adjusted;
// kGammaInf if w = 0, PrecisionExceeded if vanishing is not certified
int chain_start(const Frame& fr, const std::vector<Series>& w, int h, int base) {
    int best = kGammaInf;
    for (int j = 0; j < h; ++j) {
        const Series& s = w[static_cast<size_t>(j)];
        if (s.known_nonzero()) best = std::min(best, j + base + h * s.val_nonzero());
    }
    for (int j = 0; j < h; ++j) {
        const Series& s = w[static_cast<size_t>(j)];
        if (!s.known_nonzero() && !s.is_zero()) {
            // an unknown tail may not start earlier than the certified best
            if (j + base + h * s.prec() <= best &&
                s.prec() < fr.field()->work_prec() / 2)
                raise(ErrCode::PrecisionExceeded, "start index not certified");
        }
    }
    return best;
}

std::vector<Series> component_part(const Frame& fr, const std::vector<Series>& v, int comp) {
    int h = fr.chain_len(comp);
    std::vector<Series> w;
    w.reserve(static_cast<size_t>(h));
    for (int j = 0; j < h; ++j) w.push_back(v[static_cast<size_t>(fr.coord(comp, j))]);
    return w;
}

}  // namespace

bool SemiModuleChart::contains(int comp, int idx) const {
    for (int a : minima[static_cast<size_t>(comp)]) {
        if (((idx - a) % h + h) % h == 0 && idx >= a) return true;
    }
    return false;
}

GammaVec start_gamma(const Frame& fr, const std::vector<Series>& v) {
    GammaVec g;
    bool nonzero = false;
    for (int c = 0; c < fr.num_components(); ++c) {
        int s = chain_start(fr, component_part(fr, v, c), fr.chain_len(c), chain_base(fr));
        if (s < kGammaInf) nonzero = true;
        g.push_back(s);
    }
    if (!nonzero) raise(ErrCode::ZeroInput, "start vector of the zero vector");
    return g;
}

SemiModuleChart chart_of_lattice(const Frame& fr, const Lattice& M) {
    if (fr.kind() != FrameKind::SuperbasicRes && fr.kind() != FrameKind::IsoclinicGL)
        raise(ErrCode::BadSpec, "charts defined for superbasic-res and isoclinic frames");
    const FieldCtx* ctx = fr.field();
    int base = chain_base(fr);
    SemiModuleChart chart;
    chart.h = fr.chain_len(0);
    for (int c = 0; c < fr.num_components(); ++c) {
        int h = fr.chain_len(c);
        if (h != chart.h) raise(ErrCode::BadSpec, "chart needs equal chain lengths");
        // project the basis columns onto the chain coordinates
        std::vector<std::vector<Series>> cols;
        for (int j = 0; j < M.rank(); ++j) {
            auto w = component_part(fr, M.basis().col(j), c);
            bool nz = false;
            for (const auto& e : w) nz = nz || e.known_nonzero();
            if (nz) cols.push_back(std::move(w));
        }
        // valuation-echelon: reduce until the start indices hit h distinct
        // residue classes; those starts are the chart minima
        auto start_of = [&](const std::vector<Series>& w) { return chain_start(fr, w, h, base); };
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> starts(cols.size());
            for (size_t i = 0; i < cols.size(); ++i) starts[i] = start_of(cols[i]);
            for (size_t a = 0; a < cols.size() && !changed; ++a) {
                for (size_t b = 0; b < cols.size() && !changed; ++b) {
                    if (a == b) continue;
                    if (starts[a] == kGammaInf || starts[b] == kGammaInf) continue;
                    if ((starts[b] - starts[a]) % h != 0 || starts[b] < starts[a]) continue;
                    // kill the leading term of column b with column a
                    int sa = starts[a], sb = starts[b];
                    int ja = posmod(sa - base, h), jb = posmod(sb - base, h);
                    FFElem ca = cols[a][static_cast<size_t>(ja)].coeff(floordiv(sa - base, h));
                    FFElem cb = cols[b][static_cast<size_t>(jb)].coeff(floordiv(sb - base, h));
                    Series fac = Series::monomial(ctx, cb * ctx->inv(ca), (sb - sa) / h);
                    for (int j = 0; j < h; ++j)
                        cols[b][static_cast<size_t>(j)] =
                            cols[b][static_cast<size_t>(j)] - fac * cols[a][static_cast<size_t>(j)];
                    int snew = start_of(cols[b]);
                    if (snew == kGammaInf)
                        raise(ErrCode::BadInput, "projected basis columns were dependent");
                    changed = true;
                }
            }
        }
        std::vector<int> minima;
        for (const auto& col : cols) {
            int s = start_of(col);
            if (s < kGammaInf) minima.push_back(s);
        }
        if (static_cast<int>(minima.size()) != h)
            raise(ErrCode::BadInput, "chain projection not full rank");
        std::sort(minima.begin(), minima.end());
        chart.minima.push_back(std::move(minima));
    }
    return chart;
}

SemiModuleChart mu_to_chart(const std::vector<std::vector<int>>& mu, int h) {
    SemiModuleChart chart;
    chart.h = h;
    for (const auto& comp : mu) {
        if (static_cast<int>(comp.size()) != h) raise(ErrCode::BadInput, "mu component length != h");
        std::vector<int> minima;
        for (int i = 1; i <= h; ++i)
            minima.push_back(i + comp[static_cast<size_t>(i - 1)] * h);
        std::sort(minima.begin(), minima.end());
        chart.minima.push_back(std::move(minima));
    }
    return chart;
}

std::vector<std::vector<int>> chart_to_mu(const SemiModuleChart& chart) {
    std::vector<std::vector<int>> mu;
    int h = chart.h;
    for (const auto& minima : chart.minima) {
        std::vector<int> comp(static_cast<size_t>(h));
        std::vector<bool> seen(static_cast<size_t>(h), false);
        for (int a : minima) {
            int cls = ((a - 1) % h + h) % h;  // class of paper index i: i-1 mod h
            int i = cls + 1;
            if (seen[static_cast<size_t>(cls)]) raise(ErrCode::NotAChart, "duplicate residue class");
            if ((a - i) % h != 0) raise(ErrCode::NotAChart, "minimum not congruent to its class");
            seen[static_cast<size_t>(cls)] = true;
            comp[static_cast<size_t>(i - 1)] = (a - i) / h;
        }
        for (bool s : seen)
            if (!s) raise(ErrCode::NotAChart, "missing residue class");
        mu.push_back(std::move(comp));
    }
    return mu;
}

SemiModuleChart rectangular_chart(int h, const std::vector<int>& l_tau) {
    SemiModuleChart chart;
    chart.h = h;
    for (int l0 : l_tau) {
        std::vector<int> minima;
        for (int k = 0; k < h; ++k) minima.push_back(l0 + k);
        chart.minima.push_back(std::move(minima));
    }
    return chart;
}

Lattice rectangular_lattice(const Frame& fr, const std::vector<int>& l_tau) {
    int base = chain_base(fr);
    SMat gens(fr.field(), fr.dim(), fr.dim());
    int col = 0;
    for (int c = 0; c < fr.num_components(); ++c) {
        int h = fr.chain_len(c);
        for (int k = 0; k < h; ++k)
            gens.set_col(col++, fr.chain_vector(c, l_tau[static_cast<size_t>(c)] + k - base));
    }
    return Lattice::from_cols(gens);
}

namespace {

// O-basis of {x in O^r : Q x = 0} for Q with series entries
SMat kernel_basis(const SMat& Q) {
    const FieldCtx* ctx = Q.ctx();
    int rows = Q.rows(), r = Q.cols();
    std::vector<std::vector<Series>> cols;
    std::vector<std::vector<Series>> ucols;
    for (int j = 0; j < r; ++j) {
        cols.push_back(Q.col(j));
        std::vector<Series> u(static_cast<size_t>(r), Series::zero(ctx));
        u[static_cast<size_t>(j)] = Series::one(ctx);
        ucols.push_back(std::move(u));
    }
    std::vector<bool> pivoted(cols.size(), false);
    for (int row = 0; row < rows; ++row) {
        int best = -1, best_val = 0;
        int min_cap = Series::kExact;
        for (size_t c = 0; c < cols.size(); ++c) {
            if (pivoted[c]) continue;
            const Series& e = cols[c][static_cast<size_t>(row)];
            if (e.known_nonzero()) {
                int v = e.val_nonzero();
                if (best < 0 || v < best_val) {
                    best = static_cast<int>(c);
                    best_val = v;
                }
            } else if (!e.is_zero()) {
                min_cap = std::min(min_cap, e.prec());
            }
        }
        if (best < 0) {
            if (min_cap < Series::kExact && min_cap < ctx->work_prec() / 2)
                raise(ErrCode::PrecisionExceeded, "kernel pivot not certified");
            continue;
        }
        if (min_cap <= best_val)
            raise(ErrCode::PrecisionExceeded, "kernel pivot not certified");
        for (size_t c = 0; c < cols.size(); ++c) {
            if (static_cast<int>(c) == best || pivoted[c]) continue;
            const Series& e = cols[c][static_cast<size_t>(row)];
            if (!e.known_nonzero()) continue;
            Series q = e / cols[static_cast<size_t>(best)][static_cast<size_t>(row)];
            for (int i = 0; i < rows; ++i)
                cols[c][static_cast<size_t>(i)] =
                    cols[c][static_cast<size_t>(i)] - q * cols[static_cast<size_t>(best)][static_cast<size_t>(i)];
            for (int i = 0; i < r; ++i)
                ucols[c][static_cast<size_t>(i)] =
                    ucols[c][static_cast<size_t>(i)] - q * ucols[static_cast<size_t>(best)][static_cast<size_t>(i)];
        }
        pivoted[static_cast<size_t>(best)] = true;
    }
    std::vector<int> kernel_cols;
    for (size_t c = 0; c < cols.size(); ++c)
        if (!pivoted[c]) kernel_cols.push_back(static_cast<int>(c));
    SMat K(ctx, r, static_cast<int>(kernel_cols.size()));
    for (size_t jj = 0; jj < kernel_cols.size(); ++jj)
        K.set_col(static_cast<int>(jj), ucols[static_cast<size_t>(kernel_cols[jj])]);
    return K;
}

// rows of the ambient space belonging to the given components
std::vector<int> component_rows(const Frame& fr, const std::vector<int>& comps) {
    std::vector<int> rows;
    for (int c : comps)
        for (int j = 0; j < fr.chain_len(c); ++j) rows.push_back(fr.coord(c, j));
    return rows;
}

SMat restrict_rows(const SMat& B, const std::vector<int>& rows) {
    SMat out(B.ctx(), static_cast<int>(rows.size()), B.cols());
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < B.cols(); ++j) out.at(static_cast<int>(i), j) = B.at(rows[i], j);
    return out;
}

}  // namespace

bool gamma_member(const Frame& fr, const Lattice& M, const GammaVec& gamma) {
    if (static_cast<int>(gamma.size()) != fr.num_components())
        raise(ErrCode::BadInput, "gamma length != number of components");
    int base = chain_base(fr);
    std::vector<int> fin, inf;
    for (int c = 0; c < fr.num_components(); ++c)
        (gamma[static_cast<size_t>(c)] >= kGammaInf ? inf : fin).push_back(c);
    if (fin.empty()) return false;
    if (!M.full_rank()) raise(ErrCode::NotFullRank, "gamma_member needs a full-rank lattice");
    unsigned long long field_size = 1;
    for (int i = 0; i < fr.field()->deg(); ++i) field_size *= fr.field()->p();
    if (field_size <= fin.size())
        raise(ErrCode::FieldTooSmall,
              "need q^e > number of finite coordinates for the simultaneity argument");

    // X = M cap (subspace of the finite components), restricted to its rows
    std::vector<int> fin_rows = component_rows(fr, fin);
    std::vector<int> inf_rows = component_rows(fr, inf);
    SMat xcols(fr.field(), 0, 0);
    if (inf.empty()) {
        xcols = restrict_rows(M.basis(), fin_rows);
    } else {
        SMat K = kernel_basis(restrict_rows(M.basis(), inf_rows));
        xcols = restrict_rows(M.basis() * K, fin_rows);
    }
    Lattice Xr = Lattice::from_cols(xcols);
    if (!Xr.full_rank()) return false;  // no vector supported exactly on the finite components

    // Lambda(gamma) restricted to the same rows
    auto lambda_restricted = [&](const GammaVec& g) {
        std::vector<std::vector<Series>> cols;
        int row_off = 0;
        for (int c : fin) {
            int h = fr.chain_len(c);
            for (int k = 0; k < h; ++k) {
                std::vector<Series> col(fin_rows.size(), Series::zero(fr.field()));
                int idx = g[static_cast<size_t>(c)] - base + k;
                int pos = ((idx % h) + h) % h;
                int carry = (idx >= 0) ? idx / h : -(((-idx) + h - 1) / h);
                col[static_cast<size_t>(row_off + pos)] = Series::t_pow(fr.field(), carry);
                cols.push_back(std::move(col));
            }
            row_off += h;
        }
        SMat m(fr.field(), static_cast<int>(fin_rows.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
        return Lattice::from_cols(m);
    };

    Lattice L0 = lambda_restricted(gamma);
    Lattice base_int = lat_intersect(Xr, L0);
    if (!base_int.full_rank()) return false;
    int v0 = base_int.volume();
    for (int c : fin) {
        GammaVec bumped = gamma;
        bumped[static_cast<size_t>(c)] += 1;
        Lattice bumped_int = lat_intersect(Xr, lambda_restricted(bumped));
        if (bumped_int.volume() <= v0) return false;  // no vector starts exactly at gamma_c
    }
    return true;
}

std::vector<GammaVec> box_grid(int l, int box) {
    std::vector<GammaVec> grid;
    GammaVec cur(static_cast<size_t>(l), 0);
    // values 0..box plus infinity, excluding the all-infinity vector
    long long total = 1;
    for (int i = 0; i < l; ++i) total *= (box + 2);
    for (long long idx = 0; idx < total; ++idx) {
        long long t = idx;
        bool all_inf = true;
        for (int i = 0; i < l; ++i) {
            int digit = static_cast<int>(t % (box + 2));
            t /= (box + 2);
            cur[static_cast<size_t>(i)] = (digit == box + 1) ? kGammaInf : digit;
            all_inf = all_inf && digit == box + 1;
        }
        if (!all_inf) grid.push_back(cur);
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

BoxedMultiSemiModule agen_box(int m, int n, int l, int box) {
    BoxedMultiSemiModule A;
    A.m = m;
    A.n = n;
    A.l = l;
    A.box = box;
    auto in_box = [&](const GammaVec& g) {
        for (int v : g)
            if (v < kGammaInf && v > box) return false;
        return true;
    };
    std::set<GammaVec> S;
    S.insert(GammaVec(static_cast<size_t>(l), 0));
    GammaVec gen(static_cast<size_t>(l));
    for (int i = 1; i <= l - 1; ++i) {
        for (int k = 0; k < l; ++k)
            gen[static_cast<size_t>(k)] = (k < i) ? kGammaInf : i * m * n;
        std::sort(gen.begin(), gen.end());
        do {
            if (in_box(gen)) S.insert(gen);
        } while (std::next_permutation(gen.begin(), gen.end()));
    }
    auto shifted = [&](GammaVec g, int by) {
        for (auto& v : g)
            if (v < kGammaInf) v += by;
        return g;
    };
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<GammaVec> add;
        for (const auto& g : S) {
            GammaVec gm = shifted(g, m), gn = shifted(g, n);
            if (in_box(gm) && !S.count(gm)) add.push_back(gm);
            if (in_box(gn) && !S.count(gn)) add.push_back(gn);
            for (const auto& g2 : S) {
                GammaVec mn(g.size());
                for (size_t i = 0; i < g.size(); ++i) mn[i] = std::min(g[i], g2[i]);
                if (!S.count(mn)) add.push_back(mn);
            }
        }
        for (auto& g : add)
            if (S.insert(std::move(g)).second) grew = true;
    }
    A.members = std::move(S);
    return A;
}

bool agen_char(const GammaVec& gamma, int m, int n) {
    int l = static_cast<int>(gamma.size());
    bool all_inf = true;
    for (int v : gamma) all_inf = all_inf && v >= kGammaInf;
    if (all_inf) return false;
    // numerical semigroup membership table for mN + nN
    int maxval = 0;
    for (int v : gamma)
        if (v < kGammaInf) maxval = std::max(maxval, v);
    std::vector<char> in_sg(static_cast<size_t>(maxval) + 1, 0);
    in_sg[0] = 1;
    for (int v = 1; v <= maxval; ++v) {
        if (v >= m && in_sg[static_cast<size_t>(v - m)]) in_sg[static_cast<size_t>(v)] = 1;
        if (v >= n && in_sg[static_cast<size_t>(v - n)]) in_sg[static_cast<size_t>(v)] = 1;
    }
    for (int i = 0; i < l; ++i) {
        int gi = gamma[static_cast<size_t>(i)];
        if (gi >= kGammaInf) continue;
        int ci = 0;
        for (int j = 0; j < l; ++j)
            if (gamma[static_cast<size_t>(j)] > gi) ++ci;
        int rem = gi - ci * m * n;
        if (rem < 0 || !in_sg[static_cast<size_t>(rem)]) return false;
    }
    return true;
}

BoxedMultiSemiModule boxed_A(const Frame& fr, const Lattice& M, int box) {
    if (fr.kind() != FrameKind::IsoclinicGL || fr.slopes().size() != 1)
        raise(ErrCode::BadSpec, "boxed A(M) needs an isoclinic frame");
    BoxedMultiSemiModule A;
    A.m = fr.slopes()[0].m;
    A.n = fr.slopes()[0].h - fr.slopes()[0].m;
    A.l = fr.slopes()[0].l;
    A.box = box;
    for (const auto& g : box_grid(A.l, box))
        if (gamma_member(fr, M, g)) A.members.insert(g);
    return A;
}

}  // namespace latinv
