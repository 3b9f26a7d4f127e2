#include "latinv/mpoly.hpp"

#include <algorithm>
#include <set>

namespace latinv {

void MPoly::insert(const std::vector<uint8_t>& e, int c) {
    c %= p_;
    if (c < 0) c += p_;
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second = (it->second + c) % p_;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::constant(int p, int nvars, int c) {
    MPoly out(p, nvars);
    out.insert(std::vector<uint8_t>(static_cast<size_t>(nvars), 0), c);
    return out;
}

MPoly MPoly::variable(int p, int nvars, int index) {
    MPoly out(p, nvars);
    std::vector<uint8_t> e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(index)] = 1;
    out.insert(e, 1);
    return out;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.insert(e, c);
    return out;
}

MPoly MPoly::operator-() const {
    MPoly out(p_, nvars_);
    for (const auto& [e, c] : terms_) out.insert(e, p_ - c);
    return out;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly out(p_, nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<uint8_t> e(e1);
            for (size_t i = 0; i < e.size(); ++i)
                e[i] = static_cast<uint8_t>(e[i] + e2[i]);
            out.insert(e, c1 * c2);
        }
    return out;
}

MPoly MPoly::scale(int c) const {
    MPoly out(p_, nvars_);
    for (const auto& [e, cc] : terms_) out.insert(e, cc * c);
    return out;
}

MPoly MPoly::substitute(int index, int value) const {
    MPoly out(p_, nvars_);
    for (const auto& [e, c] : terms_) {
        int mult = 1;
        for (int k = 0; k < e[static_cast<size_t>(index)]; ++k) mult = mult * value % p_;
        std::vector<uint8_t> e2 = e;
        e2[static_cast<size_t>(index)] = 0;
        out.insert(e2, c * mult);
    }
    return out;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(static_cast<int>(e[i]));
        }
        if (mono.empty()) mono = "1";
        s += (c == 1 ? mono : std::to_string(c) + "*" + mono);
    }
    return s;
}

MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    MPoly acc(m[0][0].p(), m[0][0].nvars());
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<MPoly>> sub;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<MPoly> row(m[r].begin() + 1, m[r].end());
            sub.push_back(std::move(row));
        }
        MPoly term = m[i][0] * mpoly_det(sub);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

int mpoly_span_rank(const std::vector<MPoly>& polys) {
    if (polys.empty()) return 0;
    int p = polys[0].p();
    std::set<std::vector<uint8_t>> monos;
    for (const auto& f : polys)
        for (const auto& [e, c] : f.terms()) monos.insert(e);
    std::vector<std::vector<uint8_t>> cols(monos.begin(), monos.end());
    std::vector<std::vector<int>> rows;
    for (const auto& f : polys) {
        std::vector<int> row(cols.size(), 0);
        for (size_t j = 0; j < cols.size(); ++j) {
            auto it = f.terms().find(cols[j]);
            if (it != f.terms().end()) row[j] = it->second;
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    size_t rr = 0;
    for (size_t c = 0; c < cols.size() && rr < rows.size(); ++c) {
        size_t piv = rr;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rr], rows[piv]);
        int inv = 1;
        for (int v = 1; v < p; ++v)
            if (v * rows[rr][c] % p == 1) inv = v;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rr || rows[i][c] == 0) continue;
            int f = rows[i][c] * inv % p;
            for (size_t j = c; j < cols.size(); ++j)
                rows[i][j] = ((rows[i][j] - f * rows[rr][j]) % p + p) % p;
        }
        ++rank;
        ++rr;
    }
    return rank;
}

}  // namespace latinv
