#include "k3lat/univar.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3lat {

UniPoly uni_add(const FieldSpec& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint32_t x = i < a.c.size() ? a.c[i] : 0;
        uint32_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = F.add(x, y);
    }
    r.trim();
    return r;
}

UniPoly uni_sub(const FieldSpec& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint32_t x = i < a.c.size() ? a.c[i] : 0;
        uint32_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = F.sub(x, y);
    }
    r.trim();
    return r;
}

UniPoly uni_mul(const FieldSpec& F, const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    const uint64_t p = F.p;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        uint64_t ai = a.c[i];
        for (size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r.c[i + j] = static_cast<uint32_t>((r.c[i + j] + ai * b.c[j]) % p);
    }
    r.trim();
    return r;
}

UniPoly uni_rem(const FieldSpec& F, UniPoly a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("uni_rem: division by zero");
    uint32_t lcinv = F.inv(b.c.back());
    while (!a.is_zero() && a.c.size() >= b.c.size()) {
        uint32_t q = F.mul(a.c.back(), lcinv);
        size_t shift = a.c.size() - b.c.size();
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = F.sub(a.c[shift + i], F.mul(q, b.c[i]));
        a.trim();
    }
    return a;
}

void uni_make_monic(const FieldSpec& F, UniPoly& a) {
    if (a.is_zero() || a.c.back() == 1) return;
    uint32_t s = F.inv(a.c.back());
    for (uint32_t& x : a.c) x = F.mul(x, s);
}

UniPoly uni_gcd(const FieldSpec& F, UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = uni_rem(F, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    uni_make_monic(F, a);
    return a;
}

UniPoly uni_powmod(const FieldSpec& F, UniPoly base, uint64_t e, const UniPoly& m) {
    UniPoly r;
    r.c = {1};
    base = uni_rem(F, std::move(base), m);
    while (e) {
        if (e & 1) r = uni_rem(F, uni_mul(F, r, base), m);
        base = uni_rem(F, uni_mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

uint32_t uni_eval(const FieldSpec& F, const UniPoly& a, uint32_t x) {
    uint64_t acc = 0;
    const uint64_t p = F.p;
    for (size_t i = a.c.size(); i-- > 0;) acc = (acc * x + a.c[i]) % p;
    return static_cast<uint32_t>(acc);
}

namespace {

/// Split a squarefree product of distinct linear factors into roots.
void split_linear(const FieldSpec& F, const UniPoly& f, Rng& rng, std::vector<uint32_t>& out) {
    if (f.deg() <= 0) return;
    if (f.deg() == 1) {
        // c0 + c1 x = 0  ->  x = -c0/c1
        out.push_back(F.mul(F.neg(f.c[0]), F.inv(f.c[1])));
        return;
    }
    if (F.p == 2) {  // brute force tiny fields
        for (uint32_t x = 0; x < F.p; ++x)
            if (uni_eval(F, f, x) == 0) out.push_back(x);
        return;
    }
    // (x+a)^((p-1)/2) - 1 splits the roots into two halves for random a
    for (int attempt = 0; attempt < 128; ++attempt) {
        uint32_t a = rng.mod(F.p);
        UniPoly shift;
        shift.c = {a, 1};
        UniPoly h = uni_powmod(F, shift, (F.p - 1) / 2, f);
        if (h.is_zero()) continue;
        h.c[0] = F.sub(h.c[0], 1);
        h.trim();
        UniPoly g = uni_gcd(F, h, f);
        if (g.deg() <= 0 || g.deg() == f.deg()) continue;
        UniPoly rest = f;
        // rest = f / g by repeated remainder-free division
        {
            UniPoly q;
            q.c.assign(f.c.size() - g.c.size() + 1, 0);
            UniPoly r = f;
            uint32_t lcinv = F.inv(g.c.back());
            while (!r.is_zero() && r.c.size() >= g.c.size()) {
                uint32_t qc = F.mul(r.c.back(), lcinv);
                size_t shift2 = r.c.size() - g.c.size();
                q.c[shift2] = qc;
                for (size_t i = 0; i < g.c.size(); ++i)
                    r.c[shift2 + i] = F.sub(r.c[shift2 + i], F.mul(qc, g.c[i]));
                r.trim();
            }
            q.trim();
            rest = q;
        }
        split_linear(F, g, rng, out);
        split_linear(F, rest, rng, out);
        return;
    }
    throw std::runtime_error("split_linear: splitting failed");
}

}  // namespace

std::vector<uint32_t> univariate_roots(const FieldSpec& F, const UniPoly& f, Rng& rng) {
    if (f.is_zero()) throw std::domain_error("univariate_roots: zero polynomial");
    if (f.deg() == 0) return {};
    // handle root at 0 separately, then gcd with x^p - x = x (x^(p-1) - 1)
    UniPoly g = f;
    uni_make_monic(F, g);
    std::vector<uint32_t> roots;
    size_t low = 0;
    while (low < g.c.size() && g.c[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        g.c.erase(g.c.begin(), g.c.begin() + low);
    }
    if (g.deg() >= 1) {
        UniPoly x;
        x.c = {0, 1};
        UniPoly xp = uni_powmod(F, x, F.p - 1, g);  // x^(p-1) mod g
        xp.c.resize(std::max<size_t>(xp.c.size(), 1), 0);
        xp.c[0] = F.sub(xp.c[0], 1);
        xp.trim();
        UniPoly lin = uni_gcd(F, xp, g);  // product of (x - r) over nonzero roots
        split_linear(F, lin, rng, roots);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace k3lat
