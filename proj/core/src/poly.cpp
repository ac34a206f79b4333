#include "k3lat/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "k3lat/rng.hpp"

namespace k3lat {

Poly::Poly(RingPtr ring, std::vector<Term> terms, bool already_normal)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
    if (!already_normal)
        normalize();
    else
        recompute_degree();
}

void Poly::recompute_degree() {
    max_deg_ = -1;
    for (const Term& t : terms_)
        if (t.m.deg > max_deg_) max_deg_ = t.m.deg;
}

void Poly::normalize() {
    const PolyRing& R = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&R](const Term& a, const Term& b) { return R.cmp(a.m, b.m) > 0; });
    size_t out = 0;
    const FieldSpec& F = R.field();
    for (size_t i = 0; i < terms_.size();) {
        Monomial m = terms_[i].m;
        uint64_t acc = 0;
        while (i < terms_.size() && terms_[i].m == m) {
            acc += terms_[i].c;
            ++i;
        }
        uint32_t c = static_cast<uint32_t>(acc % F.p);
        if (c) terms_[out++] = Term{m, c};
    }
    terms_.resize(out);
    recompute_degree();
}

bool Poly::homogeneous() const {
    if (terms_.empty()) return true;
    uint16_t d = terms_.front().m.deg;
    for (const Term& t : terms_)
        if (t.m.deg != d) return false;
    return true;
}

void Poly::negate() {
    const FieldSpec& F = ring_->field();
    for (Term& t : terms_) t.c = F.neg(t.c);
}

void Poly::make_monic() {
    if (terms_.empty()) return;
    const FieldSpec& F = ring_->field();
    if (terms_.front().c == 1) return;
    uint32_t s = F.inv(terms_.front().c);
    for (Term& t : terms_) t.c = F.mul(t.c, s);
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Poly poly_zero(const RingPtr& ring) { return Poly(ring); }

Poly poly_const(const RingPtr& ring, uint32_t c) {
    c %= ring->p();
    if (!c) return Poly(ring);
    return Poly(ring, {Term{Monomial::one(), c}}, true);
}

Poly poly_var(const RingPtr& ring, int i) {
    return Poly(ring, {Term{Monomial::var(i), 1}}, true);
}

Poly poly_term(const RingPtr& ring, const Monomial& m, uint32_t c) {
    c %= ring->p();
    if (!c) return Poly(ring);
    return Poly(ring, {Term{m, c}}, true);
}

/// Merge two descending term streams; fc, gc scale the streams, gm shifts g.
static std::vector<Term> merge_terms(const PolyRing& R, const std::vector<Term>& f,
                                     const std::vector<Term>& g, uint32_t gscale,
                                     const Monomial* gshift) {
    const FieldSpec& F = R.field();
    std::vector<Term> out;
    out.reserve(f.size() + g.size());
    size_t i = 0, j = 0;
    Monomial gm;
    while (i < f.size() || j < g.size()) {
        if (j < g.size()) gm = gshift ? mono_mul(g[j].m, *gshift) : g[j].m;
        int c;
        if (i >= f.size())
            c = -1;
        else if (j >= g.size())
            c = 1;
        else
            c = R.cmp(f[i].m, gm);
        if (c > 0) {
            out.push_back(f[i++]);
        } else if (c < 0) {
            uint32_t v = F.mul(g[j].c, gscale);
            if (v) out.push_back(Term{gm, v});
            ++j;
        } else {
            uint32_t v = F.add(f[i].c, F.mul(g[j].c, gscale));
            if (v) out.push_back(Term{f[i].m, v});
            ++i;
            ++j;
        }
    }
    return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Poly(a.ring(), merge_terms(*a.ring(), a.terms(), b.terms(), 1, nullptr), true);
}

Poly poly_sub(const Poly& a, const Poly& b) {
    if (b.is_zero()) return a;
    uint32_t neg1 = a.ring() ? a.ring()->p() - 1 : b.ring()->p() - 1;
    const RingPtr& R = a.ring() ? a.ring() : b.ring();
    if (a.is_zero()) {
        Poly r = b;
        if (!r.ring()) return r;
        r.negate();
        return r;
    }
    return Poly(R, merge_terms(*R, a.terms(), b.terms(), neg1, nullptr), true);
}

Poly poly_scale(const Poly& a, uint32_t c) {
    const FieldSpec& F = a.ring()->field();
    c %= F.p;
    if (!c) return Poly(a.ring());
    Poly r = a;
    for (Term& t : r.terms_mut()) t.c = F.mul(t.c, c);
    return r;
}

Poly poly_mul_term(const Poly& a, const Monomial& m, uint32_t c) {
    const FieldSpec& F = a.ring()->field();
    c %= F.p;
    if (!c || a.is_zero()) return Poly(a.ring());
    std::vector<Term> out;
    out.reserve(a.size());
    for (const Term& t : a.terms()) out.push_back(Term{mono_mul(t.m, m), F.mul(t.c, c)});
    return Poly(a.ring(), std::move(out), true);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.ring() ? a.ring() : b.ring());
    const Poly& small = a.size() <= b.size() ? a : b;
    const Poly& big = a.size() <= b.size() ? b : a;
    Poly acc(a.ring());
    for (const Term& t : small.terms())
        acc = poly_add(acc, poly_mul_term(big, t.m, t.c));
    return acc;
}

Poly poly_pow(const Poly& a, unsigned k) {
    Poly r = poly_const(a.ring(), 1);
    Poly base = a;
    while (k) {
        if (k & 1) r = poly_mul(r, base);
        base = poly_mul(base, base);
        k >>= 1;
    }
    return r;
}

Poly poly_divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly_divexact: division by zero");
    const PolyRing& R = *a.ring();
    const FieldSpec& F = R.field();
    Poly rem = a;
    std::vector<Term> q;
    uint32_t lc_inv = F.inv(b.lead().c);
    while (!rem.is_zero()) {
        const Term& lt = rem.lead();
        if (!mono_divides(b.lead().m, lt.m))
            throw std::domain_error("poly_divexact: not divisible");
        Monomial qm = mono_div(lt.m, b.lead().m);
        uint32_t qc = F.mul(lt.c, lc_inv);
        q.push_back(Term{qm, qc});
        rem = poly_sub(rem, poly_mul_term(b, qm, qc));
    }
    return Poly(a.ring(), std::move(q));
}

Poly poly_derivative(const Poly& a, int i) {
    const FieldSpec& F = a.ring()->field();
    std::vector<Term> out;
    for (const Term& t : a.terms()) {
        if (!t.m.e[i]) continue;
        uint32_t c = F.mul(t.c, t.m.e[i] % F.p);
        if (!c) continue;
        Monomial m = t.m;
        m.e[i] -= 1;
        m.deg -= 1;
        out.push_back(Term{m, c});
    }
    return Poly(a.ring(), std::move(out), true);
}

int poly_var_min_power(const Poly& a, int i) {
    if (a.is_zero()) return 0;
    int k = 255;
    for (const Term& t : a.terms()) k = std::min(k, static_cast<int>(t.m.e[i]));
    return k;
}

Poly poly_shift_var_down(const Poly& a, int i, int k) {
    if (k == 0) return a;
    Poly r = a;
    for (Term& t : r.terms_mut()) {
        t.m.e[i] = static_cast<uint8_t>(t.m.e[i] - k);
        t.m.deg = static_cast<uint16_t>(t.m.deg - k);
    }
    // grevlex order can change after dividing by a variable power
    r.normalize();
    return r;
}

uint32_t poly_eval(const Poly& a, std::span<const uint32_t> point) {
    if (a.is_zero()) return 0;
    const PolyRing& R = *a.ring();
    const FieldSpec& F = R.field();
    int n = R.nvars();
    int maxd = a.degree();
    // power tables: pw[i][k] = point[i]^k
    std::vector<std::vector<uint32_t>> pw(n);
    for (int i = 0; i < n; ++i) {
        pw[i].resize(maxd + 1);
        pw[i][0] = 1;
        for (int k = 1; k <= maxd; ++k) pw[i][k] = F.mul(pw[i][k - 1], point[i]);
    }
    uint64_t acc = 0;
    for (const Term& t : a.terms()) {
        uint64_t v = t.c;
        for (int i = 0; i < n; ++i)
            if (t.m.e[i]) v = (v * pw[i][t.m.e[i]]) % F.p;
        acc += v;
    }
    return static_cast<uint32_t>(acc % F.p);
}

std::vector<uint32_t> poly_gradient_eval(const Poly& a, std::span<const uint32_t> point) {
    const PolyRing& R = *a.ring();
    std::vector<uint32_t> g(R.nvars(), 0);
    for (int i = 0; i < R.nvars(); ++i) g[i] = poly_eval(poly_derivative(a, i), point);
    return g;
}

Poly poly_compose(const Poly& a, const std::vector<Poly>& args, const RingPtr& target) {
    const FieldSpec& F = target->field();
    int n = a.ring()->nvars();
    int maxd = std::max(a.degree(), 0);
    // cache powers of each argument
    std::vector<std::vector<Poly>> pw(n);
    for (int i = 0; i < n; ++i) {
        pw[i].push_back(poly_const(target, 1));
    }
    auto power = [&](int i, int k) -> const Poly& {
        while (static_cast<int>(pw[i].size()) <= k)
            pw[i].push_back(poly_mul(pw[i].back(), args[i]));
        return pw[i][k];
    };
    (void)maxd;
    Poly acc(target);
    for (const Term& t : a.terms()) {
        Poly prod = poly_const(target, t.c % F.p);
        for (int i = 0; i < n; ++i)
            if (t.m.e[i]) prod = poly_mul(prod, power(i, t.m.e[i]));
        acc = poly_add(acc, prod);
    }
    return acc;
}

Poly poly_rename(const Poly& a, const RingPtr& target, const std::vector<int>& var_map) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const Term& t : a.terms()) {
        Monomial m;
        m.deg = t.m.deg;
        for (int i = 0; i < a.ring()->nvars(); ++i)
            if (t.m.e[i]) m.e[var_map[i]] = t.m.e[i];
        out.push_back(Term{m, t.c});
    }
    return Poly(target, std::move(out));
}

uint64_t count_monomials(int nvars, int degree) {
    // C(nvars - 1 + degree, degree)
    uint64_t r = 1;
    for (int i = 1; i <= degree; ++i) r = r * (nvars - 1 + i) / i;
    return r;
}

static void gen_monomials(const PolyRing& R, int var, int remaining, Monomial& cur,
                          std::vector<Monomial>& out) {
    if (var == R.nvars() - 1) {
        cur.e[var] = static_cast<uint8_t>(remaining);
        Monomial m = cur;
        m.deg = 0;
        uint32_t d = 0;
        for (int i = 0; i < R.nvars(); ++i) d += m.e[i];
        m.deg = static_cast<uint16_t>(d);
        out.push_back(m);
        cur.e[var] = 0;
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur.e[var] = static_cast<uint8_t>(k);
        gen_monomials(R, var + 1, remaining - k, cur, out);
    }
    cur.e[var] = 0;
}

std::vector<Monomial> monomials_of_degree(const PolyRing& ring, int degree) {
    std::vector<Monomial> out;
    out.reserve(count_monomials(ring.nvars(), degree));
    Monomial cur;
    gen_monomials(ring, 0, degree, cur, out);
    std::sort(out.begin(), out.end(),
              [&ring](const Monomial& a, const Monomial& b) { return ring.cmp(a, b) > 0; });
    return out;
}

Poly random_form(const RingPtr& ring, int degree, Rng& rng) {
    std::vector<Term> terms;
    for (const Monomial& m : monomials_of_degree(*ring, degree)) {
        uint32_t c = rng.mod(ring->p());
        if (c) terms.push_back(Term{m, c});
    }
    return Poly(ring, std::move(terms), true);
}

}  // namespace k3lat
