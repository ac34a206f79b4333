#include "k3lat/hilbert.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k3lat {

Frac::Frac(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Frac: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}
Frac Frac::operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
Frac Frac::operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
Frac Frac::operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }

int64_t HilbertSummary::sectional_genus() const {
    // P(t) = (d/2) t^2 + (d/2 + 1 - pi) t + chi
    Frac c1 = hp.size() > 1 ? hp[1] : Frac(0);
    Frac pi = Frac(degree, 2) + Frac(1) - c1;
    if (!pi.is_integer()) throw std::runtime_error("sectional_genus: non-integer value");
    return pi.num;
}

std::string HilbertSummary::hp_string() const {
    if (hp.empty()) return "0";
    std::string s;
    for (size_t k = hp.size(); k-- > 0;) {
        const Frac& c = hp[k];
        if (c.num == 0) continue;
        if (!s.empty() && c.num > 0) s += "+";
        std::string coeff = c.is_integer() ? std::to_string(c.num)
                                           : std::to_string(c.num) + "/" + std::to_string(c.den);
        if (k == 0) {
            s += coeff;
        } else {
            if (c.num == 1 && c.is_integer())
                ;
            else if (c.num == -1 && c.is_integer())
                s += "-";
            else
                s += coeff + "*";
            s += "t";
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s.empty() ? "0" : s;
}

namespace {

using Series = std::vector<int64_t>;  // coefficients of a poly in t

void series_add_shifted(Series& a, const Series& b, int shift, int64_t scale) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] += scale * b[i];
}

Series series_mul(const Series& a, const Series& b) {
    if (a.empty() || b.empty()) return {};
    Series r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

struct MonIdeal {
    std::vector<Monomial> gens;  // minimal generators
};

void minimalize(std::vector<Monomial>& gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        return cmp_grevlex(a, b, kMaxVars) > 0;
    });
    std::vector<Monomial> out;
    for (const Monomial& m : gens) {
        bool divisible = false;
        for (const Monomial& g : out)
            if (mono_divides(g, m)) {
                divisible = true;
                break;
            }
        if (!divisible) out.push_back(m);
    }
    gens.swap(out);
}

struct HNContext {
    int nvars;
    uint64_t nodes = 0;
    static constexpr uint64_t kNodeCap = 50'000'000;
};

/// Hilbert series numerator of the quotient by a monomial ideal, by the
/// classical pivot recursion: N(I) = N(I + (x)) + t * N(I : x).
Series hilbert_numerator_rec(HNContext& ctx, std::vector<Monomial> gens) {
    if (++ctx.nodes > HNContext::kNodeCap)
        throw std::runtime_error("hilbert_numerator: recursion budget exhausted");
    if (gens.empty()) return {1};
    // base: single generator -> 1 - t^deg
    if (gens.size() == 1) {
        Series r(gens[0].deg + 1, 0);
        r[0] = 1;
        r[gens[0].deg] = -1;
        return r;
    }
    // base: generators in pairwise disjoint variables which are pure powers
    bool all_pure = true;
    for (const Monomial& g : gens) {
        int nz = 0;
        for (int i = 0; i < ctx.nvars; ++i)
            if (g.e[i]) ++nz;
        if (nz != 1) {
            all_pure = false;
            break;
        }
    }
    if (all_pure) {
        // pure powers of distinct variables (minimality guarantees distinct)
        Series r{1};
        for (const Monomial& g : gens) {
            Series f(g.deg + 1, 0);
            f[0] = 1;
            f[g.deg] = -1;
            r = series_mul(r, f);
        }
        return r;
    }
    // pivot: most frequent variable among mixed (non-pure-power) generators,
    // so both recursion branches strictly shrink
    std::array<int, kMaxVars> freq{};
    for (const Monomial& g : gens) {
        int nz = 0;
        for (int i = 0; i < ctx.nvars; ++i)
            if (g.e[i]) ++nz;
        if (nz < 2) continue;
        for (int i = 0; i < ctx.nvars; ++i)
            if (g.e[i]) ++freq[i];
    }
    int pivot = 0;
    for (int i = 1; i < ctx.nvars; ++i)
        if (freq[i] > freq[pivot]) pivot = i;

    // I + (x_pivot)
    std::vector<Monomial> plus;
    plus.push_back(Monomial::var(pivot));
    for (const Monomial& g : gens)
        if (!g.e[pivot]) plus.push_back(g);
    // already minimal: kept gens have no x_pivot and were pairwise minimal

    // I : x_pivot
    std::vector<Monomial> colon;
    colon.reserve(gens.size());
    for (const Monomial& g : gens) {
        if (g.e[pivot]) {
            Monomial h = g;
            h.e[pivot] -= 1;
            h.deg -= 1;
            colon.push_back(h);
        } else {
            colon.push_back(g);
        }
    }
    minimalize(colon);

    Series a = hilbert_numerator_rec(ctx, std::move(plus));
    Series b = hilbert_numerator_rec(ctx, std::move(colon));
    // N(I) = N(I + (x)) + t * N(I : x)
    Series r = a;
    series_add_shifted(r, b, 1, 1);
    return r;
}

}  // namespace

std::vector<int64_t> hilbert_numerator(const std::vector<Monomial>& lead_terms, int nvars) {
    std::vector<Monomial> gens = lead_terms;
    minimalize(gens);
    HNContext ctx{nvars};
    return hilbert_numerator_rec(ctx, std::move(gens));
}

HilbertSummary hilbert(const Ideal& I, const GBOptions& opt) {
    if (!I.homogeneous())
        throw std::invalid_argument("hilbert: ideal must be homogeneous");
    Ideal J = I.has_gb() ? I : gb(I, opt);
    int n = I.ring()->nvars();
    Series N = hilbert_numerator(J.gb_data().initial, n);

    // HS = N(t) / (1-t)^n; divide N by (1-t) as long as N(1) == 0
    int D = n;
    auto eval_at_1 = [](const Series& s) {
        int64_t v = 0;
        for (int64_t c : s) v += c;
        return v;
    };
    Series cur = N;
    while (!cur.empty() && eval_at_1(cur) == 0) {
        // divide by (1 - t): q_i = sum_{j<=i} cur_j
        Series q(cur.size() - 1, 0);
        int64_t acc = 0;
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            acc += cur[i];
            q[i] = acc;
        }
        cur = std::move(q);
        --D;
    }
    HilbertSummary out;
    out.krull_dim = D;
    out.proj_dim = D - 1;
    out.degree = eval_at_1(cur);

    // Hilbert polynomial: P(t) = sum_i cur[i] * C(t - i + D - 1, D - 1)
    if (D > 0) {
        std::vector<Frac> hp(D, Frac(0));
        for (size_t i = 0; i < cur.size(); ++i) {
            if (!cur[i]) continue;
            // expand C(t - i + D - 1, D - 1) = prod_{k=1}^{D-1} (t - i + D - k) / (D-1)!
            std::vector<Frac> binom{Frac(1)};
            for (int k = 1; k <= D - 1; ++k) {
                // multiply by (t + (D - k - (int)i)) / k
                std::vector<Frac> next(binom.size() + 1, Frac(0));
                Frac shift(static_cast<int64_t>(D - k) - static_cast<int64_t>(i), k);
                Frac invk(1, k);
                for (size_t j = 0; j < binom.size(); ++j) {
                    next[j + 1] = next[j + 1] + binom[j] * invk;
                    next[j] = next[j] + binom[j] * shift;
                }
                binom = std::move(next);
            }
            for (size_t j = 0; j < binom.size() && j < hp.size(); ++j)
                hp[j] = hp[j] + Frac(cur[i]) * binom[j];
        }
        while (hp.size() > 1 && hp.back().num == 0) hp.pop_back();
        out.hp = hp;
        out.chi = out.hp[0].is_integer() ? out.hp[0].num : 0;
    } else {
        out.hp = {Frac(0)};
        out.chi = 0;
        out.degree = 0;
    }
    return out;
}

int64_t hilbert_function(const Ideal& I_with_gb, int degree) {
    const Ideal& J = I_with_gb;
    if (!J.has_gb()) throw std::invalid_argument("hilbert_function: needs a Groebner basis");
    const std::vector<Monomial>& leads = J.gb_data().initial;
    int64_t count = 0;
    for (const Monomial& m : monomials_of_degree(*J.ring(), degree)) {
        bool divisible = false;
        for (const Monomial& l : leads)
            if (l.deg <= m.deg && mono_divides(l, m)) {
                divisible = true;
                break;
            }
        if (!divisible) ++count;
    }
    return count;
}

}  // namespace k3lat
