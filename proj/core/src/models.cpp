#include "k3lat/models.hpp"

namespace k3lat {

namespace {

constexpr int kBudget = 16;

std::vector<Poly> monomial_forms(const RingPtr& R, int d) {
    std::vector<Poly> out;
    for (const Monomial& m : monomials_of_degree(*R, d)) out.push_back(poly_term(R, m, 1));
    return out;
}

std::vector<Poly> pad_forms(std::vector<Poly> forms, const RingPtr& src, int count) {
    while (static_cast<int>(forms.size()) < count) forms.push_back(Poly(src));
    return forms;
}

MatF quadric_matrix(const Poly& q) {
    const RingPtr& R = q.ring();
    const FieldSpec& F = R->field();
    int n = R->nvars();
    MatF S(F, n, n);
    for (const Term& t : q.terms()) {
        int a = -1, b = -1;
        for (int i = 0; i < n; ++i) {
            if (t.m.e[i] == 2) {
                a = b = i;
                break;
            }
            if (t.m.e[i] == 1) (a < 0 ? a : b) = i;
        }
        if (a == b) {
            S.at(a, a) = F.add(S.at(a, a), F.add(t.c, t.c));
        } else {
            S.at(a, b) = F.add(S.at(a, b), t.c);
            S.at(b, a) = F.add(S.at(b, a), t.c);
        }
    }
    return S;
}

/// Push one point through a sampler chain; throws when it hits a base locus.
PointP push_point(const Sampler& s, const PointP& src) {
    std::vector<uint32_t> cur = src.x;
    for (size_t step = 0; step < s.steps.size(); ++step) {
        std::vector<uint32_t> nxt(s.steps[step].size(), 0);
        bool nonzero = false;
        for (size_t j = 0; j < s.steps[step].size(); ++j) {
            nxt[j] = poly_eval(s.steps[step][j], cur);
            nonzero |= nxt[j] != 0;
        }
        if (!nonzero) throw std::runtime_error("push_point: point hits a base locus");
        cur = std::move(nxt);
    }
    return normalize_point(s.src_ring->field(), std::move(cur));
}

}  // namespace

std::vector<Poly> pluecker_relations(const RingPtr& ring, int n) {
    auto idx = [n](int i, int j) {
        int k = 0;
        for (int a = 0; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                if (a == i && b == j) return k;
                ++k;
            }
        return -1;
    };
    std::vector<Poly> rels;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    Poly f = poly_sub(poly_mul(poly_var(ring, idx(i, j)), poly_var(ring, idx(k, l))),
                                      poly_mul(poly_var(ring, idx(i, k)), poly_var(ring, idx(j, l))));
                    f = poly_add(f, poly_mul(poly_var(ring, idx(i, l)), poly_var(ring, idx(j, k))));
                    rels.push_back(f);
                }
    return rels;
}

ModelRecord grassmannian(int k, int n, uint32_t p) {
    if (k != 1 || n < 2)
        throw std::invalid_argument("grassmannian: only G(1, n) with n >= 2 is provided");
    int N = (n + 1) * n / 2;
    RingPtr amb = make_ring(p, N);
    std::vector<Poly> rels = pluecker_relations(amb, n);
    RingPtr src = make_ring(p, 2 * (n + 1));
    std::vector<Poly> minors;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            minors.push_back(poly_sub(poly_mul(poly_var(src, i), poly_var(src, n + 1 + j)),
                                      poly_mul(poly_var(src, j), poly_var(src, n + 1 + i))));
    ModelRecord rec;
    rec.g = 0;
    rec.variety = Subscheme{amb, rels, 2 * (n - 1)};
    rec.sampler = Sampler::direct(src, {}, 2 * n + 1).then(minors, amb);
    rec.sampler.src_avoid = minors;
    return rec;
}

// ------------------------------------------------------------- Mukai models

namespace {

/// The parameterization data of a Mukai model: map forms from a rational
/// source (or a quadric threefold) to the model's ambient space.
struct MukaiContext {
    int g = 0;
    int model_dim = 0;
    RingPtr amb;
    Subscheme variety;      // may be empty when only sections are needed
    Sampler sampler;        // source chain ending in amb
    bool quadric_section = false;  // g = 6 sections take one quadric too
    bool have_variety = false;
};

/// Contexts for the section-based genera; for g in {6, 8} the model is the
/// combinatorial (cone over a) Grassmannian so Schubert markings are direct.
MukaiContext mukai_context(int g, uint32_t p, Rng& rng) {
    MukaiContext ctx;
    ctx.g = g;
    switch (g) {
        case 6: {
            // cone over G(1,4) in P10, Pluecker coordinates + vertex x10
            ctx.amb = make_ring(p, 11);
            std::vector<Poly> rels = pluecker_relations(ctx.amb, 4);
            ctx.variety = Subscheme{ctx.amb, rels, 7};
            ctx.have_variety = true;
            ctx.model_dim = 7;
            ctx.quadric_section = true;
            // source: 2x5 matrix entries + cone coordinate
            RingPtr src = make_ring(p, 11);
            std::vector<Poly> forms;
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j)
                    forms.push_back(poly_sub(poly_mul(poly_var(src, i), poly_var(src, 5 + j)),
                                             poly_mul(poly_var(src, j), poly_var(src, 5 + i))));
            forms.push_back(poly_mul(poly_var(src, 10), poly_var(src, 0)));
            ctx.sampler = Sampler::direct(src, {}, 10).then(forms, ctx.amb);
            ctx.sampler.src_avoid = forms;
            return ctx;
        }
        case 7: {
            RingPtr P10 = make_ring(p, 11);
            std::vector<Poly> forms = pluecker_relations(P10, 4);
            for (int i = 0; i < 11; ++i)
                forms.push_back(poly_mul(poly_var(P10, 10), poly_var(P10, i)));
            ctx.amb = make_ring(p, 16);
            ctx.model_dim = 10;
            ctx.sampler = Sampler::direct(P10, {}, 10).then(forms, ctx.amb);
            ctx.sampler.src_avoid = forms;
            return ctx;
        }
        case 8: {
            ModelRecord G = grassmannian(1, 5, p);
            ctx.amb = G.variety.ring;
            ctx.variety = G.variety;
            ctx.have_variety = true;
            ctx.model_dim = 8;
            ctx.sampler = G.sampler;
            return ctx;
        }
        case 9: {
            RingPtr P2 = make_ring(p, 3);
            RingPtr P6 = make_ring(p, 7);
            std::vector<Poly> ver = pad_forms(monomial_forms(P2, 2), P2, 7);
            Sampler vs = Sampler::direct(P2, {}, 2).then(ver, P6);
            std::vector<Poly> cubics = forms_through(vs, 3, 2, nullptr, rng);
            if (cubics.size() != 14)
                throw ModelConstructionFailed("mukai_context(9): cubic system not 14-dimensional");
            ctx.amb = make_ring(p, 14);
            ctx.model_dim = 6;
            ctx.sampler = Sampler::direct(P6, {}, 6).then(cubics, ctx.amb);
            ctx.sampler.src_avoid = cubics;
            return ctx;
        }
        default:
            throw std::invalid_argument("mukai_context: g must be in {6,7,8,9}");
    }
}

}  // namespace

ModelRecord mukai_model(int g, uint32_t p, Rng& rng) {
    switch (g) {
        case 6:
        case 7:
        case 8:
        case 9: {
            MukaiContext ctx = mukai_context(g, p, rng);
            ModelRecord rec;
            rec.g = g;
            if (g == 8) {
                // combinatorial Pluecker ideal is already exact
                rec.variety = ctx.variety;
                rec.sampler = ctx.sampler;
                return rec;
            }
            if (g == 6) {
                rec.variety = ctx.variety;
                rec.sampler = ctx.sampler;
                return rec;
            }
            // interpolate the image ideal (quadrics suffice for these models)
            Sampler src = Sampler::direct(ctx.sampler.src_ring, ctx.sampler.src_gens,
                                          ctx.sampler.src_dim);
            Subscheme V = image(src, ctx.sampler.steps[0], ctx.model_dim, 2, rng);
            V.dim = ctx.model_dim;
            rec.variety = std::move(V);
            rec.sampler = ctx.sampler;
            return rec;
        }
        case 12: {
            FanoRecord f = v22(p, rng);
            ModelRecord rec;
            rec.g = 12;
            rec.variety = std::move(f.threefold);
            rec.sampler = std::move(f.sampler);
            return rec;
        }
        case 10:
            throw std::invalid_argument(
                "mukai_model: no direct genus-10 model here; use fano_threefold(10, ...)");
        default:
            throw std::invalid_argument("mukai_model: genus must be one of {6,7,8,9,12}");
    }
}

// --------------------------------------------------------------------- V22

namespace {

struct V22Data {
    FanoRecord rec;
    CurveRecord gamma;   // the rational normal sextic
    Poly Q;              // the smooth quadric threefold
    Poly Qprime;         // second quadric through gamma
    std::vector<Poly> map_forms;
};

V22Data v22_impl(uint32_t p, Rng& rng) {
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x22 + attempt);
        CurveRecord gamma = rational_curve(6, 4, p, sub);
        std::vector<Poly> quads;
        for (const Poly& g : gamma.curve.gens)
            if (g.degree() == 2) quads.push_back(g);
        if (quads.size() != 2) continue;  // quadratically normal means exactly 2
        const RingPtr& P4 = gamma.curve.ring;
        Poly Q(P4);
        bool ok = false;
        for (int t = 0; t < 8; ++t) {
            Q = poly_add(poly_scale(quads[0], sub.nonzero_mod(p)),
                         poly_scale(quads[1], sub.nonzero_mod(p)));
            if (quadric_matrix(Q).rank() == 5) {
                ok = true;
                break;
            }
        }
        if (!ok) continue;
        Poly Qprime = quads[0];  // independent of Q since Q mixes both

        std::vector<Poly> quintics;
        try {
            quintics = forms_through(gamma.sampler, 5, 2, &Q, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        }
        if (quintics.size() != 49) continue;  // 14 + 35 multiples of Q

        const FieldSpec& F = P4->field();
        std::vector<Monomial> monos = monomials_of_degree(*P4, 5);
        std::unordered_map<Monomial, int, MonomialHash> index;
        for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
        Rref acc(F, monos.size());
        for (const Poly& c : monomial_forms(P4, 3)) {
            Poly m = poly_mul(Q, c);
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : m.terms()) row[index.at(t.m)] = F.add(row[index.at(t.m)], t.c);
            acc.insert(std::move(row));
        }
        std::vector<Poly> map_forms;
        for (const Poly& f : quintics) {
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : f.terms()) row[index.at(t.m)] = F.add(row[index.at(t.m)], t.c);
            if (acc.insert(std::move(row))) map_forms.push_back(f);
        }
        if (map_forms.size() != 14) continue;

        Sampler qs = Sampler::direct(P4, {Q}, 3);
        Subscheme V;
        try {
            V = image(qs, map_forms, 3, 2, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        }
        if (V.gens.size() != 45) continue;

        // marked conic: image of the unique divisor in |I_{Gamma/Q}(2)|
        Sampler divisor = Sampler::direct(P4, {Q, Qprime}, 2);
        Subscheme conic;
        try {
            conic = image(divisor, map_forms, 1, 2, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        }
        HilbertSummary hc = hilbert(Ideal(conic.ring, conic.gens));
        if (hc.proj_dim != 1 || hc.degree != 2 || hc.curve_genus() != 0) continue;

        V22Data data;
        data.rec.g = 12;
        data.rec.threefold = std::move(V);
        data.rec.sampler = qs.then(map_forms, data.rec.threefold.ring);
        data.rec.marking.kind = MarkKind::Conic;
        data.rec.marking.curve = std::move(conic);
        data.rec.marking.curve_sampler = divisor.then(map_forms, data.rec.threefold.ring);
        data.rec.marking.curve_degree = 2;
        data.gamma = std::move(gamma);
        data.Q = std::move(Q);
        data.Qprime = std::move(Qprime);
        data.map_forms = data.rec.sampler.steps[0];
        return data;
    }
    throw ModelConstructionFailed("v22: resample budget exhausted");
}

}  // namespace

FanoRecord v22(uint32_t p, Rng& rng) { return v22_impl(p, rng).rec; }

// ------------------------------------------------------------------- Fanos

namespace {

/// Validate that a marked-curve image really is the expected rational curve.
bool curve_image_ok(const Subscheme& C, int degree) {
    try {
        HilbertSummary h = hilbert(Ideal(C.ring, C.gens));
        return h.proj_dim == 1 && h.degree == degree && h.curve_genus() == 0;
    } catch (...) {
        return false;
    }
}

/// Marked curve data in the model's ambient coordinates for the section
/// genera g in {6,7,8,9}.
struct ModelCurve {
    Subscheme curve;       // in the model ambient
    Sampler sampler;       // point source for the curve
    int degree = 0;
};

ModelCurve model_curve(const MukaiContext& ctx, MarkKind kind, uint32_t p, Rng& rng) {
    const FieldSpec F(p);
    int deg = kind == MarkKind::Line ? 1 : 2;
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x5c + attempt);
        switch (ctx.g) {
            case 6:
            case 8: {
                // Schubert constructions in Pluecker coordinates
                int n = ctx.g == 6 ? 4 : 5;
                int N = ctx.amb->nvars();
                auto idx = [n](int i, int j) {
                    int k = 0;
                    for (int a = 0; a <= n; ++a)
                        for (int b = a + 1; b <= n; ++b) {
                            if (a == i && b == j) return k;
                            ++k;
                        }
                    return -1;
                };
                auto wedge = [&](const std::vector<uint32_t>& u, const std::vector<uint32_t>& v) {
                    std::vector<uint32_t> out(N, 0);
                    for (int i = 0; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            out[idx(i, j)] = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]));
                    return out;
                };
                if (kind == MarkKind::Line) {
                    // pencil of lines through a point inside a plane:
                    // span of a^b and a^c
                    std::vector<uint32_t> a(n + 1), b(n + 1), c(n + 1);
                    for (int i = 0; i <= n; ++i) {
                        a[i] = sub.mod(p);
                        b[i] = sub.mod(p);
                        c[i] = sub.mod(p);
                    }
                    PointP p1 = normalize_point(F, wedge(a, b));
                    PointP p2 = normalize_point(F, wedge(a, c));
                    std::vector<Poly> lin = forms_through_points(ctx.amb, {p1, p2}, 1, 1, nullptr);
                    ModelCurve mc;
                    mc.curve = Subscheme{ctx.amb, lin, 1};
                    mc.sampler = Sampler::direct(ctx.amb, lin, 1);
                    mc.degree = 1;
                    if (!curve_image_ok(mc.curve, 1)) continue;
                    return mc;
                }
                // conic: 2-plane section of the sub-Grassmannian G(1,3)
                std::vector<int> subvars = {idx(0, 1), idx(0, 2), idx(0, 3),
                                            idx(1, 2), idx(1, 3), idx(2, 3)};
                // three random points in the sub-P5 spanning a plane
                std::vector<PointP> span;
                for (int t = 0; t < 3; ++t) {
                    std::vector<uint32_t> v(N, 0);
                    for (int sv : subvars) v[sv] = sub.mod(p);
                    span.push_back(normalize_point(F, std::move(v)));
                }
                std::vector<Poly> lin = forms_through_points(ctx.amb, span, 1, 1, nullptr);
                // the G(1,3) Pluecker relation
                Poly rel = poly_add(
                    poly_sub(poly_mul(poly_var(ctx.amb, idx(0, 1)), poly_var(ctx.amb, idx(2, 3))),
                             poly_mul(poly_var(ctx.amb, idx(0, 2)), poly_var(ctx.amb, idx(1, 3)))),
                    poly_mul(poly_var(ctx.amb, idx(0, 3)), poly_var(ctx.amb, idx(1, 2))));
                std::vector<Poly> gens = lin;
                gens.push_back(rel);
                ModelCurve mc;
                mc.curve = Subscheme{ctx.amb, gens, 1};
                mc.sampler = Sampler::direct(ctx.amb, gens, 1);
                mc.degree = 2;
                if (!curve_image_ok(mc.curve, 2)) continue;
                return mc;
            }
            case 7: {
                // lines/conics as images of source lines in P10
                const RingPtr& src = ctx.sampler.src_ring;
                std::vector<PointP> ends;
                if (kind == MarkKind::Line) {
                    // line through one point of the base G(1,4) in {x10 = 0}
                    std::vector<uint32_t> row(10);
                    for (int i = 0; i < 10; ++i) row[i] = sub.mod(p);
                    // Pluecker point of a random 2x5 matrix
                    std::vector<uint32_t> g(11, 0);
                    int k = 0;
                    for (int i = 0; i < 5; ++i)
                        for (int j = i + 1; j < 5; ++j)
                            g[k++] = F.sub(F.mul(row[i], row[5 + j]), F.mul(row[j], row[5 + i]));
                    ends.push_back(normalize_point(F, std::move(g)));
                } else {
                    std::vector<uint32_t> r(11);
                    for (int i = 0; i < 11; ++i) r[i] = sub.mod(p);
                    ends.push_back(normalize_point(F, std::move(r)));
                }
                std::vector<uint32_t> r2(11);
                for (int i = 0; i < 11; ++i) r2[i] = sub.mod(p);
                ends.push_back(normalize_point(F, std::move(r2)));
                std::vector<Poly> lin = forms_through_points(src, ends, 1, 1, nullptr);
                Sampler line_sampler = Sampler::direct(src, lin, 1);
                Sampler pushed = line_sampler.then(ctx.sampler.steps[0], ctx.amb);
                Subscheme img;
                try {
                    img = image(line_sampler, ctx.sampler.steps[0], 1, 2, sub);
                } catch (...) {
                    continue;
                }
                if (!curve_image_ok(img, deg)) continue;
                return ModelCurve{std::move(img), std::move(pushed), deg};
            }
            case 9: {
                const RingPtr& src = ctx.sampler.src_ring;  // P6
                RingPtr P2 = make_ring(p, 3);
                auto vpoint = [&](Rng& r) {
                    std::vector<uint32_t> t(3);
                    t[0] = r.mod(p);
                    t[1] = r.mod(p);
                    t[2] = r.nonzero_mod(p);
                    // veronese image padded into P6
                    std::vector<uint32_t> v(7, 0);
                    int k = 0;
                    for (const Monomial& m : monomials_of_degree(*P2, 2)) {
                        uint64_t val = 1;
                        for (int i = 0; i < 3; ++i)
                            for (int e = 0; e < m.e[i]; ++e) val = val * t[i] % p;
                        v[k++] = static_cast<uint32_t>(val);
                    }
                    return normalize_point(F, std::move(v));
                };
                std::vector<Poly> gens;
                if (kind == MarkKind::Line) {
                    PointP v1 = vpoint(sub);
                    std::vector<uint32_t> r(7);
                    for (int i = 0; i < 7; ++i) r[i] = sub.mod(p);
                    PointP p2 = normalize_point(F, std::move(r));
                    gens = forms_through_points(src, {v1, p2}, 1, 1, nullptr);
                } else {
                    PointP v1 = vpoint(sub), v2 = vpoint(sub);
                    std::vector<uint32_t> r(7);
                    for (int i = 0; i < 7; ++i) r[i] = sub.mod(p);
                    PointP w = normalize_point(F, std::move(r));
                    std::vector<Poly> plane = forms_through_points(src, {v1, v2, w}, 1, 1, nullptr);
                    std::vector<Poly> q2 = forms_through_points(src, {v1, v2}, 2, 1, nullptr);
                    Poly q(src);
                    for (const Poly& f : q2) q = poly_add(q, poly_scale(f, sub.mod(p)));
                    gens = plane;
                    gens.push_back(q);
                }
                Sampler curve_src = Sampler::direct(src, gens, 1);
                Sampler pushed = curve_src.then(ctx.sampler.steps[0], ctx.amb);
                Subscheme img;
                try {
                    img = image(curve_src, ctx.sampler.steps[0], 1, 2, sub);
                } catch (...) {
                    continue;
                }
                if (!curve_image_ok(img, deg)) continue;
                return ModelCurve{std::move(img), std::move(pushed), deg};
            }
            default:
                throw std::invalid_argument("model_curve: unsupported genus");
        }
    }
    throw ModelConstructionFailed("model_curve: resample budget exhausted");
}

/// Random linear form vanishing on the given points of the ring's space.
Poly random_linear_through(const RingPtr& R, const std::vector<PointP>& pts, Rng& rng) {
    std::vector<Poly> basis = forms_through_points(R, pts, 1, 1, nullptr);
    Poly out(R);
    for (const Poly& f : basis) out = poly_add(out, poly_scale(f, rng.mod(R->p())));
    return out;
}

}  // namespace

FanoRecord fano_threefold(int g, MarkKind marking, uint32_t p, Rng& rng) {
    const FieldSpec F(p);
    if (g == 12) {
        V22Data d = v22_impl(p, rng);
        FanoRecord rec = std::move(d.rec);
        if (marking == MarkKind::Conic || marking == MarkKind::None) return rec;
        if (marking == MarkKind::Point) {
            Rng sub = rng.child(0xf12);
            PointP src = sample_points(
                Sampler::direct(rec.sampler.src_ring, rec.sampler.src_gens, 3), 1, sub)[0];
            rec.marking = Marking{};
            rec.marking.kind = MarkKind::Point;
            rec.marking.point = push_point(rec.sampler, src);
            return rec;
        }
        // marked line: a secant line of the sextic lying on the quadric
        for (int attempt = 0; attempt < kBudget; ++attempt) {
            Rng sub = rng.child(0x12f + attempt);
            MatF S = quadric_matrix(d.Q);
            PointP a = sample_points(d.gamma.sampler, 1, sub)[0];
            // gamma cap the polar hyperplane of a
            std::vector<Term> lt;
            for (int j = 0; j < 5; ++j) {
                uint32_t c = 0;
                for (int i = 0; i < 5; ++i)
                    c = F.add(c, F.mul(a.x[i], S.at(i, j)));
                if (c) lt.push_back(Term{Monomial::var(j), c});
            }
            Poly polar(d.gamma.curve.ring, std::move(lt));
            std::vector<Poly> sys = d.gamma.curve.gens;
            sys.push_back(polar);
            std::vector<PointP> hits;
            try {
                hits = sample_points(Sampler::direct(d.gamma.curve.ring, sys, 0), 1, sub);
            } catch (const SampleBudgetExhausted&) {
                continue;
            }
            PointP b = hits[0];
            if (b.x == a.x) continue;
            std::vector<Poly> lin =
                forms_through_points(d.gamma.curve.ring, {a, b}, 1, 1, nullptr);
            Sampler line_src = Sampler::direct(d.gamma.curve.ring, lin, 1);
            Subscheme img;
            try {
                img = image(line_src, d.map_forms, 1, 2, sub);
            } catch (...) {
                continue;
            }
            if (!curve_image_ok(img, 1)) continue;
            rec.marking = Marking{};
            rec.marking.kind = MarkKind::Line;
            rec.marking.curve = img;
            rec.marking.curve_sampler = line_src.then(d.map_forms, rec.threefold.ring);
            rec.marking.curve_degree = 1;
            return rec;
        }
        throw ModelConstructionFailed("fano_threefold(12, line): no rational secant found");
    }

    if (g == 10) {
        for (int attempt = 0; attempt < kBudget; ++attempt) {
            Rng sub = rng.child(0xa10 + attempt);
            GenusTwoPair pair = genus2_curve_deg7_on_quadric(p, sub);
            const RingPtr& P4 = pair.quadric.ring;
            const Poly& Q = pair.quadric.gens[0];
            // quintics on Q double along the curve: 12 + 35
            std::vector<Poly> quintics;
            try {
                quintics = forms_through(pair.curve.sampler, 5, 2, &Q, sub);
            } catch (const InterpolationUnstable&) {
                continue;
            }
            if (quintics.size() != 47) continue;
            std::vector<Monomial> monos = monomials_of_degree(*P4, 5);
            std::unordered_map<Monomial, int, MonomialHash> index;
            for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
            Rref acc(F, monos.size());
            for (const Poly& c : monomial_forms(P4, 3)) {
                Poly m = poly_mul(Q, c);
                std::vector<uint32_t> row(monos.size(), 0);
                for (const Term& t : m.terms())
                    row[index.at(t.m)] = F.add(row[index.at(t.m)], t.c);
                acc.insert(std::move(row));
            }
            std::vector<Poly> map_forms;
            for (const Poly& f : quintics) {
                std::vector<uint32_t> row(monos.size(), 0);
                for (const Term& t : f.terms())
                    row[index.at(t.m)] = F.add(row[index.at(t.m)], t.c);
                if (acc.insert(std::move(row))) map_forms.push_back(f);
            }
            if (map_forms.size() != 12) continue;
            Sampler qs = Sampler::direct(P4, {Q}, 3);
            Subscheme X;
            try {
                X = image(qs, map_forms, 3, 2, sub);
            } catch (const InterpolationUnstable&) {
                continue;
            }
            FanoRecord rec;
            rec.g = 10;
            rec.threefold = std::move(X);
            rec.sampler = qs.then(map_forms, rec.threefold.ring);

            if (marking == MarkKind::Point || marking == MarkKind::None) {
                PointP src = sample_points(Sampler::direct(P4, {Q}, 3), 1, sub)[0];
                rec.marking.kind = MarkKind::Point;
                rec.marking.point = push_point(rec.sampler, src);
                return rec;
            }
            if (marking == MarkKind::Line) {
                // secant line of the curve lying on Q
                MatF S = quadric_matrix(Q);
                bool made = false;
                for (int t = 0; t < kBudget && !made; ++t) {
                    PointP a = sample_points(pair.curve.sampler, 1, sub)[0];
                    std::vector<Term> lt;
                    for (int j = 0; j < 5; ++j) {
                        uint32_t c = 0;
                        for (int i = 0; i < 5; ++i) c = F.add(c, F.mul(a.x[i], S.at(i, j)));
                        if (c) lt.push_back(Term{Monomial::var(j), c});
                    }
                    Poly polar(P4, std::move(lt));
                    std::vector<Poly> sys = pair.curve.curve.gens;
                    sys.push_back(polar);
                    std::vector<PointP> hits;
                    try {
                        hits = sample_points(Sampler::direct(P4, sys, 0), 1, sub);
                    } catch (const SampleBudgetExhausted&) {
                        continue;
                    }
                    if (hits[0].x == a.x) continue;
                    std::vector<Poly> lin = forms_through_points(P4, {a, hits[0]}, 1, 1, nullptr);
                    Sampler line_src = Sampler::direct(P4, lin, 1);
                    Subscheme img;
                    try {
                        img = image(line_src, map_forms, 1, 2, sub);
                    } catch (...) {
                        continue;
                    }
                    if (!curve_image_ok(img, 1)) continue;
                    rec.marking.kind = MarkKind::Line;
                    rec.marking.curve = img;
                    rec.marking.curve_sampler = line_src.then(map_forms, rec.threefold.ring);
                    rec.marking.curve_degree = 1;
                    made = true;
                }
                if (!made) continue;
                return rec;
            }
            if (marking == MarkKind::Conic) {
                // 4-secant plane conic: project the curve from a secant line
                // and lift a node of the resulting plane quintic
                bool made = false;
                for (int t = 0; t < kBudget && !made; ++t) {
                    auto pts = sample_points(pair.curve.sampler, 2, sub);
                    std::vector<Poly> axis = forms_through_points(P4, pts, 1, 1, nullptr);
                    if (axis.size() != 3) continue;
                    Subscheme plane_img;
                    try {
                        plane_img = image(pair.curve.sampler, axis, 1, 5, sub);
                    } catch (...) {
                        continue;
                    }
                    // expect a single quintic
                    Poly quintic(plane_img.ring);
                    bool single = plane_img.gens.size() == 1 && plane_img.gens[0].degree() == 5;
                    if (!single) continue;
                    quintic = plane_img.gens[0];
                    std::vector<Poly> sing = {quintic};
                    for (int i = 0; i < 3; ++i) sing.push_back(poly_derivative(quintic, i));
                    std::vector<PointP> nodes;
                    try {
                        nodes = sample_points(Sampler::direct(plane_img.ring, sing, 0), 1, sub);
                    } catch (const SampleBudgetExhausted&) {
                        continue;
                    }
                    const PointP& nd = nodes[0];
                    // plane spanned by the axis and the node direction:
                    // {x : nd_j L_k(x) = nd_k L_j(x)}
                    std::vector<Poly> plane_forms;
                    int piv = 0;
                    while (nd.x[piv] == 0) ++piv;
                    for (int j = 0; j < 3; ++j) {
                        if (j == piv) continue;
                        plane_forms.push_back(poly_sub(poly_scale(axis[j], nd.x[piv]),
                                                       poly_scale(axis[piv], nd.x[j])));
                    }
                    std::vector<Poly> conic_gens = plane_forms;
                    conic_gens.push_back(Q);
                    Sampler conic_src = Sampler::direct(P4, conic_gens, 1);
                    Subscheme img;
                    try {
                        img = image(conic_src, map_forms, 1, 2, sub);
                    } catch (...) {
                        continue;
                    }
                    if (!curve_image_ok(img, 2)) continue;
                    rec.marking.kind = MarkKind::Conic;
                    rec.marking.curve = img;
                    rec.marking.curve_sampler = conic_src.then(map_forms, rec.threefold.ring);
                    rec.marking.curve_degree = 2;
                    made = true;
                }
                if (!made) continue;
                return rec;
            }
        }
        throw ModelConstructionFailed("fano_threefold(10): resample budget exhausted");
    }

    if (g < 6 || g > 9)
        throw std::invalid_argument("fano_threefold: genus must be in {6,...,10,12}");

    // section genera: cut the Mukai model down to dimension 3 through the
    // marked datum
    MukaiContext ctx = mukai_context(g, p, rng);
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0xfa0 + attempt);
        Marking mark;
        std::vector<PointP> through_pts;  // points whose span the section contains
        Sampler curve_sampler_model = Sampler();
        if (marking == MarkKind::Point || marking == MarkKind::None) {
            PointP src = sample_points(Sampler::direct(ctx.sampler.src_ring, ctx.sampler.src_gens,
                                                       ctx.sampler.src_dim),
                                       1, sub)[0];
            mark.kind = MarkKind::Point;
            mark.point = push_point(ctx.sampler, src);
            through_pts = {mark.point};
        } else {
            ModelCurve mc = model_curve(ctx, marking, p, sub);
            mark.kind = marking;
            mark.curve = mc.curve;
            mark.curve_degree = mc.degree;
            curve_sampler_model = mc.sampler;
            through_pts = sample_points(mc.sampler, mc.degree + 2, sub);
        }

        int c = ctx.model_dim - 3 - (ctx.quadric_section ? 1 : 0);
        std::vector<Poly> cuts;
        for (int i = 0; i < c; ++i) cuts.push_back(random_linear_through(ctx.amb, through_pts, sub));
        if (ctx.quadric_section) {
            std::vector<Poly> q2 = forms_through_points(ctx.amb, through_pts, 2, 1, nullptr);
            Poly q(ctx.amb);
            for (const Poly& f : q2) q = poly_add(q, poly_scale(f, sub.mod(p)));
            cuts.push_back(q);
        }
        // ambient for the section: P^{g+1}
        RingPtr target = make_ring(p, g + 2);
        std::vector<Poly> iso;
        for (int i = 0; i < g + 2; ++i) iso.push_back(random_form(ctx.amb, 1, sub));
        Sampler section = ctx.sampler.restricted_by(cuts, static_cast<int>(cuts.size()));
        Subscheme X;
        try {
            X = image(section, iso, 3, 2, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        } catch (const SampleBudgetExhausted&) {
            continue;
        }
        HilbertSummary h;
        try {
            h = hilbert(Ideal(X.ring, X.gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (h.proj_dim != 3 || h.degree != 2 * g - 2) continue;

        FanoRecord rec;
        rec.g = g;
        rec.threefold = std::move(X);
        rec.sampler = section.then(iso, rec.threefold.ring);
        rec.marking = std::move(mark);
        if (rec.marking.kind == MarkKind::Point) {
            rec.marking.point = push_point(Sampler::direct(ctx.amb, {}, 0).then(iso, target),
                                           rec.marking.point);
            if (!on_subscheme(rec.threefold, rec.marking.point)) continue;
            if (!is_smooth_at(rec.threefold, rec.marking.point)) continue;
        } else {
            Sampler pushed_curve = curve_sampler_model.then(iso, target);
            Subscheme img;
            try {
                img = image(curve_sampler_model, iso, 1, 2, sub);
            } catch (...) {
                continue;
            }
            if (!curve_image_ok(img, rec.marking.curve_degree)) continue;
            rec.marking.curve = std::move(img);
            rec.marking.curve_sampler = std::move(pushed_curve);
        }
        return rec;
    }
    throw ModelConstructionFailed("fano_threefold: resample budget exhausted");
}

}  // namespace k3lat
