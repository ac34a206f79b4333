#include "k3lat/curves.hpp"

namespace k3lat {

namespace {

constexpr int kResampleBudget = 16;

/// All degree-d monomials of the ring as polynomials.
std::vector<Poly> monomial_forms(const RingPtr& R, int d) {
    std::vector<Poly> out;
    for (const Monomial& m : monomials_of_degree(*R, d)) out.push_back(poly_term(R, m, 1));
    return out;
}

/// Check dim/degree/genus of a curve model via its Hilbert polynomial.
bool check_curve(const Subscheme& C, int degree, int genus) {
    HilbertSummary h = hilbert(Ideal(C.ring, C.gens));
    return h.proj_dim == 1 && h.degree == degree && h.curve_genus() == genus;
}

}  // namespace

Poly random_smooth_plane_cubic(const RingPtr& P2, Rng& rng) {
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        Poly f = random_form(P2, 3, rng);
        if (f.is_zero()) continue;
        std::vector<Poly> partials;
        for (int i = 0; i < 3; ++i) partials.push_back(poly_derivative(f, i));
        HilbertSummary h = hilbert(Ideal(P2, partials));
        if (h.krull_dim == 0) return f;  // empty singular scheme
    }
    throw CurveConstructionFailed("random_smooth_plane_cubic: no smooth member found");
}

CurveRecord rational_curve(int d, int n, uint32_t p, Rng& rng) {
    if (d < 1 || n < 2) throw std::invalid_argument("rational_curve: need d >= 1, n >= 2");
    RingPtr P1 = make_ring(p, 2);
    int span = std::min(d, n);

    // rational normal curve of degree d, coordinates padded up to PP^n when
    // the curve spans a smaller linear subspace
    std::vector<Poly> forms = monomial_forms(P1, d);
    Sampler src = Sampler::direct(P1, {}, 1);

    if (d <= n) {
        while (static_cast<int>(forms.size()) < n + 1) forms.push_back(Poly(P1));
        RingPtr Pn = make_ring(p, n + 1);
        Sampler s = src.then(forms, Pn);
        Subscheme C = image(src, forms, 1, 2, rng);
        C.dim = 1;
        CurveRecord rec{std::move(C), std::move(s), d, 0};
        if (!check_curve(rec.curve, d, 0))
            throw CurveConstructionFailed("rational_curve: invariant check failed");
        (void)span;
        return rec;
    }

    // d > n: general projection of the rational normal curve
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        Rng sub = rng.child(0xc0 + attempt);
        RingPtr Pd = make_ring(p, d + 1);
        std::vector<Poly> proj;
        for (int i = 0; i <= n; ++i) proj.push_back(random_form(Pd, 1, sub));
        std::vector<Poly> composed;
        for (const Poly& pr : proj) composed.push_back(poly_compose(pr, forms, P1));
        RingPtr Pn = make_ring(p, n + 1);
        Sampler s = src.then(composed, Pn);
        int cap = std::min(4, std::max(2, d - n + 1));
        Subscheme C = image(src, composed, 1, cap, sub);
        C.dim = 1;
        if (!check_curve(C, d, 0)) continue;
        return CurveRecord{std::move(C), std::move(s), d, 0};
    }
    throw CurveConstructionFailed("rational_curve: projection kept failing invariants");
}

CurveRecord elliptic_curve(int d, int n, uint32_t p, Rng& rng) {
    if (d < 3) throw std::invalid_argument("elliptic_curve: need d >= 3");
    RingPtr P2 = make_ring(p, 3);

    if (d == 3) {
        Poly f = random_smooth_plane_cubic(P2, rng);
        if (n == 2) {
            Subscheme C{P2, {f}, 1};
            Sampler s = Sampler::direct(P2, {f}, 1);
            return CurveRecord{std::move(C), std::move(s), 3, 1};
        }
        // embed the plane in PP^n
        RingPtr Pn = make_ring(p, n + 1);
        std::vector<Poly> forms = {poly_var(P2, 0), poly_var(P2, 1), poly_var(P2, 2)};
        while (static_cast<int>(forms.size()) < n + 1) forms.push_back(Poly(P2));
        Sampler s = Sampler::direct(P2, {f}, 1).then(forms, Pn);
        Subscheme C = image(Sampler::direct(P2, {f}, 1), forms, 1, 3, rng);
        C.dim = 1;
        CurveRecord rec{std::move(C), std::move(s), 3, 1};
        if (!check_curve(rec.curve, 3, 1))
            throw CurveConstructionFailed("elliptic_curve: plane cubic check failed");
        return rec;
    }

    int m = (d + 2) / 3;
    int ndelta = 3 * m - d;
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        Rng sub = rng.child(0xe11 + attempt);
        Poly f = random_smooth_plane_cubic(P2, sub);
        Sampler cubic_pts = Sampler::direct(P2, {f}, 1);
        std::vector<PointP> delta;
        if (ndelta > 0) delta = sample_points(cubic_pts, ndelta, sub);

        // degree-m forms through delta, modulo multiples of the cubic
        std::vector<Monomial> monos = monomials_of_degree(*P2, m);
        std::unordered_map<Monomial, int, MonomialHash> index;
        for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
        Rref acc(P2->field(), monos.size());
        if (m >= 3) {
            for (const Monomial& q : monomials_of_degree(*P2, m - 3)) {
                Poly mult = poly_mul_term(f, q, 1);
                std::vector<uint32_t> row(monos.size(), 0);
                for (const Term& t : mult.terms()) row[index.at(t.m)] = t.c;
                acc.insert(std::move(row));
            }
        }
        std::vector<Poly> basis =
            delta.empty() ? monomial_forms(P2, m)
                          : forms_through_points(P2, delta, m, 1, nullptr);
        std::vector<Poly> map_forms;
        for (const Poly& g : basis) {
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : g.terms()) row[index.at(t.m)] = t.c;
            if (acc.insert(std::move(row))) map_forms.push_back(g);
        }
        if (static_cast<int>(map_forms.size()) != d) continue;  // degenerate choice

        RingPtr Pd1 = make_ring(p, d);
        Sampler s = cubic_pts.then(map_forms, Pd1);
        Subscheme E = image(cubic_pts, map_forms, 1, d == 4 ? 3 : 2, sub);
        E.dim = 1;
        if (!check_curve(E, d, 1)) continue;
        // linear normality: no hyperplane contains the image
        bool has_linear = false;
        for (const Poly& g : E.gens)
            if (g.degree() == 1) has_linear = true;
        if (has_linear) continue;

        if (n >= d - 1) {
            if (n == d - 1) return CurveRecord{std::move(E), std::move(s), d, 1};
            // pad into a larger space
            std::vector<Poly> pad;
            for (int i = 0; i < d; ++i) pad.push_back(poly_var(Pd1, i));
            while (static_cast<int>(pad.size()) < n + 1) pad.push_back(Poly(Pd1));
            RingPtr Pn = make_ring(p, n + 1);
            std::vector<Poly> composed;
            for (const Poly& pr : pad) composed.push_back(poly_compose(pr, map_forms, P2));
            Sampler s2 = cubic_pts.then(composed, Pn);
            Subscheme E2 = image(cubic_pts, composed, 1, d == 4 ? 3 : 2, sub);
            E2.dim = 1;
            if (!check_curve(E2, d, 1)) continue;
            return CurveRecord{std::move(E2), std::move(s2), d, 1};
        }

        // project down to PP^n
        std::vector<Poly> proj;
        for (int i = 0; i <= n; ++i) proj.push_back(random_form(Pd1, 1, sub));
        std::vector<Poly> composed;
        for (const Poly& pr : proj) composed.push_back(poly_compose(pr, map_forms, P2));
        RingPtr Pn = make_ring(p, n + 1);
        Sampler s2 = cubic_pts.then(composed, Pn);
        Subscheme E2 = image(cubic_pts, composed, 1, 3, sub);
        E2.dim = 1;
        if (!check_curve(E2, d, 1)) continue;
        return CurveRecord{std::move(E2), std::move(s2), d, 1};
    }
    throw CurveConstructionFailed("elliptic_curve: resample budget exhausted");
}

GenusTwoPair genus2_curve_deg7_on_quadric(uint32_t p, Rng& rng) {
    RingPtr P2 = make_ring(p, 3);
    for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
        Rng sub = rng.child(0x927 + attempt);
        // four random points in general position
        std::vector<PointP> nodes;
        Sampler plane = Sampler::direct(P2, {}, 2);
        nodes = sample_points(plane, 4, sub);

        // quintics with double points at the nodes: 21 - 12 = 9 dimensional
        std::vector<Poly> quintics = forms_through_points(P2, nodes, 5, 2, nullptr);
        if (quintics.size() != 9) continue;
        Poly F(P2);
        for (const Poly& q : quintics) F = poly_add(F, poly_scale(q, sub.mod(p)));
        if (F.is_zero()) continue;

        // cubics through the nodes map the quintic to a genus-2 septic in P5
        std::vector<Poly> cubics = forms_through_points(P2, nodes, 3, 1, nullptr);
        if (cubics.size() != 6) continue;
        Sampler quintic_pts = Sampler::direct(P2, {F}, 1);
        Subscheme C5;
        Sampler s5 = quintic_pts.then(cubics, make_ring(p, 6));
        try {
            C5 = image(quintic_pts, cubics, 1, 3, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        }
        C5.dim = 1;
        if (!check_curve(C5, 7, 2)) continue;

        // project to P4
        RingPtr P5r = C5.ring;
        std::vector<Poly> proj;
        for (int i = 0; i < 5; ++i) proj.push_back(random_form(P5r, 1, sub));
        std::vector<Poly> composed;
        for (const Poly& pr : proj) composed.push_back(poly_compose(pr, cubics, P2));
        RingPtr P4 = make_ring(p, 5);
        Sampler s4 = quintic_pts.then(composed, P4);
        Subscheme C;
        try {
            C = image(quintic_pts, composed, 1, 3, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        }
        C.dim = 1;
        if (!check_curve(C, 7, 2)) continue;

        // quadrics through C: at least 15 - 13 = 2; take a smooth member
        std::vector<Poly> quads;
        for (const Poly& g : C.gens)
            if (g.degree() == 2) quads.push_back(g);
        if (quads.size() < 2) continue;
        Poly Q(P4);
        bool smooth = false;
        for (int t = 0; t < 8 && !smooth; ++t) {
            Q = Poly(P4);
            for (const Poly& q : quads) Q = poly_add(Q, poly_scale(q, sub.mod(p)));
            if (Q.is_zero()) continue;
            // rank of the symmetric matrix of the quadric
            MatF S(P4->field(), 5, 5);
            const FieldSpec& F5 = P4->field();
            for (const Term& t2 : Q.terms()) {
                int a = -1, b = -1;
                for (int i = 0; i < 5; ++i) {
                    if (t2.m.e[i] == 2) { a = b = i; break; }
                    if (t2.m.e[i] == 1) { (a < 0 ? a : b) = i; }
                }
                if (a == b) {
                    S.at(a, a) = F5.add(S.at(a, a), F5.add(t2.c, t2.c));
                } else {
                    S.at(a, b) = F5.add(S.at(a, b), t2.c);
                    S.at(b, a) = F5.add(S.at(b, a), t2.c);
                }
            }
            smooth = S.rank() == 5;
        }
        if (!smooth) continue;

        GenusTwoPair pair;
        pair.quadric = Subscheme{P4, {Q}, 3};
        pair.curve = CurveRecord{std::move(C), std::move(s4), 7, 2};
        (void)s5;
        return pair;
    }
    throw CurveConstructionFailed("genus2_curve_deg7_on_quadric: resample budget exhausted");
}

}  // namespace k3lat
