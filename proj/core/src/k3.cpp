#include "k3lat/k3.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "k3lat/univar.hpp"

namespace k3lat {

namespace {

constexpr int kBudget = 16;

int K3_genus_of(const K3Record& K) {
    if (K.lattice) return static_cast<int>(K.lattice->genus_of(K.pol));
    return K.surface.ring->nvars() - 1;
}

std::vector<Poly> monomial_forms(const RingPtr& R, int d) {
    std::vector<Poly> out;
    for (const Monomial& m : monomials_of_degree(*R, d)) out.push_back(poly_term(R, m, 1));
    return out;
}

/// Row of a polynomial over the degree-d monomial basis.
std::vector<uint32_t> poly_row(const Poly& f, const std::vector<Monomial>& monos,
                               const std::unordered_map<Monomial, int, MonomialHash>& index) {
    const FieldSpec& F = f.ring()->field();
    std::vector<uint32_t> row(monos.size(), 0);
    for (const Term& t : f.terms()) {
        int idx = index.at(t.m);
        row[idx] = F.add(row[idx], t.c);
    }
    return row;
}

struct DegreeContext {
    std::vector<Monomial> monos;
    std::unordered_map<Monomial, int, MonomialHash> index;
    DegreeContext(const PolyRing& R, int d) : monos(monomials_of_degree(R, d)) {
        index.reserve(monos.size() * 2);
        for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
    }
};

/// Accumulate the degree-d span of multiples of the given generators.
Rref ideal_span_in_degree(const RingPtr& ring, const std::vector<Poly>& gens, int d,
                          const DegreeContext& ctx) {
    const FieldSpec& F = ring->field();
    Rref acc(F, ctx.monos.size());
    for (const Poly& g : gens) {
        int dg = g.degree();
        if (dg > d || g.is_zero() || !g.homogeneous()) continue;
        for (const Monomial& m : monomials_of_degree(*ring, d - dg)) {
            std::vector<uint32_t> row(ctx.monos.size(), 0);
            for (const Term& t : g.terms()) {
                int idx = ctx.index.at(mono_mul(t.m, m));
                row[idx] = F.add(row[idx], t.c);
            }
            acc.insert(std::move(row));
        }
    }
    return acc;
}

/// Change of coordinates sending the linear form f to the last variable;
/// returns (to_new, to_old) substitution argument vectors.
std::pair<std::vector<Poly>, std::vector<Poly>> change_to_last(const RingPtr& R, const Poly& f) {
    const FieldSpec& F = R->field();
    int n = R->nvars();
    // A: row n-1 = coefficients of f, other rows unit vectors skipping pivot
    std::vector<uint32_t> c(n, 0);
    for (const Term& t : f.terms())
        for (int i = 0; i < n; ++i)
            if (t.m.e[i]) c[i] = t.c;
    int pivot = n - 1;
    while (pivot >= 0 && c[pivot] == 0) --pivot;
    if (pivot < 0) throw std::invalid_argument("change_to_last: zero form");
    MatF A(F, n, n);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == pivot) continue;
        A.at(r, i) = 1;
        ++r;
    }
    for (int i = 0; i < n; ++i) A.at(n - 1, i) = c[i];
    // B = A^{-1}: solve A b_j = e_j
    MatF B(F, n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<uint32_t> e(n, 0);
        e[j] = 1;
        std::vector<uint32_t> b = A.solve(e);
        for (int i = 0; i < n; ++i) B.at(i, j) = b[i];
    }
    auto matrix_args = [&](const MatF& M) {
        std::vector<Poly> args(n);
        for (int i = 0; i < n; ++i) {
            std::vector<Term> terms;
            for (int j = 0; j < n; ++j)
                if (M.at(i, j)) terms.push_back(Term{Monomial::var(j), M.at(i, j)});
            args[i] = Poly(R, std::move(terms));
        }
        return args;
    };
    // g(x) in new coords y: g(B y);  back: h(y) -> h(A x)
    return {matrix_args(B), matrix_args(A)};
}

/// Transported marked curve after a re-embedding: sampled points determine
/// the linear span, and the inner ideal is interpolated in reduced
/// coordinates and lifted back.
struct TransportedCurve {
    Subscheme curve;
    Sampler sampler;
};

TransportedCurve transport_curve(const Sampler& old_curve, const std::vector<Poly>& map_forms,
                                 const RingPtr& target, int expected_degree, int cap, Rng& rng) {
    Sampler pushed = old_curve.then(map_forms, target);
    uint32_t p = target->p();
    size_t need = std::max<size_t>(2 * expected_degree + 8, 24);
    std::vector<PointP> pts = sample_points(pushed, need, rng);
    std::vector<Poly> lin = forms_through_points(target, pts, 1, 1, nullptr);
    int span = target->nvars() - 1 - static_cast<int>(lin.size());
    std::vector<Poly> gens = lin;
    if (span >= 2 && expected_degree >= 2) {
        RingPtr red = make_ring(p, span + 1);
        std::vector<Poly> proj;
        for (int i = 0; i <= span; ++i) proj.push_back(random_form(target, 1, rng));
        // enough points for the reduced interpolation
        size_t need2 = static_cast<size_t>(count_monomials(span + 1, cap) * 5 / 4) + 8;
        if (pts.size() < need2) pts = sample_points(pushed, need2, rng);
        std::vector<PointP> red_pts;
        for (const PointP& q : pts) {
            std::vector<uint32_t> v(span + 1);
            bool nz = false;
            for (int i = 0; i <= span; ++i) {
                v[i] = poly_eval(proj[i], q.x);
                nz |= v[i] != 0;
            }
            if (nz) red_pts.push_back(normalize_point(target->field(), std::move(v)));
        }
        std::vector<Poly> inner;
        for (int d = 2; d <= cap; ++d) {
            std::vector<Poly> kd = forms_through_points(red, red_pts, d, 1, nullptr);
            for (const Poly& f : kd) inner.push_back(f);
        }
        inner = minimal_generators(red, inner, cap);
        for (const Poly& f : inner) gens.push_back(poly_compose(f, proj, target));
    }
    TransportedCurve out;
    out.curve = Subscheme{target, std::move(gens), 1};
    out.sampler = std::move(pushed);
    return out;
}

}  // namespace

int K3Record::genus() const { return K3_genus_of(*this); }

std::pair<int64_t, int64_t> expected_counts(int64_t g) {
    if (g < 3) throw std::invalid_argument("expected_counts: g >= 3");
    int64_t h0 = g + 1;
    int64_t quadrics = (g + 2) * (g + 1) / 2 - (4 * g - 2);
    return {h0, quadrics};
}

std::string degree_histogram(const Subscheme& V) {
    std::map<int, int> hist;
    for (const Poly& g : V.gens) ++hist[g.degree()];
    std::string out = "{";
    bool first = true;
    for (auto [d, c] : hist) {
        if (!first) out += ", ";
        first = false;
        out += "({" + std::to_string(d) + "}, " + std::to_string(c) + ")";
    }
    out += "}";
    return out;
}

// ----------------------------------------------------------------- k3_ci

K3Record k3_ci(int g, int d, int n, uint32_t p, Rng& rng) {
    if (g < 3 || g > 5) throw std::invalid_argument("k3_ci: genus must be 3, 4 or 5");
    if (n != -2 && n != 0) throw std::invalid_argument("k3_ci: curve self-intersection must be -2 or 0");
    if (n == 0 && d < 3) throw std::invalid_argument("k3_ci: elliptic curves need degree >= 3");
    if (n == -2 && d < 0) throw std::invalid_argument("k3_ci: bad degree");

    std::vector<int> ci_degrees = g == 3 ? std::vector<int>{4}
                                  : g == 4 ? std::vector<int>{2, 3}
                                           : std::vector<int>{2, 2, 2};
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0xc1 + attempt);
        RingPtr amb = make_ring(p, g + 1);

        // marked datum
        bool nodal = (n == -2 && d == 0);
        CurveRecord curve;
        PointP node;
        if (nodal) {
            node = sample_points(Sampler::direct(amb, {}, g), 1, sub)[0];
        } else if (n == -2) {
            curve = rational_curve(d, g, p, sub);
        } else {
            curve = elliptic_curve(d, g, p, sub);
        }

        // hypersurfaces through the marked datum
        std::vector<Poly> S_gens;
        bool bad = false;
        for (size_t i = 0; i < ci_degrees.size() && !bad; ++i) {
            int deg = ci_degrees[i];
            std::vector<Poly> space;
            if (nodal) {
                // first hypersurface singular at the node, the rest through it
                space = forms_through_points(amb, {node}, deg, i == 0 ? 2 : 1, nullptr);
            } else {
                try {
                    space = forms_through(curve.sampler, deg, 1, nullptr, sub);
                } catch (const InterpolationUnstable&) {
                    bad = true;
                    break;
                }
            }
            if (space.empty()) {
                bad = true;
                break;
            }
            // random member independent of the previous ones
            DegreeContext ctx(*amb, deg);
            Rref acc = ideal_span_in_degree(amb, S_gens, deg, ctx);
            bool found = false;
            for (int t = 0; t < 8 && !found; ++t) {
                Poly f(amb);
                for (const Poly& s : space) f = poly_add(f, poly_scale(s, sub.mod(p)));
                if (f.is_zero()) continue;
                if (acc.insert(poly_row(f, ctx.monos, ctx.index))) {
                    S_gens.push_back(f);
                    found = true;
                }
            }
            if (!found) bad = true;
        }
        if (bad) continue;

        Subscheme S{amb, S_gens, 2};
        HilbertSummary h;
        try {
            h = hilbert(Ideal(amb, S_gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (h.proj_dim != 2 || h.degree != 2 * g - 2) continue;

        Sampler s = Sampler::direct(amb, S_gens, 2);
        // smoothness: away from the node everything sampled must be smooth
        Rng smp = sub.child(0x5e);
        bool smooth_ok = true;
        try {
            auto pts = sample_points(s, 20, smp);
            for (const PointP& q : pts)
                if (!(nodal && q.x == node.x) && !is_smooth_at(S, q)) smooth_ok = false;
            if (!nodal) {
                auto cpts = sample_points(curve.sampler, 10, smp);
                for (const PointP& q : cpts)
                    if (!is_smooth_at(S, q)) smooth_ok = false;
            }
        } catch (const SampleBudgetExhausted&) {
            smooth_ok = false;
        }
        if (!smooth_ok) continue;
        if (nodal) {
            if (!on_subscheme(S, node)) continue;
            if (is_smooth_at(S, node)) continue;
            NodeData nd = tangent_cone_at_node(S, node);
            if (nd.hessian_rank != 3) continue;
        }

        K3Record K;
        K.surface = std::move(S);
        K.sampler = std::move(s);
        if (nodal) {
            K.has_node = true;
            K.node = node;
        } else {
            K.has_curve = true;
            K.curve = curve.curve;
            K.curve_sampler = curve.sampler;
        }
        K.lattice = LatticeK3(g, d, n);
        K.p = p;
        K.trace = "ci(" + std::to_string(g) + "," + std::to_string(d) + "," + std::to_string(n) + ")";
        return K;
    }
    throw K3ConstructionFailed("k3_ci: resample budget exhausted");
}

// -------------------------------------------------------------- k3_scroll

namespace {

/// Base scroll constructions: the four worked examples.
K3Record scroll_example(int g, int d, uint32_t p, Rng& rng) {
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x5c0 + attempt);
        ScrollKind kind;
        std::vector<Poly> extra;
        ScrollRecord X = [&]() {
            if (g == 5 && d == 3) return segre_scroll(ScrollKind::P1xP2_in_P5, p);
            if (g == 6 && d == 4) return segre_scroll(ScrollKind::cone_P1xP2_in_P6, p);
            if (g == 6 && d == 5) return segre_scroll(ScrollKind::rank4_quadric_in_P6, p);
            if (g == 7 && d == 5) return segre_scroll(ScrollKind::cone_P1xP2_in_P7, p);
            throw std::invalid_argument("scroll_example: unknown case");
        }();
        kind = X.kind;
        const RingPtr& amb = X.variety.ring;

        std::vector<Poly> raw = X.variety.gens;
        if (g == 5 && d == 3) {
            Poly f = random_bidegree_form(X, 2, 3, sub);
            auto mult = ambient_multiples(X, f, 3, amb);
            raw.insert(raw.end(), mult.begin(), mult.end());
        } else if (g == 6 && d == 4) {
            Poly f1 = random_bidegree_form(X, 1, 2, sub);
            Poly f2 = random_bidegree_form(X, 2, 2, sub);
            for (const Poly& f : {f1, f2}) {
                auto mult = ambient_multiples(X, f, 3, amb);
                raw.insert(raw.end(), mult.begin(), mult.end());
            }
        } else if (g == 6 && d == 5) {
            // all entries ambient linear forms
            std::vector<Poly> upper;
            RingPtr B = X.bigraded;
            for (int i = 0; i < 10; ++i) upper.push_back(random_bidegree_form(X, 1, 1, sub));
            auto pf = pfaffians4(B, upper);
            for (const Poly& f : pf) {
                auto mult = ambient_multiples(X, f, 3, amb);
                raw.insert(raw.end(), mult.begin(), mult.end());
            }
        } else {
            // pentagonal genus 7: the printed block pattern
            std::vector<Poly> upper(10);
            // indices into the upper triangle, row-major
            auto at = [&](int i, int j) -> Poly& {
                static const int offset[5] = {0, 4, 7, 9, 10};
                return upper[offset[i] + (j - i - 1)];
            };
            at(0, 1) = Poly(X.bigraded);
            for (int i = 0; i < 2; ++i)
                for (int j = 2; j < 5; ++j) at(i, j) = random_bidegree_form(X, 1, 1, sub);
            // the lower block entries are linear in the fiber variables only
            for (int i = 2; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) at(i, j) = random_bidegree_form(X, 0, 1, sub);
            auto pf = pfaffians4(X.bigraded, upper);
            for (const Poly& f : pf) {
                auto mult = ambient_multiples(X, f, 3, amb);
                raw.insert(raw.end(), mult.begin(), mult.end());
            }
        }
        (void)kind;
        std::vector<Poly> gens = minimal_generators(amb, raw, 3);
        HilbertSummary h;
        try {
            h = hilbert(Ideal(amb, gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (h.proj_dim != 2 || h.degree != 2 * g - 2) continue;
        Subscheme S{amb, gens, 2};
        Sampler sampler = Sampler::direct(amb, gens, 2);

        // marked pencil member: the scroll fiber over a random ruling point
        uint32_t s0 = sub.mod(p), t0 = sub.nonzero_mod(p);
        std::vector<Poly> fiber;
        for (int i = 0; i < X.n_fiber; ++i)
            fiber.push_back(poly_sub(poly_scale(poly_var(amb, 2 * i), t0),
                                     poly_scale(poly_var(amb, 2 * i + 1), s0)));
        std::vector<Poly> curve_gens = gens;
        curve_gens.insert(curve_gens.end(), fiber.begin(), fiber.end());
        HilbertSummary hc;
        try {
            hc = hilbert(Ideal(amb, curve_gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (hc.proj_dim != 1 || hc.degree != d || hc.curve_genus() != 1) continue;

        // smoothness sampling
        Rng smp = sub.child(0x6e);
        bool smooth_ok = true;
        try {
            auto pts = sample_points(sampler, 20, smp);
            for (const PointP& q : pts)
                if (!is_smooth_at(S, q)) smooth_ok = false;
        } catch (const SampleBudgetExhausted&) {
            smooth_ok = false;
        }
        if (!smooth_ok) continue;

        K3Record K;
        K.surface = std::move(S);
        K.sampler = std::move(sampler);
        K.has_curve = true;
        K.curve = Subscheme{amb, curve_gens, 1};
        K.curve_sampler = Sampler::direct(amb, curve_gens, 1);
        K.lattice = LatticeK3(g, d, 0);
        K.p = p;
        K.trace = "scroll(" + std::to_string(g) + "," + std::to_string(d) + ")";
        return K;
    }
    throw K3ConstructionFailed("scroll_example: resample budget exhausted");
}

}  // namespace

K3Record k3_scroll(int g, int d, uint32_t p, Rng& rng) {
    if (d < 3 || d > 5) throw std::invalid_argument("k3_scroll: pencil degree must be 3, 4 or 5");
    if (g < 3) throw std::invalid_argument("k3_scroll: genus must be >= 3");
    if ((g == 5 && d == 3) || (g == 6 && d == 4) || (g == 6 && d == 5) || (g == 7 && d == 5))
        return scroll_example(g, d, p, rng);
    if (g <= 5) return k3_ci(g, d, 0, p, rng);
    // reduce to a base case and re-embed by |L + E| repeatedly
    int g0 = -1;
    int top = d == 3 ? 5 : d == 4 ? 6 : 7;
    for (int base = top; base >= 3; --base)
        if ((g - base) % d == 0 && g >= base) {
            g0 = base;
            break;
        }
    if (g0 < 0) throw std::invalid_argument("k3_scroll: no base case reaches this genus");
    K3Record K = k3_scroll(g0, d, p, rng);
    int m = (g - g0) / d;
    EmbedOptions opt;
    opt.gen_cap = 3;  // tri/tetra/pentagonal models need cubic generators
    for (int i = 0; i < m; ++i) K = embed(K, 1, 1, rng, opt);
    return K;
}

// --------------------------------------------------------------- k3_mukai

K3Record k3_mukai(int g, MarkKind marking, uint32_t p, Rng& rng) {
    if (g < 6 || g == 11 || g > 12)
        throw std::invalid_argument("k3_mukai: genus must be in {6,...,10,12}");
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x3a + attempt);
        MarkKind fano_mark = marking == MarkKind::None ? MarkKind::Point : marking;
        FanoRecord X;
        try {
            X = fano_threefold(g, fano_mark, p, sub);
        } catch (const ModelConstructionFailed&) {
            continue;
        }
        const RingPtr& amb = X.threefold.ring;

        // the hyperplane cutting the K3 out of the threefold
        Poly H(amb);
        if (marking == MarkKind::None) {
            H = random_form(amb, 1, sub);
        } else if (marking == MarkKind::Point) {
            // nodal section: the hyperplane contains the tangent space
            Subscheme T = tangent_space(X.threefold, X.marking.point);
            for (const Poly& f : T.gens) H = poly_add(H, poly_scale(f, sub.mod(p)));
        } else {
            // line/conic: through the span of the marked curve
            std::vector<Poly> W;
            for (const Poly& f : X.marking.curve.gens)
                if (f.degree() == 1) W.push_back(f);
            for (const Poly& f : W) H = poly_add(H, poly_scale(f, sub.mod(p)));
        }
        if (H.is_zero()) continue;

        RingPtr target = make_ring(p, g + 1);
        std::vector<Poly> iso;
        for (int i = 0; i <= g; ++i) iso.push_back(random_form(amb, 1, sub));
        Sampler section = X.sampler.restricted_by({H}, 1);
        Subscheme S;
        try {
            S = image(section, iso, 2, 2, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        } catch (const SampleBudgetExhausted&) {
            continue;
        }
        auto [h0, nquad] = expected_counts(g);
        (void)h0;
        if (static_cast<int64_t>(S.gens.size()) != nquad) continue;
        Sampler s_new = section.then(iso, target);

        K3Record K;
        K.surface = std::move(S);
        K.sampler = std::move(s_new);
        K.p = p;
        K.trace = "mukai(" + std::to_string(g) + ")";

        // markings and smoothness policy
        Rng smp = sub.child(0x7e);
        auto iso_push = [&](const PointP& q) {
            std::vector<uint32_t> v(iso.size());
            bool nz = false;
            for (size_t i = 0; i < iso.size(); ++i) {
                v[i] = poly_eval(iso[i], q.x);
                nz |= v[i] != 0;
            }
            if (!nz) throw std::runtime_error("k3_mukai: marked point in the base locus");
            return normalize_point(FieldSpec(p), std::move(v));
        };
        bool ok = true;
        if (marking == MarkKind::None) {
            try {
                auto pts = sample_points(K.sampler, 20, smp);
                for (const PointP& q : pts)
                    if (!is_smooth_at(K.surface, q)) ok = false;
            } catch (const SampleBudgetExhausted&) {
                ok = false;
            }
            K.trace = "mukai(" + std::to_string(g) + ",none)";
        } else if (marking == MarkKind::Point) {
            // nodal section
            PointP node = iso_push(X.marking.point);
            if (!on_subscheme(K.surface, node) || is_smooth_at(K.surface, node)) continue;
            NodeData nd = tangent_cone_at_node(K.surface, node);
            if (nd.hessian_rank != 3) continue;
            try {
                auto pts = sample_points(K.sampler, 20, smp);
                for (const PointP& q : pts)
                    if (!(q.x == node.x) && !is_smooth_at(K.surface, q)) ok = false;
            } catch (const SampleBudgetExhausted&) {
                ok = false;
            }
            K.has_node = true;
            K.node = node;
            K.lattice = LatticeK3(g, 0, -2);
            K.trace = "mukai(" + std::to_string(g) + ",node)";
        } else {
            // marked line or conic
            int deg = marking == MarkKind::Line ? 1 : 2;
            Subscheme C;
            try {
                C = image(X.marking.curve_sampler, iso, 1, 2, sub);
            } catch (...) {
                continue;
            }
            HilbertSummary hc;
            try {
                hc = hilbert(Ideal(C.ring, C.gens));
            } catch (const GBCapExceeded&) {
                continue;
            }
            if (hc.proj_dim != 1 || hc.degree != deg || hc.curve_genus() != 0) continue;
            try {
                auto pts = sample_points(K.sampler, 20, smp);
                for (const PointP& q : pts)
                    if (!is_smooth_at(K.surface, q)) ok = false;
            } catch (const SampleBudgetExhausted&) {
                ok = false;
            }
            K.has_curve = true;
            K.curve = std::move(C);
            K.curve_sampler = X.marking.curve_sampler.then(iso, target);
            K.lattice = LatticeK3(g, deg, -2);
            K.trace = "mukai(" + std::to_string(g) + (deg == 1 ? ",line)" : ",conic)");
        }
        if (!ok) continue;
        return K;
    }
    throw K3ConstructionFailed("k3_mukai: resample budget exhausted");
}

K3Record k3_plain(int g, uint32_t p, Rng& rng) {
    if (g == 11)
        throw std::invalid_argument(
            "k3_plain: the direct genus-11 route relies on an externally constructed surface "
            "family and is not provided; genus 11 is reachable as a K3 containing a conic "
            "(lattice 2,11,-2)");
    if (g >= 6 && g <= 12) return k3_mukai(g, MarkKind::None, p, rng);
    if (g < 3 || g > 5) throw std::invalid_argument("k3_plain: genus must be in {3,...,12}");

    std::vector<int> ci_degrees = g == 3 ? std::vector<int>{4}
                                  : g == 4 ? std::vector<int>{2, 3}
                                           : std::vector<int>{2, 2, 2};
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x91a + attempt);
        RingPtr amb = make_ring(p, g + 1);
        std::vector<Poly> gens;
        for (int d : ci_degrees) gens.push_back(random_form(amb, d, sub));
        HilbertSummary h;
        try {
            h = hilbert(Ideal(amb, gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (h.proj_dim != 2 || h.degree != 2 * g - 2) continue;
        Subscheme S{amb, gens, 2};
        Sampler s = Sampler::direct(amb, gens, 2);
        Rng smp = sub.child(0x5e);
        bool smooth_ok = true;
        try {
            auto pts = sample_points(s, 20, smp);
            for (const PointP& q : pts)
                if (!is_smooth_at(S, q)) smooth_ok = false;
        } catch (const SampleBudgetExhausted&) {
            smooth_ok = false;
        }
        if (!smooth_ok) continue;
        K3Record K;
        K.surface = std::move(S);
        K.sampler = std::move(s);
        K.p = p;
        K.trace = "plain(" + std::to_string(g) + ")";
        return K;
    }
    throw K3ConstructionFailed("k3_plain: resample budget exhausted");
}

// ----------------------------------------------------------- node_project

K3Record node_project(const K3Record& K, Rng& rng) {
    if (!K.has_node) throw std::invalid_argument("node_project: record has no node marking");
    int g = K.genus();
    if (g < 4) throw std::invalid_argument("node_project: genus must be at least 4");
    const RingPtr& amb = K.surface.ring;
    const FieldSpec& F = amb->field();
    uint32_t p = F.p;
    int n = amb->nvars();

    NodeData nd = tangent_cone_at_node(K.surface, K.node);
    if (nd.hessian_rank != 3)
        throw K3ConstructionFailed("node_project: the node is not a simple double point");
    if (nd.tangent_basis.size() != 3)
        throw K3ConstructionFailed("node_project: tangent space has unexpected dimension");

    // projection away from the node
    int j0 = nd.chart_var;
    std::vector<Poly> proj;
    for (int i = 0; i < n; ++i) {
        if (i == j0) continue;
        Poly f = poly_var(amb, i);
        if (K.node.x[i])
            f = poly_sub(f, poly_scale(poly_var(amb, j0), K.node.x[i]));
        proj.push_back(f);
    }
    RingPtr target = make_ring(p, n - 1);

    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0x9f + attempt);
        Subscheme S2;
        try {
            S2 = image(K.sampler, proj, 2, 2, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        } catch (const SampleBudgetExhausted&) {
            continue;
        }

        // exceptional conic: rational points of the projectivized tangent cone
        const MatF& Q = nd.qform;
        auto qeval = [&](const std::vector<uint32_t>& t) {
            uint64_t acc = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (Q.at(i, j) && t[i] && t[j])
                        acc += static_cast<uint64_t>(Q.at(i, j)) * t[i] % p * t[j] % p;
            return static_cast<uint32_t>(acc % p);
        };
        auto beval = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
            uint64_t acc = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (Q.at(i, j) && x[i] && y[j])
                        acc += static_cast<uint64_t>(Q.at(i, j)) * x[i] % p * y[j] % p;
            return static_cast<uint32_t>(acc % p);
        };
        // find one rational point of the conic
        std::vector<uint32_t> t0;
        for (int t = 0; t < 64 && t0.empty(); ++t) {
            std::vector<uint32_t> u(3), v(3);
            for (int i = 0; i < 3; ++i) {
                u[i] = sub.mod(p);
                v[i] = sub.mod(p);
            }
            // q(u + s v) = q(u) + s (b(u,v) + b(v,u)) + s^2 q(v)
            uint32_t A = qeval(v);
            uint32_t B = F.add(beval(u, v), beval(v, u));
            uint32_t C = qeval(u);
            UniPoly f;
            f.c = {C, B, A};
            f.trim();
            if (f.is_zero()) continue;
            Rng rr = sub.child(0xabc + t);
            auto roots = univariate_roots(F, f, rr);
            if (roots.empty()) continue;
            std::vector<uint32_t> cand(3);
            bool nz = false;
            for (int i = 0; i < 3; ++i) {
                cand[i] = F.add(u[i], F.mul(roots[0], v[i]));
                nz |= cand[i] != 0;
            }
            if (nz && qeval(cand) == 0) t0 = cand;
        }
        if (t0.empty()) continue;
        // sweep the pencil of lines through t0 for more conic points
        std::vector<PointP> conic_pts;
        for (int t = 0; t < 40 && conic_pts.size() < 12; ++t) {
            std::vector<uint32_t> v(3);
            for (int i = 0; i < 3; ++i) v[i] = sub.mod(p);
            uint32_t qv = qeval(v);
            if (!qv) continue;
            uint32_t bb = F.add(beval(t0, v), beval(v, t0));
            uint32_t s1 = F.neg(F.div(bb, qv));
            if (!s1) continue;
            std::vector<uint32_t> tt(3);
            bool nz = false;
            for (int i = 0; i < 3; ++i) {
                tt[i] = F.add(t0[i], F.mul(s1, v[i]));
                nz |= tt[i] != 0;
            }
            if (!nz || qeval(tt) != 0) continue;
            // ambient direction
            std::vector<uint32_t> y(n - 1, 0);
            bool any = false;
            for (int u2 = 0; u2 < 3; ++u2)
                for (int i = 0; i < n - 1; ++i) {
                    y[i] = F.add(y[i], F.mul(tt[u2], nd.tangent_basis[u2][i]));
                }
            for (uint32_t c : y) any |= c != 0;
            if (!any) continue;
            PointP cp = normalize_point(F, std::move(y));
            bool seen = false;
            for (const PointP& q : conic_pts)
                if (q.x == cp.x) seen = true;
            if (!seen) conic_pts.push_back(std::move(cp));
        }
        if (conic_pts.size() < 8) continue;
        std::vector<Poly> clin = forms_through_points(target, conic_pts, 1, 1, nullptr);
        std::vector<Poly> cquad = forms_through_points(target, conic_pts, 2, 1, nullptr);
        std::vector<Poly> craw = clin;
        craw.insert(craw.end(), cquad.begin(), cquad.end());
        std::vector<Poly> conic_gens = minimal_generators(target, craw, 2);
        HilbertSummary hc;
        try {
            hc = hilbert(Ideal(target, conic_gens));
        } catch (const GBCapExceeded&) {
            continue;
        }
        if (hc.proj_dim != 1 || hc.degree != 2 || hc.curve_genus() != 0) continue;
        // the conic lies on the projected surface
        bool contained = true;
        for (const PointP& q : conic_pts)
            if (!on_subscheme(S2, q)) contained = false;
        if (!contained) continue;

        K3Record out;
        out.surface = std::move(S2);
        out.sampler = K.sampler.then(proj, target);
        out.has_curve = true;
        out.curve = Subscheme{target, conic_gens, 1};
        out.curve_sampler = Sampler::direct(target, conic_gens, 1);
        out.lattice = LatticeK3(g - 1, 2, -2);
        out.p = p;
        out.trace = K.trace + "+node_project";
        return out;
    }
    throw K3ConstructionFailed("node_project: resample budget exhausted");
}

// ------------------------------------------------------------------ embed

K3Record embed(const K3Record& K, int a, int b, Rng& rng, const EmbedOptions& opt) {
    if (!K.lattice) throw std::invalid_argument("embed: record carries no rank-2 lattice");
    const LatticeK3& L = *K.lattice;
    // the new class in the base basis: a * (current polarization) + b * C
    DivisorClass D{a * K.pol.a, a * K.pol.b + b};
    BigNefVerdict verdict = is_big_nef_candidate(L, D);
    if (!verdict.ok) {
        std::string msg = "embed: class (" + std::to_string(a) + "," + std::to_string(b) +
                          ") fails the big-and-nef screening";
        if (verdict.witness)
            msg += "; witness (-2)-class (" + std::to_string(verdict.witness->a) + "," +
                   std::to_string(verdict.witness->b) + ")";
        throw std::invalid_argument(msg);
    }
    if (b > 0 && K.has_node)
        throw std::invalid_argument("embed: b > 0 needs an actual curve; project the node first");
    if (b < -2)
        throw std::invalid_argument("embed: |b| <= 2 supported directly");

    const RingPtr& amb = K.surface.ring;
    const FieldSpec& F = amb->field();
    uint32_t p = F.p;
    int64_t N = 2 + L.square(D) / 2;  // h0 of the new polarization
    int64_t g_new = L.genus_of(D);

    int t_deg = a;
    std::vector<Poly> W_map;
    Poly residu_f(amb);

    auto complement_over_ideal = [&](const std::vector<Poly>& candidates, int deg) {
        DegreeContext ctx(*amb, deg);
        Rref acc = ideal_span_in_degree(amb, K.surface.gens, deg, ctx);
        std::vector<Poly> picked;
        for (const Poly& f : candidates)
            if (acc.insert(poly_row(f, ctx.monos, ctx.index))) picked.push_back(f);
        return picked;
    };

    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Rng sub = rng.child(0xeb + attempt);
        W_map.clear();
        if (b == 0) {
            W_map = complement_over_ideal(monomial_forms(amb, a), a);
            t_deg = a;
        } else if (b < 0) {
            std::vector<Poly> W_full;
            if (K.has_node) {
                W_full = forms_through_points(amb, {K.node}, a, -b, nullptr);
            } else {
                try {
                    W_full = forms_through(K.curve_sampler, a, -b, nullptr, sub);
                } catch (const InterpolationUnstable&) {
                    continue;
                }
            }
            W_map = complement_over_ideal(W_full, a);
            t_deg = a;
        } else {
            // residuation: smallest k with k*(current L) - b*C effective-looking
            int k = -1;
            for (int kk = 1; kk <= opt.residuation_k_max; ++kk) {
                DivisorClass R{kk * K.pol.a, kk * K.pol.b - b};
                if (L.square(R) >= -2 && L.dot(R, K.pol) > 0) {
                    k = kk;
                    break;
                }
            }
            if (k < 0)
                throw K3ConstructionFailed("embed: no residual class within the k cap");
            t_deg = a + k;

            // a degree-k form vanishing to order b along the curve, not in I_S
            std::vector<Poly> Fk;
            try {
                Fk = forms_through(K.curve_sampler, k, b, nullptr, sub);
            } catch (const InterpolationUnstable&) {
                continue;
            }
            if (Fk.empty()) continue;
            {
                DegreeContext ctx(*amb, k);
                Rref acc = ideal_span_in_degree(amb, K.surface.gens, k, ctx);
                residu_f = Poly(amb);
                bool found = false;
                for (int t = 0; t < 8 && !found; ++t) {
                    Poly f(amb);
                    for (const Poly& s : Fk) f = poly_add(f, poly_scale(s, sub.mod(p)));
                    if (f.is_zero()) continue;
                    if (acc.insert(poly_row(f, ctx.monos, ctx.index))) {
                        residu_f = f;
                        found = true;
                    }
                }
                if (!found) continue;
            }

            // linear forms through the curve enable the exact linkage route
            std::vector<Poly> curve_linears;
            for (const Poly& g : K.curve.gens)
                if (g.degree() == 1) curve_linears.push_back(g);

            std::vector<Poly> W_full;
            if (b == 1 && curve_linears.size() >= 2 && amb->nvars() <= 13) {
                // exact residual: saturate (I_S + f) by a generic linear form
                // through the curve, via the grevlex last-variable trick
                Poly fprime(amb);
                for (const Poly& g : curve_linears)
                    fprime = poly_add(fprime, poly_scale(g, sub.mod(p)));
                if (fprime.is_zero()) continue;
                auto [to_new, to_old] = change_to_last(amb, fprime);
                std::vector<Poly> J;
                for (const Poly& g : K.surface.gens) J.push_back(poly_compose(g, to_new, amb));
                J.push_back(poly_compose(residu_f, to_new, amb));
                Ideal Dp;
                try {
                    GBOptions gbopt;
                    gbopt.degree_cap = 14;
                    Dp = saturate_last_variable(Ideal(amb, J), gbopt);
                } catch (const GBCapExceeded&) {
                    continue;
                }
                std::vector<Poly> Dgens;
                for (const Poly& g : Dp.gb_data().basis)
                    Dgens.push_back(poly_compose(g, to_old, amb));
                DegreeContext ctx(*amb, t_deg);
                Rref acc(F, ctx.monos.size());
                std::vector<Poly> basis;
                for (const Poly& g : Dgens) {
                    int dg = g.degree();
                    if (dg > t_deg) continue;
                    for (const Monomial& m : monomials_of_degree(*amb, t_deg - dg)) {
                        Poly mult = poly_mul_term(g, m, 1);
                        if (acc.insert(poly_row(mult, ctx.monos, ctx.index)))
                            basis.push_back(std::move(mult));
                    }
                }
                W_full = std::move(basis);
            } else {
                // interpolation route: forms through the residual curve,
                // sampled on S cap {f} away from the curve
                Sampler res = K.sampler.restricted_by({residu_f}, 1);
                res.exclude = K.curve.gens;
                try {
                    W_full = forms_through(res, t_deg, 1, nullptr, sub);
                } catch (const InterpolationUnstable&) {
                    continue;
                } catch (const SampleBudgetExhausted&) {
                    continue;
                }
            }
            W_map = complement_over_ideal(W_full, t_deg);
        }

        if (static_cast<int64_t>(W_map.size()) != N) {
            if (attempt == kBudget - 1)
                throw K3ConstructionFailed(
                    "embed: linear system dimension " + std::to_string(W_map.size()) +
                    " != " + std::to_string(N) + " (construction bug or bad class)");
            continue;
        }

        // map to the new model
        int cap = opt.gen_cap;
        if (cap == 0) cap = g_new <= 3 ? 4 : g_new == 4 ? 3 : 2;
        RingPtr target = make_ring(p, static_cast<int>(N));
        Subscheme S2;
        try {
            S2 = image(K.sampler, W_map, 2, cap, sub);
        } catch (const InterpolationUnstable&) {
            continue;
        } catch (const SampleBudgetExhausted&) {
            continue;
        }
        Sampler s_new = K.sampler.then(W_map, target);

        K3Record out;
        out.surface = std::move(S2);
        out.sampler = std::move(s_new);
        out.p = p;
        out.trace = K.trace + "+embed(" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (K.has_node) {
            // node transported: only b <= 0 reaches here
            std::vector<uint32_t> v(W_map.size());
            bool nz = false;
            for (size_t i = 0; i < W_map.size(); ++i) {
                v[i] = poly_eval(W_map[i], K.node.x);
                nz |= v[i] != 0;
            }
            if (!nz) continue;  // node in the base locus: b<0 projections kill it
            out.has_node = true;
            out.node = normalize_point(F, std::move(v));
        } else {
            int64_t deg_curve = L.dot(D, DivisorClass{0, 1});
            TransportedCurve tc;
            try {
                tc = transport_curve(K.curve_sampler, W_map, target,
                                     static_cast<int>(deg_curve), opt.curve_cap, sub);
            } catch (const SampleBudgetExhausted&) {
                continue;
            } catch (const InterpolationUnstable&) {
                continue;
            }
            out.has_curve = true;
            out.curve = std::move(tc.curve);
            out.curve_sampler = std::move(tc.sampler);
        }
        out.lattice = L;  // the base lattice is unchanged by a re-embedding
        out.pol = D;
        (void)g_new;
        return out;
    }
    throw K3ConstructionFailed("embed: resample budget exhausted");
}

// ---------------------------------------------------------------- certify

Certificate certify(const K3Record& K, CertLevel level, Rng& rng) {
    Certificate cert;
    auto add = [&](const std::string& name, const std::string& status, const std::string& value,
                   const std::string& reason = "") {
        cert.fields.push_back(CertField{name, status, value, reason});
    };
    const Subscheme& S = K.surface;
    int g = K.genus();

    // generator degrees
    {
        std::string hist = degree_histogram(S);
        add("generator_histogram", "PASS", hist);
        if (g >= 5 && K.lattice) {
            auto [h0, nq] = expected_counts(g);
            (void)h0;
            int64_t quads = 0;
            for (const Poly& f : S.gens)
                if (f.degree() == 2) ++quads;
            bool only_quads = static_cast<int64_t>(S.gens.size()) == quads;
            add("quadric_count", quads == nq && only_quads ? "PASS" : "FAIL",
                std::to_string(quads) + "/" + std::to_string(nq));
        }
    }

    // membership of 200 fresh sampled points
    {
        Rng sub = rng.child(0x2e1);
        int good = 0, total = 0;
        try {
            auto pts = sample_points(K.sampler, 200, sub);
            for (const PointP& q : pts) {
                ++total;
                if (on_subscheme(S, q)) ++good;
            }
            add("membership", good == total && total == 200 ? "PASS" : "FAIL",
                std::to_string(good) + "/" + std::to_string(total));
        } catch (const SampleBudgetExhausted&) {
            add("membership", "FAIL", std::to_string(good) + "/" + std::to_string(total),
                "sampling budget exhausted");
        }
    }

    // smoothness sample
    {
        Rng sub = rng.child(0x2e2);
        try {
            auto pts = sample_points(K.sampler, 30, sub);
            int sing = 0;
            bool node_seen_smooth = false;
            for (const PointP& q : pts) {
                bool smooth = is_smooth_at(S, q);
                if (!smooth) {
                    if (!(K.has_node && q.x == K.node.x)) ++sing;
                }
                (void)node_seen_smooth;
            }
            if (K.has_node) {
                bool node_sing = on_subscheme(S, K.node) && !is_smooth_at(S, K.node);
                add("smoothness_sample", sing == 0 && node_sing ? "PASS" : "FAIL",
                    "singular_off_node=" + std::to_string(sing) +
                        " node_singular=" + std::to_string(node_sing));
            } else {
                add("smoothness_sample", sing == 0 ? "PASS" : "FAIL",
                    "singular=" + std::to_string(sing) + "/30");
            }
        } catch (const SampleBudgetExhausted&) {
            add("smoothness_sample", "FAIL", "", "sampling budget exhausted");
        }
    }

    // lattice report on (base lattice, polarization class)
    if (K.lattice) {
        const LatticeK3& L = *K.lattice;
        add("lattice_square", "PASS", std::to_string(L.square(K.pol)));
        NLTarget t = nl_target_genus(L, K.pol);
        add("lattice_genus", t.genus == g ? "PASS" : "FAIL", std::to_string(t.genus));
        add("lattice_primitive", "PASS", t.primitive ? "true" : "false");
        BNReport bn = brill_noether_general(L, K.pol);
        std::string wit;
        if (!bn.general)
            wit = "h0(M)*h0(N) = " + std::to_string(bn.h0_M) + "*" + std::to_string(bn.h0_N) +
                  " >= " + std::to_string(bn.h0_D) + " at M=(" + std::to_string(bn.M.a) + "," +
                  std::to_string(bn.M.b) + ")";
        else
            wit = "max product " + std::to_string(bn.best_product) + " < " +
                  std::to_string(bn.h0_D);
        add("bn_general", "PASS", bn.general ? "true" : "false", wit + "; heuristic RR estimates");
    } else {
        add("lattice_square", "SKIPPED", "", "no rank-2 marking");
    }

    if (level == CertLevel::Fast) {
        add("hilbert", "SKIPPED", "", "fast level");
        return cert;
    }

    // full: Hilbert invariants
    {
        try {
            HilbertSummary h = hilbert(Ideal(S.ring, S.gens));
            bool ok = h.proj_dim == 2 && h.degree == 2 * g - 2 && h.sectional_genus() == g;
            add("hilbert",
                ok ? "PASS" : "FAIL",
                "dim=" + std::to_string(h.proj_dim) + " deg=" + std::to_string(h.degree) +
                    " sectional_genus=" + std::to_string(h.sectional_genus()) +
                    " P(t)=" + h.hp_string());
        } catch (const GBCapExceeded& e) {
            add("hilbert", "SKIPPED", "", e.what());
        } catch (const std::exception& e) {
            add("hilbert", "FAIL", "", e.what());
        }
    }

    // curve containment and adjunction
    if (K.has_curve) {
        Rng sub = rng.child(0x2e3);
        int good = 0, total = 0;
        try {
            auto pts = sample_points(K.curve_sampler, 50, sub);
            for (const PointP& q : pts) {
                ++total;
                if (on_subscheme(S, q)) ++good;
            }
        } catch (const SampleBudgetExhausted&) {
        }
        add("curve_containment", good == total && total > 0 ? "PASS" : "FAIL",
            std::to_string(good) + "/" + std::to_string(total));

        try {
            HilbertSummary hc = hilbert(Ideal(K.curve.ring, K.curve.gens));
            int64_t pa = hc.curve_genus();
            int64_t c2 = K.lattice ? K.lattice->n : 0;
            int64_t dexp = K.lattice ? K.lattice->dot(K.pol, DivisorClass{0, 1}) : -1;
            bool ok = K.lattice && c2 == 2 * pa - 2 && hc.proj_dim == 1 && hc.degree == dexp;
            add("adjunction", ok ? "PASS" : "FAIL",
                "C^2=" + std::to_string(c2) + " 2p_a-2=" + std::to_string(2 * pa - 2) +
                    " deg=" + std::to_string(hc.degree) + "/" + std::to_string(dexp));
        } catch (const GBCapExceeded& e) {
            add("adjunction", "SKIPPED", "", e.what());
        }
    } else if (K.has_node) {
        bool node_on = on_subscheme(S, K.node);
        add("curve_containment", node_on ? "PASS" : "FAIL", "node on surface");
        // exceptional class: n = -2 by definition, adjunction is trivial
        add("adjunction", "PASS", "exceptional class, C^2=-2");
    } else {
        add("curve_containment", "SKIPPED", "", "no marked curve");
    }
    return cert;
}

}  // namespace k3lat
