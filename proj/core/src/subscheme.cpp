#include <set>

#include "k3lat/geometry.hpp"

namespace k3lat {

PointP normalize_point(const FieldSpec& F, std::vector<uint32_t> coords) {
    size_t j = 0;
    while (j < coords.size() && coords[j] == 0) ++j;
    if (j == coords.size()) throw std::invalid_argument("normalize_point: zero vector");
    uint32_t s = F.inv(coords[j]);
    for (uint32_t& c : coords) c = F.mul(c, s);
    return PointP{std::move(coords)};
}

bool on_subscheme(const Subscheme& V, const PointP& pt) {
    for (const Poly& g : V.gens)
        if (poly_eval(g, pt.x) != 0) return false;
    return true;
}

Sampler Sampler::direct(RingPtr ring, std::vector<Poly> gens, int dim) {
    Sampler s;
    s.src_ring = ring;
    s.src_gens = std::move(gens);
    s.src_dim = dim;
    s.rings = {ring};
    return s;
}

Sampler Sampler::then(std::vector<Poly> forms, RingPtr next_ring) const {
    Sampler s = *this;
    // exclude/require only make sense on the final ring; push them back by
    // composing is not supported, callers set them on the final sampler
    s.exclude.clear();
    s.require.clear();
    s.steps.push_back(std::move(forms));
    s.rings.push_back(std::move(next_ring));
    return s;
}

Poly Sampler::pullback(const Poly& f) const {
    Poly cur = f;
    for (size_t i = steps.size(); i-- > 0;) {
        cur = poly_compose(cur, steps[i], rings[i]);
    }
    return cur;
}

Sampler Sampler::restricted_by(const std::vector<Poly>& target_forms, int dim_drop) const {
    Sampler s = *this;
    for (const Poly& f : target_forms) s.src_gens.push_back(pullback(f));
    s.src_dim -= dim_drop;
    return s;
}

namespace {

/// One random slice of the source: cut with src_dim random hyperplanes in
/// solved form, pass to an affine chart, and solve the 0-dimensional system.
std::vector<PointP> slice_source_once(const Sampler& s, Rng& rng) {
    const RingPtr& R = s.src_ring;
    const FieldSpec& F = R->field();
    int n = R->nvars();
    int m = s.src_dim;

    if (s.src_gens.empty() && m == n - 1) {
        // source is all of projective space
        std::vector<uint32_t> c(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            c[i] = rng.mod(F.p);
            nonzero |= c[i] != 0;
        }
        if (!nonzero) c[0] = 1;
        return {normalize_point(F, std::move(c))};
    }
    if (m < 0 || m > n - 1) throw std::invalid_argument("slice_source_once: bad dimension");

    // choose chart variable and pivot variables
    int chart = static_cast<int>(rng.below(n));
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (i != chart) rest.push_back(i);
    // pivots: first m of a random shuffle of rest
    for (size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.below((uint32_t)i)]);
    std::vector<int> pivots(rest.begin(), rest.begin() + m);
    std::vector<int> frees(rest.begin() + m, rest.end());
    int na = static_cast<int>(frees.size());

    RingPtr A = make_ring(F.p, std::max(na, 1), Order::GrevLex);
    // substitution arguments for every source variable
    std::vector<Poly> args(n);
    args[chart] = poly_const(A, 1);
    for (int k = 0; k < na; ++k) args[frees[k]] = poly_var(A, k);
    for (int j = 0; j < m; ++j) {
        // x_pivot = c0 + sum over free vars
        Poly lin = poly_const(A, rng.mod(F.p));
        for (int k = 0; k < na; ++k)
            lin = poly_add(lin, poly_scale(poly_var(A, k), rng.mod(F.p)));
        args[pivots[j]] = std::move(lin);
    }

    // base-locus avoidance: invert a random combination of the avoid forms
    bool use_avoid = !s.src_avoid.empty();
    RingPtr Asolve = use_avoid ? make_ring(F.p, std::max(na, 1) + 1, Order::GrevLex) : A;
    std::vector<Poly> affine;
    for (const Poly& g : s.src_gens) {
        Poly h = poly_compose(g, args, A);
        if (!h.is_zero()) affine.push_back(std::move(h));
    }
    if (use_avoid) {
        Poly combo(R);
        for (const Poly& g : s.src_avoid) combo = poly_add(combo, poly_scale(g, rng.mod(F.p)));
        Poly b = poly_compose(combo, args, A);
        // move the system into the ring with the inversion variable
        std::vector<int> vmap(std::max(na, 1));
        for (size_t i = 0; i < vmap.size(); ++i) vmap[i] = static_cast<int>(i);
        std::vector<Poly> lifted;
        for (const Poly& g : affine) lifted.push_back(poly_rename(g, Asolve, vmap));
        Poly b2 = poly_rename(b, Asolve, vmap);
        int tvar = std::max(na, 1);
        lifted.push_back(poly_sub(poly_mul(poly_var(Asolve, tvar), b2), poly_const(Asolve, 1)));
        affine = std::move(lifted);
    }

    std::vector<std::vector<uint32_t>> sols;
    try {
        Rng sub = rng.child(0x51);
        sols = solve_zero_dim(Asolve, affine, sub);
    } catch (const Solve0NotFinite&) {
        return {};
    } catch (const GBCapExceeded&) {
        return {};
    }

    std::vector<PointP> out;
    for (const auto& sol : sols) {
        std::vector<uint32_t> full(n, 0);
        full[chart] = 1;
        for (int k = 0; k < na; ++k) full[frees[k]] = sol[k];
        std::vector<uint32_t> spanpt(std::max(na, 1));
        for (int k = 0; k < na; ++k) spanpt[k] = sol[k];
        for (int j = 0; j < m; ++j) full[pivots[j]] = poly_eval(args[pivots[j]], spanpt);
        bool ok = true;
        for (const Poly& g : s.src_gens)
            if (poly_eval(g, full) != 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(normalize_point(F, std::move(full)));
    }
    return out;
}

}  // namespace

std::vector<PointP> sample_points(const Sampler& s, size_t count, Rng& rng) {
    const FieldSpec& F = s.src_ring->field();
    std::set<std::vector<uint32_t>> seen;
    std::vector<PointP> out;
    size_t max_slices = 64 + 12 * count;
    for (size_t slice = 0; slice < max_slices && out.size() < count; ++slice) {
        std::vector<PointP> src_pts = slice_source_once(s, rng);
        for (PointP& sp : src_pts) {
            // push through the chain
            std::vector<uint32_t> cur = sp.x;
            bool alive = true;
            for (size_t step = 0; step < s.steps.size() && alive; ++step) {
                std::vector<uint32_t> nxt(s.steps[step].size());
                bool nonzero = false;
                for (size_t j = 0; j < s.steps[step].size(); ++j) {
                    nxt[j] = poly_eval(s.steps[step][j], cur);
                    nonzero |= nxt[j] != 0;
                }
                if (!nonzero) {
                    alive = false;  // base locus of the step
                    break;
                }
                cur = std::move(nxt);
            }
            if (!alive) continue;
            PointP tp = normalize_point(F, std::move(cur));
            if (!s.exclude.empty()) {
                bool all_vanish = true;
                for (const Poly& g : s.exclude)
                    if (poly_eval(g, tp.x) != 0) {
                        all_vanish = false;
                        break;
                    }
                if (all_vanish) continue;
            }
            bool ok = true;
            for (const Poly& g : s.require)
                if (poly_eval(g, tp.x) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            if (seen.insert(tp.x).second) {
                out.push_back(std::move(tp));
                if (out.size() >= count) break;
            }
        }
    }
    if (out.size() < count)
        throw SampleBudgetExhausted("sample_points: got " + std::to_string(out.size()) + " of " +
                                    std::to_string(count) + " requested points");
    return out;
}

PointP random_point(const Subscheme& V, Rng& rng) {
    int dim = V.dim;
    if (dim < 0) {
        HilbertSummary h = hilbert(Ideal(V.ring, V.gens));
        dim = h.proj_dim;
    }
    Sampler s = Sampler::direct(V.ring, V.gens, dim);
    return sample_points(s, 1, rng).front();
}

}  // namespace k3lat
