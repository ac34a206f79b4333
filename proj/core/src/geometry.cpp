#include <algorithm>

#include "k3lat/geometry.hpp"

namespace k3lat {

namespace {

/// Evaluate every monomial of the given degree at a point, in the order
/// produced by monomials_of_degree.
std::vector<uint32_t> eval_monomials(const PolyRing& R, const std::vector<Monomial>& monos,
                                     const std::vector<uint32_t>& pt, int degree) {
    const FieldSpec& F = R.field();
    int n = R.nvars();
    std::vector<std::vector<uint32_t>> pw(n);
    for (int i = 0; i < n; ++i) {
        pw[i].resize(degree + 1);
        pw[i][0] = 1;
        for (int k = 1; k <= degree; ++k) pw[i][k] = F.mul(pw[i][k - 1], pt[i]);
    }
    std::vector<uint32_t> out(monos.size());
    for (size_t j = 0; j < monos.size(); ++j) {
        uint64_t v = 1;
        for (int i = 0; i < n; ++i)
            if (monos[j].e[i]) v = v * pw[i][monos[j].e[i]] % F.p;
        out[j] = static_cast<uint32_t>(v);
    }
    return out;
}

/// d/dx_i of monomial evaluation at a point.
uint32_t eval_monomial_partial(const FieldSpec& F, const Monomial& m, int i,
                               const std::vector<std::vector<uint32_t>>& pw, int n) {
    if (!m.e[i]) return 0;
    uint64_t v = m.e[i] % F.p;
    for (int k = 0; k < n; ++k) {
        int e = m.e[k] - (k == i ? 1 : 0);
        if (e) v = v * pw[k][e] % F.p;
    }
    return static_cast<uint32_t>(v);
}

}  // namespace

std::vector<Poly> forms_through_points(const RingPtr& ring, const std::vector<PointP>& pts,
                                       int degree, int mult, const Poly* relative) {
    const PolyRing& R = *ring;
    const FieldSpec& F = R.field();
    int n = R.nvars();
    std::vector<Monomial> monos = monomials_of_degree(R, degree);
    size_t W = monos.size();
    size_t lambda_cols = (mult == 2 && relative) ? pts.size() : 0;

    MatF M(F, 0, 0);
    std::vector<std::vector<uint32_t>> grad_q;
    if (relative) {
        grad_q.reserve(pts.size());
        for (const PointP& p : pts) grad_q.push_back(poly_gradient_eval(*relative, p.x));
    }
    for (size_t pi = 0; pi < pts.size(); ++pi) {
        const PointP& p = pts[pi];
        std::vector<std::vector<uint32_t>> pw(n);
        for (int i = 0; i < n; ++i) {
            pw[i].resize(degree + 1);
            pw[i][0] = 1;
            for (int k = 1; k <= degree; ++k) pw[i][k] = F.mul(pw[i][k - 1], p.x[i]);
        }
        // value row
        {
            std::vector<uint32_t> row(W + lambda_cols, 0);
            for (size_t j = 0; j < W; ++j) {
                uint64_t v = 1;
                for (int i = 0; i < n; ++i)
                    if (monos[j].e[i]) v = v * pw[i][monos[j].e[i]] % F.p;
                row[j] = static_cast<uint32_t>(v);
            }
            M.append_row(row);
        }
        if (mult == 2) {
            for (int i = 0; i < n; ++i) {
                std::vector<uint32_t> row(W + lambda_cols, 0);
                for (size_t j = 0; j < W; ++j)
                    row[j] = eval_monomial_partial(F, monos[j], i, pw, n);
                if (relative) row[W + pi] = F.neg(grad_q[pi][i]);
                M.append_row(row);
            }
        }
    }
    auto ker = M.kernel();
    // project to the coefficient block and row-reduce for a clean basis
    MatF basis_rows(F, 0, 0);
    std::vector<Poly> out;
    std::vector<int> pivot_used(W, 0);
    for (const auto& v : ker) {
        std::vector<uint32_t> row(v.begin(), v.begin() + W);
        basis_rows.append_row(row);
    }
    basis_rows.rref();
    for (size_t r = 0; r < basis_rows.rows(); ++r) {
        std::vector<Term> terms;
        for (size_t j = 0; j < W; ++j)
            if (basis_rows.at(r, j)) terms.push_back(Term{monos[j], basis_rows.at(r, j)});
        if (!terms.empty()) out.emplace_back(ring, std::move(terms));
    }
    return out;
}

std::vector<Poly> forms_through(const Sampler& s, int degree, int mult, const Poly* relative,
                                Rng& rng) {
    const RingPtr& ring = s.target_ring();
    const PolyRing& R = *ring;
    const FieldSpec& F = R.field();
    int n = R.nvars();
    uint64_t W = count_monomials(n, degree);
    size_t conds = mult == 1 ? 1 : static_cast<size_t>(n);
    size_t npts = static_cast<size_t>((W * 5) / (4 * conds)) + 8;

    std::vector<PointP> pts = sample_points(s, npts, rng);
    std::vector<Poly> basis = forms_through_points(ring, pts, degree, mult, relative);
    if (basis.empty()) return basis;

    // verify on a disjoint resample
    size_t fresh_n = std::max<size_t>(24, npts / 5);
    std::vector<PointP> fresh = sample_points(s, pts.size() + fresh_n, rng);
    size_t checked = 0;
    for (const PointP& q : fresh) {
        bool is_old = false;
        for (const PointP& p : pts)
            if (p.x == q.x) {
                is_old = true;
                break;
            }
        if (is_old) continue;
        ++checked;
        for (const Poly& f : basis) {
            if (poly_eval(f, q.x) != 0)
                throw InterpolationUnstable("forms_through: basis fails on resample");
            if (mult == 2) {
                std::vector<uint32_t> gf = poly_gradient_eval(f, q.x);
                if (!relative) {
                    for (int i = 0; i < n; ++i)
                        if (gf[i] != 0)
                            throw InterpolationUnstable("forms_through: gradient fails on resample");
                } else {
                    std::vector<uint32_t> gq = poly_gradient_eval(*relative, q.x);
                    // gf must be proportional to gq
                    int k0 = -1;
                    for (int i = 0; i < n; ++i)
                        if (gq[i]) {
                            k0 = i;
                            break;
                        }
                    if (k0 < 0) continue;
                    uint32_t lam = F.div(gf[k0], gq[k0]);
                    for (int i = 0; i < n; ++i)
                        if (gf[i] != F.mul(lam, gq[i]))
                            throw InterpolationUnstable(
                                "forms_through: relative double vanishing fails on resample");
                }
            }
        }
        if (checked >= fresh_n) break;
    }
    return basis;
}

Subscheme image(const Sampler& source, const std::vector<Poly>& forms, int image_dim,
                int degree_cap, Rng& rng) {
    if (forms.empty()) throw std::invalid_argument("image: no defining forms");
    const FieldSpec& F = source.src_ring->field();
    RingPtr target = make_ring(F.p, static_cast<int>(forms.size()), Order::GrevLex);
    Sampler pushed = source.then(forms, target);

    uint64_t Wmax = count_monomials(target->nvars(), degree_cap);
    size_t npts = static_cast<size_t>((Wmax * 5) / 4) + 8;
    std::vector<PointP> pts = sample_points(pushed, npts, rng);

    std::vector<Poly> gens;
    for (int d = 1; d <= degree_cap; ++d) {
        std::vector<Monomial> monos = monomials_of_degree(*target, d);
        size_t W = monos.size();
        std::unordered_map<Monomial, int, MonomialHash> index;
        index.reserve(W * 2);
        for (size_t j = 0; j < W; ++j) index[monos[j]] = static_cast<int>(j);
        MatF M(F, 0, 0);
        for (const PointP& p : pts) M.append_row(eval_monomials(*target, monos, p.x, d));
        auto ker = M.kernel();
        if (ker.empty()) continue;
        // multiples of lower-degree generators span the known part
        Rref known(F, W);
        for (const Poly& g : gens) {
            int dg = g.degree();
            if (dg >= d) continue;
            for (const Monomial& m : monomials_of_degree(*target, d - dg)) {
                std::vector<uint32_t> row(W, 0);
                for (const Term& t : g.terms()) {
                    int idx = index.at(mono_mul(t.m, m));
                    row[idx] = F.add(row[idx], t.c);
                }
                known.insert(std::move(row));
            }
        }
        for (const auto& v : ker) {
            if (known.insert(v)) {
                std::vector<Term> terms;
                for (size_t j = 0; j < W; ++j)
                    if (v[j]) terms.push_back(Term{monos[j], v[j]});
                gens.emplace_back(target, std::move(terms));
            }
        }
    }

    // verification on fresh pushed points
    std::vector<PointP> fresh = sample_points(pushed, pts.size() + 200, rng);
    size_t checked = 0;
    for (const PointP& q : fresh) {
        bool is_old = false;
        for (const PointP& p : pts)
            if (p.x == q.x) {
                is_old = true;
                break;
            }
        if (is_old) continue;
        ++checked;
        for (const Poly& g : gens)
            if (poly_eval(g, q.x) != 0)
                throw InterpolationUnstable("image: generator fails on fresh points");
        if (checked >= 200) break;
    }

    Subscheme out;
    out.ring = target;
    out.gens = std::move(gens);
    out.dim = image_dim;
    return out;
}

std::vector<Poly> minimal_generators(const RingPtr& ring, const std::vector<Poly>& raw,
                                     int maxdeg) {
    const FieldSpec& F = ring->field();
    std::vector<Poly> gens;
    for (int d = 1; d <= maxdeg; ++d) {
        std::vector<Monomial> monos = monomials_of_degree(*ring, d);
        std::unordered_map<Monomial, int, MonomialHash> index;
        index.reserve(monos.size() * 2);
        for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
        Rref acc(F, monos.size());
        for (const Poly& g : gens) {
            int dg = g.degree();
            if (dg >= d) continue;
            for (const Monomial& m : monomials_of_degree(*ring, d - dg)) {
                std::vector<uint32_t> row(monos.size(), 0);
                for (const Term& t : g.terms()) {
                    int idx = index.at(mono_mul(t.m, m));
                    row[idx] = F.add(row[idx], t.c);
                }
                acc.insert(std::move(row));
            }
        }
        for (const Poly& g : raw) {
            if (g.is_zero() || g.degree() != d || !g.homogeneous()) continue;
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : g.terms()) {
                int idx = index.at(t.m);
                row[idx] = F.add(row[idx], t.c);
            }
            if (acc.insert(std::move(row))) gens.push_back(g);
        }
    }
    return gens;
}

Ideal image_exact(const RingPtr& src_ring, const std::vector<Poly>& src_gens,
                  const std::vector<Poly>& forms, int degree_cap) {
    int k = src_ring->nvars();
    int t = static_cast<int>(forms.size());
    if (k + t > 12)
        throw std::invalid_argument("image_exact: elimination capped at 12 total variables");
    RingPtr E = make_ring(src_ring->p(), k + t, Order::Elim, k);
    std::vector<int> src_map(k);
    for (int i = 0; i < k; ++i) src_map[i] = i;
    std::vector<Poly> gens;
    for (const Poly& g : src_gens) gens.push_back(poly_rename(g, E, src_map));
    for (int j = 0; j < t; ++j) {
        Poly zj = poly_var(E, k + j);
        Poly fj = poly_rename(forms[j], E, src_map);
        gens.push_back(poly_sub(zj, fj));
    }
    GBOptions opt;
    opt.degree_cap = std::max(24, degree_cap * 4);
    Ideal eliminated = elimination(Ideal(E, gens), k, opt);
    // rename to a fresh target ring
    RingPtr target = make_ring(src_ring->p(), t, Order::GrevLex);
    std::vector<int> tmap(k + t, 0);
    for (int j = 0; j < t; ++j) tmap[k + j] = j;
    std::vector<Poly> out;
    for (const Poly& g : eliminated.gens()) out.push_back(poly_rename(g, target, tmap));
    return Ideal(target, std::move(out));
}

Subscheme project(const Sampler& source, const std::vector<Poly>& center_forms, int image_dim,
                  int degree_cap, Rng& rng) {
    for (const Poly& f : center_forms)
        if (f.degree() != 1) throw std::invalid_argument("project: center forms must be linear");
    return image(source, center_forms, image_dim, degree_cap, rng);
}

MatF jacobian_at(const Subscheme& V, const PointP& q) {
    const FieldSpec& F = V.ring->field();
    MatF J(F, V.gens.size(), V.ring->nvars());
    for (size_t r = 0; r < V.gens.size(); ++r) {
        std::vector<uint32_t> g = poly_gradient_eval(V.gens[r], q.x);
        for (int c = 0; c < V.ring->nvars(); ++c) J.at(r, c) = g[c];
    }
    return J;
}

Subscheme tangent_space(const Subscheme& V, const PointP& q) {
    if (!on_subscheme(V, q)) throw std::invalid_argument("tangent_space: point not on subscheme");
    MatF J = jacobian_at(V, q);
    MatF copy = J;
    std::vector<int> pivots = copy.rref();
    std::vector<Poly> lin;
    for (size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Term> terms;
        for (int c = 0; c < V.ring->nvars(); ++c)
            if (copy.at(r, c)) terms.push_back(Term{Monomial::var(c), copy.at(r, c)});
        lin.emplace_back(V.ring, std::move(terms));
    }
    Subscheme T;
    T.ring = V.ring;
    T.gens = std::move(lin);
    T.dim = V.ring->nvars() - 1 - static_cast<int>(pivots.size());
    return T;
}

bool is_smooth_at(const Subscheme& V, const PointP& q) {
    if (V.dim < 0) throw std::invalid_argument("is_smooth_at: dimension unknown");
    MatF J = jacobian_at(V, q);
    size_t codim = V.ring->nvars() - 1 - V.dim;
    return J.rank() == codim;
}

SingularReport singular_sample(const Subscheme& V, const Sampler& s, int trials, Rng& rng) {
    SingularReport rep;
    std::vector<PointP> pts = sample_points(s, trials, rng);
    rep.trials = static_cast<int>(pts.size());
    for (const PointP& q : pts) {
        if (is_smooth_at(V, q))
            ++rep.smooth;
        else
            rep.singular_points.push_back(q);
    }
    return rep;
}

NodeData tangent_cone_at_node(const Subscheme& V, const PointP& p) {
    const RingPtr& ring = V.ring;
    const FieldSpec& F = ring->field();
    int n = ring->nvars();
    // chart: first nonzero coordinate of p (which is 1 after normalization)
    int chart = 0;
    while (chart < n && p.x[chart] == 0) ++chart;

    // affine coordinates y_i (i != chart) centered at p
    RingPtr A = make_ring(F.p, n - 1, Order::GrevLex);
    std::vector<Poly> args(n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (i == chart) {
            args[i] = poly_const(A, 1);
        } else {
            args[i] = poly_add(poly_const(A, p.x[i]), poly_var(A, k));
            ++k;
        }
    }
    // linear and quadratic parts of every generator at the origin
    std::vector<std::vector<uint32_t>> lin;   // per gen
    std::vector<Poly> quad;                   // per gen, homogeneous degree 2
    for (const Poly& g : V.gens) {
        Poly h = poly_compose(g, args, A);
        std::vector<uint32_t> lrow(n - 1, 0);
        std::vector<Term> q2;
        for (const Term& t : h.terms()) {
            if (t.m.deg == 0) throw std::invalid_argument("tangent_cone_at_node: point not on V");
            if (t.m.deg == 1) {
                for (int i = 0; i < n - 1; ++i)
                    if (t.m.e[i]) lrow[i] = t.c;
            } else if (t.m.deg == 2) {
                q2.push_back(t);
            }
        }
        lin.push_back(std::move(lrow));
        quad.emplace_back(A, std::move(q2), false);
    }
    // tangent space: kernel of the linear-part matrix
    MatF L(F, lin.size(), n - 1);
    for (size_t r = 0; r < lin.size(); ++r)
        for (int c = 0; c < n - 1; ++c) L.at(r, c) = lin[r][c];
    auto T = L.kernel();

    // combinations of generators with vanishing linear part
    MatF Lt(F, n - 1, lin.size());
    for (size_t r = 0; r < lin.size(); ++r)
        for (int c = 0; c < n - 1; ++c) Lt.at(c, r) = lin[r][c];
    auto combos = Lt.kernel();

    // restrict each combined quadratic part to the tangent space and find a
    // nonzero one; its rank is the Hessian rank at the node
    NodeData nd;
    nd.chart_var = chart;
    nd.tangent_basis = T;
    size_t tdim = T.size();
    int best_rank = 0;
    bool qform_set = false;
    for (const auto& c : combos) {
        // q(y) = sum_g c_g quad_g(y), restricted: y = sum t_k T[k]
        MatF Q(F, tdim, tdim);
        bool nonzero = false;
        for (size_t g = 0; g < quad.size(); ++g) {
            if (!c[g]) continue;
            for (const Term& t : quad[g].terms()) {
                // t.m = y_a y_b (possibly a == b)
                int a = -1, b = -1;
                for (int i = 0; i < n - 1; ++i) {
                    if (t.m.e[i] == 2) {
                        a = b = i;
                        break;
                    }
                    if (t.m.e[i] == 1) {
                        if (a < 0)
                            a = i;
                        else
                            b = i;
                    }
                }
                uint32_t coeff = F.mul(c[g], t.c);
                for (size_t u = 0; u < tdim; ++u)
                    for (size_t v = 0; v < tdim; ++v) {
                        uint32_t add = F.mul(coeff, F.mul(T[u][a], T[v][b]));
                        if (a != b) add = F.add(add, F.mul(coeff, F.mul(T[u][b], T[v][a])));
                        else {
                            // symmetric matrix: y_a^2 contributes on both
                            add = F.add(add, F.mul(coeff, F.mul(T[u][a], T[v][a])));
                        }
                        if (add) {
                            Q.at(u, v) = F.add(Q.at(u, v), add);
                            nonzero = true;
                        }
                    }
            }
        }
        if (!nonzero) continue;
        int r = static_cast<int>(Q.rank());
        if (!qform_set || r > best_rank) {
            nd.qform = Q;
            qform_set = true;
        }
        best_rank = std::max(best_rank, r);
    }
    nd.hessian_rank = best_rank;
    return nd;
}

}  // namespace k3lat
