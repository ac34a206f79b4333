#include "k3lat/solve0.hpp"

#include <algorithm>

#include "k3lat/linalg.hpp"
#include "k3lat/univar.hpp"

namespace k3lat {

namespace {

/// Enumerate the standard monomials of a zero-dimensional initial ideal.
/// Returns false when the count exceeds the cap (not finite or too big).
bool standard_monomials(const PolyRing& R, const std::vector<Monomial>& leads, int cap,
                        std::vector<Monomial>& out) {
    // finiteness: every variable needs a pure power among the leads
    for (int i = 0; i < R.nvars(); ++i) {
        bool found = false;
        for (const Monomial& l : leads) {
            if (!l.e[i]) continue;
            bool pure = true;
            for (int j = 0; j < R.nvars(); ++j)
                if (j != i && l.e[j]) {
                    pure = false;
                    break;
                }
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    auto reducible = [&](const Monomial& m) {
        for (const Monomial& l : leads)
            if (l.deg <= m.deg && mono_divides(l, m)) return true;
        return false;
    };
    // BFS from 1
    out.clear();
    out.push_back(Monomial::one());
    for (size_t k = 0; k < out.size(); ++k) {
        for (int i = 0; i < R.nvars(); ++i) {
            Monomial m = out[k];
            m.e[i] += 1;
            m.deg += 1;
            if (reducible(m)) continue;
            bool seen = false;
            for (const Monomial& s : out)
                if (s == m) {
                    seen = true;
                    break;
                }
            if (!seen) {
                out.push_back(m);
                if (static_cast<int>(out.size()) > cap) return false;
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return R.cmp(a, b) < 0; });
    return true;
}

std::vector<std::vector<uint32_t>> solve_rec(const RingPtr& ring, const std::vector<Poly>& gens,
                                             Rng& rng, const Solve0Options& opt, int depth) {
    const PolyRing& R = *ring;
    const FieldSpec& F = R.field();
    int n = R.nvars();

    GBOptions gbopt;
    gbopt.degree_cap = opt.gb_degree_cap;
    GroebnerData data = buchberger(R, gens, gbopt);
    std::vector<Poly> basis;
    for (Poly& g : data.basis) basis.emplace_back(ring, std::move(g.terms_mut()), true);
    // 1 in ideal: no solutions
    for (const Poly& g : basis)
        if (!g.is_zero() && g.lead().m.is_one()) return {};

    std::vector<Monomial> B;
    if (!standard_monomials(R, data.initial, opt.max_basis, B)) throw Solve0NotFinite();
    size_t N = B.size();
    std::vector<int> index_of(N);
    auto find_index = [&](const Monomial& m) -> int {
        for (size_t i = 0; i < N; ++i)
            if (B[i] == m) return static_cast<int>(i);
        return -1;
    };

    auto nf_coords = [&](const Poly& f) {
        std::vector<uint32_t> v(N, 0);
        Poly nf = normal_form(f, basis);
        for (const Term& t : nf.terms()) {
            int idx = find_index(t.m);
            if (idx < 0) throw std::runtime_error("solve_zero_dim: NF left the quotient basis");
            v[idx] = t.c;
        }
        return v;
    };

    std::vector<std::vector<uint32_t>> points;
    for (int attempt = 0; attempt < opt.eigen_retries; ++attempt) {
        // random separating linear form
        std::vector<uint32_t> lc(n);
        for (int i = 0; i < n; ++i) lc[i] = rng.mod(F.p);
        std::vector<Term> lt;
        for (int i = 0; i < n; ++i)
            if (lc[i]) lt.push_back(Term{Monomial::var(i), lc[i]});
        if (lt.empty()) continue;
        Poly ell(ring, std::move(lt));

        // multiplication matrix on the quotient basis
        MatF M(F, N, N);
        for (size_t b = 0; b < N; ++b) {
            std::vector<uint32_t> col = nf_coords(poly_mul_term(ell, B[b], 1));
            for (size_t r = 0; r < N; ++r) M.at(r, b) = col[r];
        }
        std::vector<uint32_t> cp = M.charpoly();
        UniPoly cpoly;
        cpoly.c = cp;
        cpoly.trim();
        Rng roots_rng = rng.child(0xe1 + attempt);
        std::vector<uint32_t> lambdas = univariate_roots(F, cpoly, roots_rng);

        // NF(x_i) coordinates for reading off point coordinates
        std::vector<std::vector<uint32_t>> xcoords(n);
        for (int i = 0; i < n; ++i) xcoords[i] = nf_coords(poly_var(ring, i));
        int one_idx = find_index(Monomial::one());

        points.clear();
        bool clustered = false;
        for (uint32_t lam : lambdas) {
            // left kernel of (M - lam I): right kernel of the transpose
            MatF T(F, N, N);
            for (size_t r = 0; r < N; ++r)
                for (size_t c = 0; c < N; ++c)
                    T.at(r, c) = r == c ? F.sub(M.at(c, r), lam) : M.at(c, r);
            auto ker = T.kernel();
            if (ker.size() != 1) {
                clustered = true;
                break;
            }
            const std::vector<uint32_t>& v = ker[0];
            if (v[one_idx] == 0) {
                clustered = true;
                break;
            }
            uint32_t s = F.inv(v[one_idx]);
            std::vector<uint32_t> pt(n);
            for (int i = 0; i < n; ++i) {
                uint64_t acc = 0;
                for (size_t k = 0; k < N; ++k)
                    if (xcoords[i][k] && v[k])
                        acc += static_cast<uint64_t>(xcoords[i][k]) * v[k] % F.p;
                pt[i] = F.mul(static_cast<uint32_t>(acc % F.p), s);
            }
            // verify on the input system
            bool good = true;
            for (const Poly& g : gens)
                if (poly_eval(g, pt) != 0) {
                    good = false;
                    break;
                }
            if (good) points.push_back(std::move(pt));
        }
        if (!clustered) {
            std::sort(points.begin(), points.end());
            points.erase(std::unique(points.begin(), points.end()), points.end());
            return points;
        }
        if (attempt == opt.eigen_retries - 1 && depth < opt.recursion_depth) {
            // split the cluster: fix ell = lambda and recurse
            std::vector<std::vector<uint32_t>> all;
            for (uint32_t lam : lambdas) {
                std::vector<Poly> sub = gens;
                sub.push_back(poly_sub(ell, poly_const(ring, lam)));
                auto part = solve_rec(ring, sub, rng, opt, depth + 1);
                all.insert(all.end(), part.begin(), part.end());
            }
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            return all;
        }
    }
    return points;
}

}  // namespace

std::vector<std::vector<uint32_t>> solve_zero_dim(const RingPtr& ring,
                                                  const std::vector<Poly>& gens, Rng& rng,
                                                  const Solve0Options& opt) {
    return solve_rec(ring, gens, rng, opt, 0);
}

}  // namespace k3lat
