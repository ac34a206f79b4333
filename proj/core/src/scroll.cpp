#include "k3lat/models.hpp"

namespace k3lat {

namespace {

/// Cox weight of a bigraded monomial: (st_deg - u_deg, fiber+vertex deg).
/// Ambient coordinate functions are exactly the weight (0,1) monomials.
std::pair<int, int> cox_weight(const ScrollRecord& X, const Monomial& m) {
    int st = m.e[0] + m.e[1];
    int u = 0, w = 0;
    for (int i = 0; i < X.n_fiber; ++i) u += m.e[2 + i];
    for (int i = 0; i < X.n_vertex; ++i) w += m.e[2 + X.n_fiber + i];
    return {st - u, u + w};
}

}  // namespace

ScrollRecord segre_scroll(ScrollKind kind, uint32_t p) {
    ScrollRecord X;
    X.kind = kind;
    switch (kind) {
        case ScrollKind::P1xP2_in_P5: X.n_fiber = 3; X.n_vertex = 0; break;
        case ScrollKind::cone_P1xP2_in_P6: X.n_fiber = 3; X.n_vertex = 1; break;
        case ScrollKind::cone_P1xP2_in_P7: X.n_fiber = 3; X.n_vertex = 2; break;
        case ScrollKind::rank4_quadric_in_P6: X.n_fiber = 2; X.n_vertex = 3; break;
    }
    X.bigraded = make_ring(p, 2 + X.n_fiber + X.n_vertex);
    int namb = 2 * X.n_fiber + X.n_vertex;
    RingPtr amb = make_ring(p, namb);

    // ambient coordinates: (s u_i, t u_i) pairs then vertex variables
    for (int i = 0; i < X.n_fiber; ++i) {
        X.coord_map.push_back(poly_mul(poly_var(X.bigraded, 0), poly_var(X.bigraded, 2 + i)));
        X.coord_map.push_back(poly_mul(poly_var(X.bigraded, 1), poly_var(X.bigraded, 2 + i)));
    }
    for (int i = 0; i < X.n_vertex; ++i)
        X.coord_map.push_back(poly_var(X.bigraded, 2 + X.n_fiber + i));

    // scroll ideal: 2x2 minors of [x_{2i} ; x_{2i+1}] across fiber columns
    std::vector<Poly> gens;
    for (int i = 0; i < X.n_fiber; ++i)
        for (int j = i + 1; j < X.n_fiber; ++j)
            gens.push_back(poly_sub(poly_mul(poly_var(amb, 2 * i), poly_var(amb, 2 * j + 1)),
                                    poly_mul(poly_var(amb, 2 * i + 1), poly_var(amb, 2 * j))));
    int dim = 1 + (X.n_fiber - 1) + X.n_vertex;  // ruling + fiber + vertex
    X.variety = Subscheme{amb, gens, dim};
    X.sampler = Sampler::direct(amb, gens, dim);
    return X;
}

Poly random_bidegree_form(const ScrollRecord& X, int a, int b, Rng& rng) {
    const RingPtr& B = X.bigraded;
    uint32_t p = B->p();
    std::vector<Term> terms;
    // fiber+vertex monomials of degree b, st-part of degree a - b + |u|
    RingPtr fw = make_ring(p, X.n_fiber + X.n_vertex);
    for (const Monomial& fm : monomials_of_degree(*fw, b)) {
        int udeg = 0;
        for (int i = 0; i < X.n_fiber; ++i) udeg += fm.e[i];
        int st = a - b + udeg;
        if (st < 0) continue;
        for (int alpha = 0; alpha <= st; ++alpha) {
            Monomial m;
            m.e[0] = static_cast<uint8_t>(alpha);
            m.e[1] = static_cast<uint8_t>(st - alpha);
            for (int i = 0; i < X.n_fiber + X.n_vertex; ++i) m.e[2 + i] = fm.e[i];
            m.deg = static_cast<uint16_t>(st + b);
            uint32_t c = rng.mod(p);
            if (c) terms.push_back(Term{m, c});
        }
    }
    return Poly(B, std::move(terms));
}

Poly bigraded_to_ambient(const ScrollRecord& X, const Poly& f, const RingPtr& ambient) {
    std::vector<Term> out;
    for (const Term& t : f.terms()) {
        auto [q, m] = cox_weight(X, t.m);
        (void)m;
        if (q != 0) throw std::invalid_argument("bigraded_to_ambient: monomial not balanced");
        Monomial amb;
        int s_left = t.m.e[0];
        int total = 0;
        for (int i = 0; i < X.n_fiber; ++i) {
            for (int rep = 0; rep < t.m.e[2 + i]; ++rep) {
                int coord = s_left > 0 ? 2 * i : 2 * i + 1;
                if (s_left > 0) --s_left;
                amb.e[coord] += 1;
                ++total;
            }
        }
        for (int i = 0; i < X.n_vertex; ++i) {
            amb.e[2 * X.n_fiber + i] += t.m.e[2 + X.n_fiber + i];
            total += t.m.e[2 + X.n_fiber + i];
        }
        amb.deg = static_cast<uint16_t>(total);
        out.push_back(Term{amb, t.c});
    }
    return Poly(ambient, std::move(out));
}

std::vector<Poly> ambient_multiples(const ScrollRecord& X, const Poly& f,
                                    int max_ambient_degree, const RingPtr& ambient) {
    std::vector<Poly> out;
    if (f.is_zero()) return out;
    auto w0 = cox_weight(X, f.terms().front().m);
    for (const Term& t : f.terms())
        if (cox_weight(X, t.m) != w0)
            throw std::invalid_argument("ambient_multiples: form is not Cox-homogeneous");
    auto [q0, m0] = w0;
    const RingPtr& B = X.bigraded;
    for (int e = 0; m0 + e <= max_ambient_degree; ++e) {
        RingPtr fw = make_ring(B->p(), X.n_fiber + X.n_vertex);
        for (const Monomial& fm : monomials_of_degree(*fw, e)) {
            int udeg = 0;
            for (int i = 0; i < X.n_fiber; ++i) udeg += fm.e[i];
            int st = -q0 + udeg;
            if (st < 0) continue;
            for (int alpha = 0; alpha <= st; ++alpha) {
                Monomial m;
                m.e[0] = static_cast<uint8_t>(alpha);
                m.e[1] = static_cast<uint8_t>(st - alpha);
                for (int i = 0; i < X.n_fiber + X.n_vertex; ++i) m.e[2 + i] = fm.e[i];
                m.deg = static_cast<uint16_t>(st + e);
                out.push_back(bigraded_to_ambient(X, poly_mul_term(f, m, 1), ambient));
            }
        }
    }
    return out;
}

std::vector<Poly> pfaffians4(const RingPtr& ring, const std::vector<Poly>& upper) {
    if (upper.size() != 10)
        throw std::invalid_argument("pfaffians4: need the 10 upper entries of a 5x5 matrix");
    (void)ring;
    auto M = [&](int i, int j) -> const Poly& {
        static const int offset[5] = {0, 4, 7, 9, 10};
        return upper[offset[i] + (j - i - 1)];
    };
    std::vector<Poly> pf;
    for (int k = 0; k < 5; ++k) {
        int r[4], c = 0;
        for (int i = 0; i < 5; ++i)
            if (i != k) r[c++] = i;
        Poly v = poly_mul(M(r[0], r[1]), M(r[2], r[3]));
        v = poly_sub(v, poly_mul(M(r[0], r[2]), M(r[1], r[3])));
        v = poly_add(v, poly_mul(M(r[0], r[3]), M(r[1], r[2])));
        pf.push_back(std::move(v));
    }
    return pf;
}

Subscheme pfaffian_surface(const ScrollRecord& X, const std::vector<Poly>& upper_bigraded,
                           Rng& rng) {
    (void)rng;
    const RingPtr amb = X.variety.ring;
    std::vector<Poly> pf = pfaffians4(X.bigraded, upper_bigraded);
    std::vector<Poly> raw = X.variety.gens;
    for (const Poly& f : pf) {
        std::vector<Poly> mult = ambient_multiples(X, f, 3, amb);
        raw.insert(raw.end(), mult.begin(), mult.end());
    }
    std::vector<Poly> gens = minimal_generators(amb, raw, 3);
    int expected_dim = X.variety.dim - 3;
    HilbertSummary h = hilbert(Ideal(amb, gens));
    if (h.proj_dim != expected_dim)
        throw ModelConstructionFailed("pfaffian_surface: locus has wrong codimension");
    return Subscheme{amb, std::move(gens), expected_dim};
}

}  // namespace k3lat
