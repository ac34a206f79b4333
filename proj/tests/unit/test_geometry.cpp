#include <doctest.h>

#include <k3lat/geometry.hpp>
#include <k3lat/textio.hpp>

using namespace k3lat;

namespace {
Poly P(const RingPtr& R, const std::string& s) { return poly_from_line(R, s); }

/// Veronese surface in P5: image of P2 by the 6 degree-2 monomials.
Sampler veronese_sampler(uint32_t p) {
    RingPtr P2 = make_ring(p, 3);
    RingPtr P5 = make_ring(p, 6);
    std::vector<Poly> sq;
    for (const Monomial& m : monomials_of_degree(*P2, 2)) sq.push_back(poly_term(P2, m, 1));
    return Sampler::direct(P2, {}, 2).then(sq, P5);
}
}  // namespace

TEST_CASE("random_point: projective plane and plane cubic") {
    Rng rng(5);
    RingPtr R = make_ring(65521, 3);
    Subscheme plane{R, {}, 2};
    PointP p = random_point(plane, rng);
    CHECK(p.x.size() == 3);

    // y^2 z - x^3 + x z^2 (vars x0,x1,x2)
    Poly cubic = P(R, "1*x1^2*x2+65520*x0^3+1*x0*x2^2");
    Subscheme C{R, {cubic}, 1};
    for (int i = 0; i < 5; ++i) {
        PointP q = random_point(C, rng);
        CHECK(poly_eval(cubic, q.x) == 0);
        size_t j = 0;
        while (q.x[j] == 0) ++j;
        CHECK(q.x[j] == 1);  // normalized
    }
}

TEST_CASE("sampler: 100 points on G(1,4) via parameterization satisfy the quadrics") {
    // source: P9 of 2x5 matrices; map: the ten 2x2 minors
    uint32_t p = 65521;
    RingPtr M = make_ring(p, 10);  // rows (a0..a4), (b0..b4)
    RingPtr P9 = make_ring(p, 10);
    std::vector<Poly> minors;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            minors.push_back(poly_sub(poly_mul(poly_var(M, i), poly_var(M, 5 + j)),
                                      poly_mul(poly_var(M, j), poly_var(M, 5 + i))));
    Sampler g14 = Sampler::direct(M, {}, 9).then(minors, P9);
    Rng rng(17);
    auto pts = sample_points(g14, 100, rng);
    REQUIRE(pts.size() == 100);
    // Pluecker quadrics vanish on all of them
    auto idx = [](int i, int j) {
        int k = 0;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                if (a == i && b == j) return k;
                ++k;
            }
        return -1;
    };
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = j + 1; k < 5; ++k)
                for (int l = k + 1; l < 5; ++l) {
                    Poly rel = poly_add(
                        poly_sub(poly_mul(poly_var(P9, idx(i, j)), poly_var(P9, idx(k, l))),
                                 poly_mul(poly_var(P9, idx(i, k)), poly_var(P9, idx(j, l)))),
                        poly_mul(poly_var(P9, idx(i, l)), poly_var(P9, idx(j, k))));
                    for (const PointP& q : pts) CHECK(poly_eval(rel, q.x) == 0);
                }
}

TEST_CASE("forms_through: quadrics through the Veronese surface are 6-dimensional") {
    Rng rng(23);
    Sampler v = veronese_sampler(65521);
    auto basis = forms_through(v, 2, 1, nullptr, rng);
    CHECK(basis.size() == 6);  // 21 monomials minus rank 15
}

TEST_CASE("forms_through: quadrics through G(1,4) in P10 are 16-dimensional") {
    uint32_t p = 65521;
    RingPtr M = make_ring(p, 10);
    RingPtr P10 = make_ring(p, 11);
    std::vector<Poly> forms;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            forms.push_back(poly_sub(poly_mul(poly_var(M, i), poly_var(M, 5 + j)),
                                     poly_mul(poly_var(M, j), poly_var(M, 5 + i))));
    forms.push_back(Poly(M));  // embed P9 as {x10 = 0} in P10
    Sampler g = Sampler::direct(M, {}, 9).then(forms, P10);
    Rng rng(29);
    auto basis = forms_through(g, 2, 1, nullptr, rng);
    CHECK(basis.size() == 16);  // 5 Pluecker + 11 multiples of x10
}

TEST_CASE("forms_through: cubics singular along the Veronese are 14-dimensional") {
    // ambient P6: Veronese sits inside the hyperplane {x6 = 0}
    uint32_t p = 65521;
    RingPtr P2 = make_ring(p, 3);
    RingPtr P6 = make_ring(p, 7);
    std::vector<Poly> sq;
    for (const Monomial& m : monomials_of_degree(*P2, 2)) sq.push_back(poly_term(P2, m, 1));
    sq.push_back(Poly(P2));
    Sampler v = Sampler::direct(P2, {}, 2).then(sq, P6);
    Rng rng(31);
    auto basis = forms_through(v, 3, 2, nullptr, rng);
    CHECK(basis.size() == 14);  // the Sigma_9 = LG(3,6) system in P13
}

TEST_CASE("image: P1 by cubic monomials is the twisted cubic") {
    uint32_t p = 65521;
    RingPtr P1 = make_ring(p, 2);
    std::vector<Poly> cubics;
    for (const Monomial& m : monomials_of_degree(*P1, 3)) cubics.push_back(poly_term(P1, m, 1));
    Sampler line = Sampler::direct(P1, {}, 1);
    Rng rng(37);
    Subscheme tc = image(line, cubics, 1, 3, rng);
    // 3 quadrics, nothing else
    REQUIRE(tc.gens.size() == 3);
    for (const Poly& g : tc.gens) CHECK(g.degree() == 2);
    HilbertSummary h = hilbert(Ideal(tc.ring, tc.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 3);

    // cross-check against the exact elimination route
    Ideal exact = image_exact(P1, {}, cubics, 3);
    Ideal exact_gb = gb(exact);
    for (const Poly& g : tc.gens) {
        Poly g2 = poly_rename(g, exact.ring(), {0, 1, 2, 3});
        CHECK(normal_form(g2, exact_gb).is_zero());
    }
}

TEST_CASE("project: twisted cubic from a point on it becomes a conic") {
    uint32_t p = 65521;
    RingPtr P1 = make_ring(p, 2);
    std::vector<Poly> cubics;
    for (const Monomial& m : monomials_of_degree(*P1, 3)) cubics.push_back(poly_term(P1, m, 1));
    RingPtr P3 = make_ring(p, 4);
    Sampler tc = Sampler::direct(P1, {}, 1).then(cubics, P3);
    // (1:0:0:0) = image of (1:0); project from it
    std::vector<Poly> center = {poly_var(P3, 1), poly_var(P3, 2), poly_var(P3, 3)};
    Rng rng(41);
    Subscheme img = project(tc, center, 1, 2, rng);
    HilbertSummary h = hilbert(Ideal(img.ring, img.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 2);
}

TEST_CASE("project: away from a disjoint center preserves degree (on a curve)") {
    uint32_t p = 65521;
    RingPtr P1 = make_ring(p, 2);
    std::vector<Poly> quartics;
    for (const Monomial& m : monomials_of_degree(*P1, 4)) quartics.push_back(poly_term(P1, m, 1));
    RingPtr P4 = make_ring(p, 5);
    Sampler rnc = Sampler::direct(P1, {}, 1).then(quartics, P4);
    // project from a random point not on the curve: keep 4 generic linear forms
    Rng rng(43);
    std::vector<Poly> center;
    for (int i = 0; i < 4; ++i) center.push_back(random_form(P4, 1, rng));
    Subscheme img = project(rnc, center, 1, 3, rng);
    HilbertSummary h = hilbert(Ideal(img.ring, img.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 4);
}

TEST_CASE("tangent space and smoothness") {
    uint32_t p = 65521;
    RingPtr R = make_ring(p, 4);
    // smooth quadric surface x0 x3 - x1 x2
    Poly q = P(R, "1*x0*x3+65520*x1*x2");
    Subscheme Q{R, {q}, 2};
    PointP pt{{1, 0, 0, 0}};
    Subscheme T = tangent_space(Q, pt);
    CHECK(T.dim == 2);  // a projective plane
    CHECK(is_smooth_at(Q, pt));

    // cone over a conic: x1^2 - x0 x2 in P3; vertex (0:0:0:1)
    Poly cone = P(R, "1*x1^2+65520*x0*x2");
    Subscheme C{R, {cone}, 2};
    PointP vertex{{0, 0, 0, 1}};
    CHECK_FALSE(is_smooth_at(C, vertex));
    Subscheme Tv = tangent_space(C, vertex);
    CHECK(Tv.dim == 3);  // tangent space jumps at the singular point

    CHECK_THROWS_AS(tangent_space(Q, PointP{{1, 1, 1, 0}}), std::invalid_argument);
}

TEST_CASE("singular_sample: smooth quadric threefold samples smooth") {
    uint32_t p = 65521;
    RingPtr R = make_ring(p, 5);
    Rng rng(47);
    // a random full-rank quadric
    Poly q(R);
    for (int i = 0; i < 5; ++i) q = poly_add(q, poly_scale(poly_mul(poly_var(R, i), poly_var(R, i)), rng.nonzero_mod(p)));
    q = poly_add(q, poly_scale(poly_mul(poly_var(R, 0), poly_var(R, 3)), rng.nonzero_mod(p)));
    Subscheme Q{R, {q}, 3};
    Sampler s = Sampler::direct(R, {q}, 3);
    auto rep = singular_sample(Q, s, 20, rng);
    CHECK(rep.trials == 20);
    CHECK(rep.smooth == 20);
}
