#include <doctest.h>

#include <k3lat/curves.hpp>

using namespace k3lat;

TEST_CASE("rational_curve: a line in P3") {
    Rng rng(101);
    CurveRecord line = rational_curve(1, 3, 65521, rng);
    HilbertSummary h = hilbert(Ideal(line.curve.ring, line.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 1);
}

TEST_CASE("rational_curve: twisted cubic has P(t) = 3t + 1") {
    Rng rng(102);
    CurveRecord tc = rational_curve(3, 3, 65521, rng);
    HilbertSummary h = hilbert(Ideal(tc.curve.ring, tc.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 3);
    CHECK(h.chi == 1);
    CHECK(h.curve_genus() == 0);
}

TEST_CASE("rational_curve: sextic in P4 (the Sarkisov input shape)") {
    Rng rng(103);
    CurveRecord c = rational_curve(6, 4, 65521, rng);
    CHECK(c.degree == 6);
    CHECK(c.genus == 0);
    HilbertSummary h = hilbert(Ideal(c.curve.ring, c.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 6);
    CHECK(h.curve_genus() == 0);
    // quadratic normality: exactly 2 quadrics through the sextic
    int quads = 0;
    for (const Poly& g : c.curve.gens)
        if (g.degree() == 2) ++quads;
    CHECK(quads == 2);
    // smoothness at a sample of points
    Rng rng2(104);
    auto rep = singular_sample(c.curve, c.sampler, 30, rng2);
    CHECK(rep.smooth == rep.trials);
}

TEST_CASE("elliptic_curve: quartic in P3 is a (2,2) intersection") {
    Rng rng(105);
    CurveRecord e = elliptic_curve(4, 3, 65521, rng);
    HilbertSummary h = hilbert(Ideal(e.curve.ring, e.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 4);
    CHECK(h.curve_genus() == 1);
    int quads = 0;
    for (const Poly& g : e.curve.gens)
        if (g.degree() == 2) ++quads;
    CHECK(quads == 2);
}

TEST_CASE("elliptic_curve: degree-9 elliptic normal curve in P8") {
    Rng rng(106);
    CurveRecord e = elliptic_curve(9, 8, 65521, rng);
    HilbertSummary h = hilbert(Ideal(e.curve.ring, e.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 9);
    CHECK(h.curve_genus() == 1);
    // linearly normal: no hyperplane contains it
    for (const Poly& g : e.curve.gens) CHECK(g.degree() > 1);
}

TEST_CASE("elliptic_curve: degree-9 elliptic curve in P5") {
    Rng rng(107);
    CurveRecord e = elliptic_curve(9, 5, 65521, rng);
    HilbertSummary h = hilbert(Ideal(e.curve.ring, e.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 9);
    CHECK(h.curve_genus() == 1);
}

TEST_CASE("genus2_curve_deg7_on_quadric") {
    Rng rng(108);
    GenusTwoPair pair = genus2_curve_deg7_on_quadric(65521, rng);
    // curve: dim 1, degree 7, arithmetic genus 2
    HilbertSummary h = hilbert(Ideal(pair.curve.curve.ring, pair.curve.curve.gens));
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 7);
    CHECK(h.curve_genus() == 2);
    // quadric contains the curve: check on sampled points
    Rng rng2(109);
    auto pts = sample_points(pair.curve.sampler, 25, rng2);
    const Poly& Q = pair.quadric.gens[0];
    for (const PointP& q : pts) CHECK(poly_eval(Q, q.x) == 0);
    // at least 2 quadrics through the projected curve
    int quads = 0;
    for (const Poly& g : pair.curve.curve.gens)
        if (g.degree() == 2) ++quads;
    CHECK(quads >= 2);
}
