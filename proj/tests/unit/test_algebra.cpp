#include <doctest.h>

#include <k3lat/gb.hpp>
#include <k3lat/hilbert.hpp>
#include <k3lat/textio.hpp>
#include <k3lat/univar.hpp>

using namespace k3lat;

namespace {

Poly P(const RingPtr& R, const std::string& s) { return poly_from_line(R, s); }

/// Pluecker relations of G(1,n): variables p_{ij} for 0<=i<j<=n in lex order
/// of (i,j); one 3-term quadric per quadruple i<j<k<l.
std::vector<Poly> pluecker_g1(const RingPtr& R, int n) {
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
                    Poly f = poly_sub(
                        poly_mul(poly_var(R, idx(i, j)), poly_var(R, idx(k, l))),
                        poly_mul(poly_var(R, idx(i, k)), poly_var(R, idx(j, l))));
                    f = poly_add(f, poly_mul(poly_var(R, idx(i, l)), poly_var(R, idx(j, k))));
                    rels.push_back(f);
                }
    return rels;
}

}  // namespace

TEST_CASE("gb: identity case <x, y>") {
    RingPtr R = make_ring(65521, 2);
    Ideal I(R, {P(R, "1*x0"), P(R, "1*x1")});
    Ideal J = gb(I);
    REQUIRE(J.gb_data().basis.size() == 2);
    CHECK(J.gb_data().basis[0] == P(R, "1*x1"));
    CHECK(J.gb_data().basis[1] == P(R, "1*x0"));
}

TEST_CASE("gb: <x^2, xy + y^2> contains y^3") {
    RingPtr R = make_ring(65521, 2);
    Ideal I(R, {P(R, "1*x0^2"), P(R, "1*x0*x1+1*x1^2")});
    Ideal J = gb(I);
    bool has_y3 = false;
    for (const Poly& g : J.gb_data().basis)
        if (g == P(R, "1*x1^3")) has_y3 = true;
    CHECK(has_y3);
    CHECK(J.gb_data().basis.size() == 3);
    // hand-derived oracle: S(x^2, xy+y^2) reduces to y^3
    CHECK(normal_form(P(R, "1*x1^3"), J).is_zero());
}

TEST_CASE("gb: Pluecker ideal of G(1,4) is its own reduced basis scale") {
    RingPtr R = make_ring(65521, 10);
    std::vector<Poly> rels = pluecker_g1(R, 4);
    REQUIRE(rels.size() == 5);
    Ideal J = gb(Ideal(R, rels));
    // Buchberger criterion, checked directly: all S-polynomials reduce to 0
    const auto& B = J.gb_data().basis;
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = i + 1; j < B.size(); ++j) {
            Monomial l = mono_lcm(B[i].lead().m, B[j].lead().m);
            Poly s = poly_sub(poly_mul_term(B[i], mono_div(l, B[i].lead().m), 1),
                              poly_mul_term(B[j], mono_div(l, B[j].lead().m), 1));
            CHECK(normal_form(s, J).is_zero());
        }
    // every input generator reduces to zero
    for (const Poly& g : rels) CHECK(normal_form(g, J).is_zero());
}

TEST_CASE("gb: idempotence term for term") {
    RingPtr R = make_ring(65521, 3);
    Ideal I(R, {P(R, "1*x0^2+3*x1*x2"), P(R, "5*x1^2+1*x0*x2"), P(R, "1*x2^3+2*x0*x1*x2")});
    Ideal J1 = gb(I);
    Ideal J2 = gb(Ideal(R, J1.gb_data().basis));
    REQUIRE(J1.gb_data().basis.size() == J2.gb_data().basis.size());
    for (size_t i = 0; i < J1.gb_data().basis.size(); ++i)
        CHECK(J1.gb_data().basis[i] == J2.gb_data().basis[i]);
}

TEST_CASE("normal_form: basics and membership soundness") {
    RingPtr R = make_ring(65521, 2);
    Ideal J = gb(Ideal(R, {P(R, "1*x0")}));
    CHECK(normal_form(P(R, "1*x0"), J).is_zero());

    Ideal K = gb(Ideal(R, {P(R, "1*x0^2"), P(R, "1*x0*x1+1*x1^2")}));
    CHECK(normal_form(P(R, "1*x1^3"), K).is_zero());

    // 50 random combinations of generators are members
    Rng rng(7);
    RingPtr R3 = make_ring(65521, 4);
    std::vector<Poly> gens = {P(R3, "1*x0^2+1*x1*x3"), P(R3, "1*x1^2+2*x2^2"),
                              P(R3, "3*x0*x2+1*x3^2")};
    Ideal G = gb(Ideal(R3, gens));
    for (int trial = 0; trial < 50; ++trial) {
        Poly f(R3);
        for (const Poly& g : gens) {
            Poly q = random_form(R3, 1 + rng.below(2), rng);
            f = poly_add(f, poly_mul(q, g));
        }
        CHECK(normal_form(f, G).is_zero());
    }
}

TEST_CASE("normal_form: ring mismatch throws") {
    RingPtr R = make_ring(65521, 2);
    RingPtr S = make_ring(65521, 3);
    Ideal J = gb(Ideal(R, {P(R, "1*x0")}));
    CHECK_THROWS_AS(normal_form(P(S, "1*x0"), J), std::invalid_argument);
}

TEST_CASE("elimination: Veronese conic") {
    // graph of (s:t) -> (s^2 : st : t^2): eliminate s,t; y^2 - xz survives
    RingPtr R = make_ring(65521, 5, Order::Elim, 2);  // s,t,x,y,z
    std::vector<Poly> gens = {P(R, "1*x2+65520*x0^2"), P(R, "1*x3+65520*x0*x1"),
                              P(R, "1*x4+65520*x1^2")};
    Ideal E = elimination(Ideal(R, gens), 2);
    REQUIRE(!E.gens().empty());
    Poly conic = P(R, "1*x3^2+65520*x2*x4");
    Ideal Egb = gb(E);
    CHECK(normal_form(conic, Egb).is_zero());
}

TEST_CASE("elimination: twisted cubic vs catalecticant minors") {
    // graph of (s:t) -> cubics; oracle: 2x2 minors of [x y z; y z w]
    RingPtr R = make_ring(65521, 6, Order::Elim, 2);  // s,t,x,y,z,w
    std::vector<Poly> gens = {P(R, "1*x2+65520*x0^3"), P(R, "1*x3+65520*x0^2*x1"),
                              P(R, "1*x4+65520*x0*x1^2"), P(R, "1*x5+65520*x1^3")};
    Ideal E = elimination(Ideal(R, gens), 2);
    Ideal Egb = gb(E);
    std::vector<Poly> minors = {P(R, "1*x2*x4+65520*x3^2"), P(R, "1*x2*x5+65520*x3*x4"),
                                P(R, "1*x3*x5+65520*x4^2")};
    for (const Poly& m : minors) CHECK(normal_form(m, Egb).is_zero());
    // and conversely the eliminated generators lie in the minor ideal
    Ideal M = gb(Ideal(R, minors));
    for (const Poly& g : E.gens()) CHECK(normal_form(g, M).is_zero());
}

TEST_CASE("elimination: k=0 is the identity") {
    RingPtr R = make_ring(65521, 3);
    Ideal I(R, {P(R, "1*x0^2+1*x1^2")});
    Ideal E = elimination(I, 0);
    CHECK(E.gens().size() == 1);
    CHECK(E.gens()[0] == I.gens()[0]);
}

TEST_CASE("elimination: wrong order tag throws") {
    RingPtr R = make_ring(65521, 3);
    Ideal I(R, {P(R, "1*x0^2")});
    CHECK_THROWS_AS(elimination(I, 1), std::invalid_argument);
}

TEST_CASE("elimination soundness: eliminated generators reduce to zero mod gb(I)") {
    RingPtr R = make_ring(65521, 5, Order::Elim, 2);
    std::vector<Poly> gens = {P(R, "1*x2+65520*x0^2"), P(R, "1*x3+65520*x0*x1"),
                              P(R, "1*x4+65520*x1^2")};
    Ideal I(R, gens);
    Ideal E = elimination(I, 2);
    Ideal Igb = gb(I);
    for (const Poly& g : E.gens()) CHECK(normal_form(g, Igb).is_zero());
}

TEST_CASE("ideal_quotient: (<xy> : <x>) = <y>") {
    RingPtr R = make_ring(65521, 2);
    Ideal I(R, {P(R, "1*x0*x1")});
    Ideal J(R, {P(R, "1*x0")});
    Ideal Q = ideal_quotient(I, J);
    Ideal Qgb = gb(Q);
    CHECK(normal_form(P(R, "1*x1"), Qgb).is_zero());
    // and y generates it: Q subset <y>
    Ideal Y = gb(Ideal(R, {P(R, "1*x1")}));
    for (const Poly& g : Q.gens()) CHECK(normal_form(g, Y).is_zero());
}

TEST_CASE("ideal_quotient: (I:J)*J is contained in I") {
    RingPtr R = make_ring(65521, 3);
    Rng rng(11);
    Ideal I(R, {P(R, "1*x0^2*x1+1*x2^3"), P(R, "1*x1^2*x2")});
    Ideal J(R, {P(R, "1*x1"), P(R, "1*x2^2")});
    Ideal Q = ideal_quotient(I, J);
    Ideal Igb = gb(I);
    for (const Poly& q : Q.gens())
        for (const Poly& j : J.gens()) CHECK(normal_form(poly_mul(q, j), Igb).is_zero());
}

TEST_CASE("saturation: stability under multiplying by the irrelevant ideal") {
    RingPtr R = make_ring(65521, 3);
    std::vector<Poly> m = {P(R, "1*x0"), P(R, "1*x1"), P(R, "1*x2")};
    Ideal irr(R, m);
    // I = ideal of two points union an irrelevant component
    std::vector<Poly> Igens;
    Poly f = P(R, "1*x0*x1");
    for (const Poly& v : m) Igens.push_back(poly_mul(f, v));
    Ideal I(R, Igens);          // m * (x0 x1)
    Ideal S1 = saturation(I, irr);
    Ideal S2 = saturation(Ideal(R, {f}), irr);
    Ideal S1gb = gb(S1), S2gb = gb(S2);
    for (const Poly& g : S1.gens()) CHECK(normal_form(g, S2gb).is_zero());
    for (const Poly& g : S2.gens()) CHECK(normal_form(g, S1gb).is_zero());
}

TEST_CASE("saturate_last_variable agrees with generic saturation") {
    RingPtr R = make_ring(65521, 3);
    // I = x2 * <x0, x1> : saturating by x2 should give <x0, x1>
    Ideal I(R, {P(R, "1*x0*x2"), P(R, "1*x1*x2")});
    Ideal S = saturate_last_variable(I);
    Ideal Sgb = gb(S);
    CHECK(normal_form(P(R, "1*x0"), Sgb).is_zero());
    CHECK(normal_form(P(R, "1*x1"), Sgb).is_zero());
}

TEST_CASE("hilbert: projective plane") {
    RingPtr R = make_ring(65521, 3);
    Ideal I(R);  // zero ideal
    HilbertSummary h = hilbert(I);
    CHECK(h.proj_dim == 2);
    CHECK(h.degree == 1);
    // P(t) = (t+1)(t+2)/2
    REQUIRE(h.hp.size() == 3);
    CHECK(h.hp[0] == Frac(1));
    CHECK(h.hp[1] == Frac(3, 2));
    CHECK(h.hp[2] == Frac(1, 2));
}

TEST_CASE("hilbert: twisted cubic") {
    RingPtr R = make_ring(65521, 4);
    Ideal I(R, {P(R, "1*x0*x2+65520*x1^2"), P(R, "1*x0*x3+65520*x1*x2"),
                P(R, "1*x1*x3+65520*x2^2")});
    HilbertSummary h = hilbert(I);
    CHECK(h.proj_dim == 1);
    CHECK(h.degree == 3);
    REQUIRE(h.hp.size() == 2);
    CHECK(h.hp[1] == Frac(3));
    CHECK(h.hp[0] == Frac(1));
    CHECK(h.curve_genus() == 0);
}

TEST_CASE("hilbert: rejects affine input") {
    RingPtr R = make_ring(65521, 2);
    Ideal I(R, {P(R, "1*x0^2+1*x1")});
    CHECK_THROWS_AS(hilbert(I), std::invalid_argument);
}

TEST_CASE("univariate_roots: x^2 - 1 mod 7") {
    FieldSpec F(7);
    Rng rng(3);
    UniPoly f;
    f.c = {6, 0, 1};  // -1 + x^2
    auto roots = univariate_roots(F, f, rng);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == 1);
    CHECK(roots[1] == 6);
}

TEST_CASE("univariate_roots: (x-2)(x-3)(x^2+1) mod 7") {
    FieldSpec F(7);
    Rng rng(3);
    // (x-2)(x-3) = x^2 - 5x + 6; times (x^2+1)
    UniPoly a;
    a.c = {6, 2, 1};  // 6 - 5x + x^2 = 6 + 2x + x^2 mod 7
    UniPoly b;
    b.c = {1, 0, 1};
    UniPoly f = uni_mul(F, a, b);
    auto roots = univariate_roots(F, f, rng);
    // exhaustive oracle over GF(7)
    std::vector<uint32_t> expect;
    for (uint32_t x = 0; x < 7; ++x)
        if (uni_eval(F, f, x) == 0) expect.push_back(x);
    CHECK(roots == expect);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == 2);
    CHECK(roots[1] == 3);
}

TEST_CASE("univariate_roots: planted degree-30 split polynomial") {
    FieldSpec F(65521);
    Rng rng(99);
    std::vector<uint32_t> planted;
    for (int i = 0; i < 30; ++i) planted.push_back(rng.nonzero_mod(F.p));
    std::sort(planted.begin(), planted.end());
    planted.erase(std::unique(planted.begin(), planted.end()), planted.end());
    UniPoly f;
    f.c = {1};
    for (uint32_t r : planted) {
        UniPoly lin;
        lin.c = {F.neg(r), 1};
        f = uni_mul(F, f, lin);
    }
    auto roots = univariate_roots(F, f, rng);
    CHECK(roots == planted);
}

TEST_CASE("univariate_roots: zero polynomial throws") {
    FieldSpec F(65521);
    Rng rng(1);
    UniPoly z;
    CHECK_THROWS_AS(univariate_roots(F, z, rng), std::domain_error);
}

TEST_CASE("text format: round trip") {
    RingPtr R = make_ring(65521, 4);
    Ideal I(R, {P(R, "3*x0^2*x3+65520*x1*x2"), P(R, "1*x2^2+2*x0*x3")});
    std::string text = ideal_to_text(I);
    Ideal J = ideal_from_text(text);
    REQUIRE(J.gens().size() == 2);
    CHECK(J.gens()[0] == I.gens()[0]);
    CHECK(J.gens()[1] == I.gens()[1]);
    CHECK(ideal_to_text(J) == text);
}

TEST_CASE("gb cap: degree cap aborts") {
    // an ideal engineered to exceed a tiny cap
    RingPtr R = make_ring(65521, 3);
    Ideal I(R, {P(R, "1*x0^3+1*x1^3"), P(R, "1*x1^3+1*x2^3"), P(R, "1*x0*x1*x2")});
    GBOptions opt;
    opt.degree_cap = 3;
    CHECK_THROWS_AS(gb(I, opt), GBCapExceeded);
}
