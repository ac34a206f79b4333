#ifndef K3LAT_MODELS_HPP
#define K3LAT_MODELS_HPP

#include "curves.hpp"

namespace k3lat {

struct ModelConstructionFailed : std::runtime_error {
    explicit ModelConstructionFailed(const std::string& w) : std::runtime_error(w) {}
};

/// An ambient model: the variety, a parameterization-backed point source and
/// the genus tag it serves.
struct ModelRecord {
    int g = 0;
    Subscheme variety;
    Sampler sampler;
};

/// G(1, n) in Pluecker coordinates with its matrix parameterization.
/// (G(1,2) = PP^2 has no relations.)
ModelRecord grassmannian(int k, int n, uint32_t p);

/// Combinatorial Pluecker relations of G(1, n) in a given ring.
std::vector<Poly> pluecker_relations(const RingPtr& ring, int n);

/// Mukai model Sigma_g for g in {6,7,8,9,12}; g = 10 has no direct model
/// here (the genus-10 route goes through fano_threefold(10)) and is
/// rejected.  g = 12 returns the V22 threefold.
ModelRecord mukai_model(int g, uint32_t p, Rng& rng);

// ------------------------------------------------------------------ scrolls

enum class ScrollKind {
    P1xP2_in_P5,       // Segre threefold
    cone_P1xP2_in_P6,  // one vertex point
    cone_P1xP2_in_P7,  // vertex line
    rank4_quadric_in_P6,
};

/// Scroll data: the subscheme, and the bigraded coordinate model
/// (s, t; fiber and vertex variables) with the substitution map to ambient
/// coordinates for balanced monomials.
struct ScrollRecord {
    ScrollKind kind;
    Subscheme variety;
    Sampler sampler;
    RingPtr bigraded;              // s, t, fiber vars, vertex vars
    int n_fiber = 0;               // fiber variables carrying an s/t partner
    int n_vertex = 0;
    std::vector<Poly> coord_map;   // ambient coordinates as bigraded forms
};

ScrollRecord segre_scroll(ScrollKind kind, uint32_t p);

/// Random bigraded form: degree a in (s,t) and degree b in fiber+vertex
/// variables jointly.
Poly random_bidegree_form(const ScrollRecord& X, int a, int b, Rng& rng);

/// Rewrite a balanced bigraded polynomial (every monomial has (s,t)-degree
/// equal to its fiber-variable degree) as a polynomial in the ambient
/// coordinates.  Throws if some monomial is not balanced.
Poly bigraded_to_ambient(const ScrollRecord& X, const Poly& f, const RingPtr& ambient);

/// Ambient ideal generators contributed by a bigraded form f on the scroll:
/// all balanced multiples m * f with ambient degree <= max_ambient_degree.
std::vector<Poly> ambient_multiples(const ScrollRecord& X, const Poly& f,
                                    int max_ambient_degree, const RingPtr& ambient);

/// The five 4x4 Pfaffians of a 5x5 skew-symmetric matrix of polynomials
/// (given by its strict upper triangle, row-major).
std::vector<Poly> pfaffians4(const RingPtr& ring, const std::vector<Poly>& upper);

/// Surface cut out on the scroll by the 4x4 Pfaffians of a skew matrix of
/// bigraded forms; entries follow the printed pattern for the given kind.
Subscheme pfaffian_surface(const ScrollRecord& X, const std::vector<Poly>& upper_bigraded,
                           Rng& rng);

// ------------------------------------------------------------------- Fanos

enum class MarkKind { None, Point, Line, Conic, RationalCurve };

struct Marking {
    MarkKind kind = MarkKind::None;
    PointP point;             // for Point
    Subscheme curve;          // for Line/Conic/RationalCurve
    Sampler curve_sampler = Sampler();
    int curve_degree = 0;
};

/// Prime Fano threefold of genus g in PP^{g+1} with a marked point or a
/// marked rational curve (line or conic on it).
struct FanoRecord {
    int g = 0;
    Subscheme threefold;
    Sampler sampler;
    Marking marking;
};

FanoRecord fano_threefold(int g, MarkKind marking, uint32_t p, Rng& rng);

/// The genus-12 Fano threefold V22 via the Sarkisov link from a quadric
/// threefold marked with a rational normal sextic; always carries the
/// distinguished conic (image of the unique quadric divisor through the
/// sextic).
FanoRecord v22(uint32_t p, Rng& rng);

}  // namespace k3lat

#endif
