#ifndef K3LAT_GEOMETRY_HPP
#define K3LAT_GEOMETRY_HPP

#include <optional>
#include <string>

#include "hilbert.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "solve0.hpp"

namespace k3lat {

/// Point of projective space, normalized so the first nonzero coordinate
/// is 1.  Never the zero vector.
struct PointP {
    std::vector<uint32_t> x;

    bool operator==(const PointP& o) const { return x == o.x; }
    bool operator<(const PointP& o) const { return x < o.x; }
};

PointP normalize_point(const FieldSpec& F, std::vector<uint32_t> coords);

/// Projective subscheme: ambient ring, homogeneous (saturated) ideal and a
/// dimension hint filled by the constructing pipeline or by hilbert().
struct Subscheme {
    RingPtr ring;
    std::vector<Poly> gens;
    int dim = -1;

    Ideal ideal() const { return Ideal(ring, gens); }
    int ambient_dim() const { return ring->nvars() - 1; }
};

/// Evaluate all generators at a point; true if every one vanishes.
bool on_subscheme(const Subscheme& V, const PointP& pt);

/// Point source for a variety reached through a chain of rational maps.
/// Points are sampled on the (small) source by random linear slicing and a
/// zero-dimensional solve, then pushed through the chain; this is what makes
/// interpolation affordable in large ambient spaces.
struct Sampler {
    RingPtr src_ring;
    std::vector<Poly> src_gens;
    int src_dim = 0;
    std::vector<Poly> src_avoid;           // slices add (combo != 0) to dodge base loci
    std::vector<std::vector<Poly>> steps;  // forms of step i live in rings[i]
    std::vector<RingPtr> rings;            // rings[0] == src_ring, back() == target
    std::vector<Poly> exclude;             // target: drop points where all of these vanish
    std::vector<Poly> require;             // target: keep only points where all vanish

    const RingPtr& target_ring() const { return rings.back(); }

    static Sampler direct(RingPtr ring, std::vector<Poly> gens, int dim);
    /// Append a map step given by forms in the current target ring.
    Sampler then(std::vector<Poly> forms, RingPtr next_ring) const;
    /// Restrict the source by additional target-ring equations (pulled back).
    Sampler restricted_by(const std::vector<Poly>& target_forms, int dim_drop) const;
    /// Pull a target-ring polynomial back to the source ring.
    Poly pullback(const Poly& f) const;
};

struct SampleBudgetExhausted : std::runtime_error {
    explicit SampleBudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Sample `count` distinct rational points via random slices of the source.
std::vector<PointP> sample_points(const Sampler& s, size_t count, Rng& rng);

/// One random rational point on V by slicing (spec op random_point).
PointP random_point(const Subscheme& V, Rng& rng);

// ------------------------------------------------------------ interpolation

struct InterpolationUnstable : std::runtime_error {
    explicit InterpolationUnstable(const std::string& what) : std::runtime_error(what) {}
};

/// Basis of degree-d forms vanishing to order >= mult (1 or 2) along the
/// points of the sampled variety.  With `relative` set to a hypersurface Q
/// containing the variety, double vanishing is required only modulo Q (the
/// gradient must be proportional to grad Q at each sample).
/// The result is verified on a disjoint resample.
std::vector<Poly> forms_through(const Sampler& s, int degree, int mult, const Poly* relative,
                                Rng& rng);

/// Same, from explicit points (no resample verification).
std::vector<Poly> forms_through_points(const RingPtr& ring, const std::vector<PointP>& pts,
                                       int degree, int mult, const Poly* relative);

// --------------------------------------------------------------------- maps

/// Closure of the image of the map given by `forms` on the sampled source,
/// with generators interpolated in degrees 1..degree_cap (minimal ones only)
/// and verified on 200 fresh pushed points.
Subscheme image(const Sampler& source, const std::vector<Poly>& forms, int image_dim,
                int degree_cap, Rng& rng);

/// Exact image ideal via elimination on the graph ideal; only for small
/// rings (total variables <= 12), used as a cross-check of interpolation.
Ideal image_exact(const RingPtr& src_ring, const std::vector<Poly>& src_gens,
                  const std::vector<Poly>& forms, int degree_cap);

/// Linear projection away from the common zero locus of `center_forms`
/// (a basis of the linear forms vanishing on the center).
Subscheme project(const Sampler& source, const std::vector<Poly>& center_forms, int image_dim,
                  int degree_cap, Rng& rng);

/// Degree-by-degree minimal generators of the span of the given homogeneous
/// forms (forms lying in the span of multiples of lower-degree output are
/// dropped).
std::vector<Poly> minimal_generators(const RingPtr& ring, const std::vector<Poly>& raw,
                                     int maxdeg);

// ------------------------------------------------------------- local geometry

/// Jacobian matrix of the generators at a point (rows = generators).
MatF jacobian_at(const Subscheme& V, const PointP& q);

/// Projective tangent space at q as the ideal of a linear subscheme;
/// dimension = (kernel of the Jacobian) - 1.  Throws if q not on V.
Subscheme tangent_space(const Subscheme& V, const PointP& q);

/// Jacobian rank test; V.dim must be set.
bool is_smooth_at(const Subscheme& V, const PointP& q);

struct SingularReport {
    int trials = 0;
    int smooth = 0;
    std::vector<PointP> singular_points;
};
SingularReport singular_sample(const Subscheme& V, const Sampler& s, int trials, Rng& rng);

/// Tangent cone data at a simple double point.  The quadratic form lives on
/// the tangent directions: qform is symmetric of size tangent_basis.size(),
/// and the projectivized tangent cone is { t : t^T qform t = 0 }.
struct NodeData {
    std::vector<std::vector<uint32_t>> tangent_basis;  // affine chart directions
    MatF qform;
    int hessian_rank = 0;  // 3 for a simple (A1) surface node
    int chart_var = 0;     // chart used for the computation
};
NodeData tangent_cone_at_node(const Subscheme& V, const PointP& p);

}  // namespace k3lat

#endif
