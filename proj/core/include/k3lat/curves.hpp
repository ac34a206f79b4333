#ifndef K3LAT_CURVES_HPP
#define K3LAT_CURVES_HPP

#include "geometry.hpp"

namespace k3lat {

/// A constructed curve: projective model, a point source for interpolation
/// work downstream, and its certified invariants.
struct CurveRecord {
    Subscheme curve;
    Sampler sampler;
    int degree = 0;
    int genus = 0;
};

struct CurveConstructionFailed : std::runtime_error {
    explicit CurveConstructionFailed(const std::string& w) : std::runtime_error(w) {}
};

/// Smooth rational curve of degree d spanning min(d, n) dimensions in PP^n:
/// rational normal curve in PP^d, then a general projection when d > n.
CurveRecord rational_curve(int d, int n, uint32_t p, Rng& rng);

/// Smooth genus-1 curve of degree d in PP^n (d >= 3): a plane cubic for
/// d = 3; otherwise the image of a random plane cubic under the degree-m
/// curves through 3m - d of its points (m = ceil(d/3)), projected down when
/// n < d - 1.
CurveRecord elliptic_curve(int d, int n, uint32_t p, Rng& rng);

/// Smooth quadric threefold Q in PP^4 containing a smooth curve of degree 7
/// and genus 2, built from a 4-nodal plane quintic.
struct GenusTwoPair {
    Subscheme quadric;
    CurveRecord curve;
};
GenusTwoPair genus2_curve_deg7_on_quadric(uint32_t p, Rng& rng);

/// Random smooth plane cubic (smoothness certified by an empty singular
/// scheme, via the Hilbert dimension of the partials ideal).
Poly random_smooth_plane_cubic(const RingPtr& P2, Rng& rng);

}  // namespace k3lat

#endif
