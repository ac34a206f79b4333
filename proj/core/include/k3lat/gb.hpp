#ifndef K3LAT_GB_HPP
#define K3LAT_GB_HPP

#include <stdexcept>

#include "ideal.hpp"

namespace k3lat {

struct GBOptions {
    int degree_cap = 12;   // abort when an S-pair exceeds this sugar degree
    bool tail_reduce = true;
};

/// Thrown when the S-pair queue reaches the configured degree cap.
struct GBCapExceeded : std::runtime_error {
    explicit GBCapExceeded(int cap)
        : std::runtime_error("groebner: degree cap " + std::to_string(cap) + " exceeded") {}
};

/// Buchberger with sugar-strategy pair selection, both Buchberger criteria
/// and Gebauer-Moeller pair list maintenance.  Returns the reduced basis.
GroebnerData buchberger(const PolyRing& ring, const std::vector<Poly>& gens,
                        const GBOptions& opt = {});

/// gb(I): identical generators plus an attached reduced Groebner basis.
Ideal gb(const Ideal& I, const GBOptions& opt = {});

/// Full normal form of f against a set of monic reducers.
Poly normal_form(const Poly& f, const std::vector<Poly>& reducers);
/// normal_form against a cached basis; throws on ring mismatch.
Poly normal_form(const Poly& f, const Ideal& I_with_gb);

/// Membership f in I (computes or reuses the Groebner basis).
bool ideal_contains(const Ideal& I_with_gb, const Poly& f);

/// Generators of I cap GF(p)[x_k..x_{n-1}] for I homogeneous in a ring with
/// an elimination order for the first k variables.  k = 0 returns I.
Ideal elimination(const Ideal& I, int k, const GBOptions& opt = {});

/// (I : J) = { f : f J in I }, computed degree by degree against gb(I) up to
/// a generation cap, then verified by (I:J) * J in I.
Ideal ideal_quotient(const Ideal& I, const Ideal& J, const GBOptions& opt = {});

/// (I : f^inf) by iterated quotient until stable.
Ideal saturation_by(const Ideal& I, const Poly& f, const GBOptions& opt = {});

/// (I : J^inf).
Ideal saturation(const Ideal& I, const Ideal& J, const GBOptions& opt = {});

/// Fast path: (I : x_last^inf) for the grevlex order, by dividing each
/// reduced basis element by its maximal power of the last variable.
Ideal saturate_last_variable(const Ideal& I, const GBOptions& opt = {});

/// Dimension of the degree-d graded piece of the ideal spanned by monomial
/// multiples of the generators (no Groebner computation).
int graded_piece_dim(const Ideal& I, int d);
/// A basis of that graded piece, as row-reduced forms.
std::vector<Poly> graded_piece_basis(const Ideal& I, int d);

}  // namespace k3lat

#endif
