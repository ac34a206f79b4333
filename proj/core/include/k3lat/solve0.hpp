#ifndef K3LAT_SOLVE0_HPP
#define K3LAT_SOLVE0_HPP

#include "gb.hpp"
#include "rng.hpp"

namespace k3lat {

struct Solve0Options {
    int gb_degree_cap = 40;
    int max_basis = 4096;     // bail out if the quotient is larger
    int eigen_retries = 8;
    int recursion_depth = 3;  // for clustered eigenvalues
};

struct Solve0NotFinite : std::runtime_error {
    Solve0NotFinite() : std::runtime_error("solve_zero_dim: ideal is not zero-dimensional") {}
};

/// All GF(p)-rational solutions of a zero-dimensional affine polynomial
/// system, by the eigenvector method: grevlex basis, multiplication matrix
/// of a random separating linear form, characteristic polynomial roots, and
/// left eigenvectors read off as evaluation functionals.
std::vector<std::vector<uint32_t>> solve_zero_dim(const RingPtr& ring,
                                                  const std::vector<Poly>& gens, Rng& rng,
                                                  const Solve0Options& opt = {});

}  // namespace k3lat

#endif
