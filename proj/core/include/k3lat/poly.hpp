#ifndef K3LAT_POLY_HPP
#define K3LAT_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ring.hpp"

namespace k3lat {

struct Term {
    Monomial m;
    uint32_t c = 0;  // in [1, p-1] for stored terms
};

/// Sparse multivariate polynomial: strictly descending terms, no zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, std::vector<Term> terms, bool already_normal = false);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::vector<Term>& terms_mut() { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Term& lead() const { return terms_.front(); }
    int degree() const { return terms_.empty() ? -1 : max_deg_; }
    bool homogeneous() const;

    /// Re-sort under the ring's order and combine equal monomials.
    void normalize();

    void negate();
    void make_monic();

    bool operator==(const Poly& o) const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
    int max_deg_ = -1;
    void recompute_degree();
    friend Poly poly_add(const Poly&, const Poly&);
    friend Poly poly_sub(const Poly&, const Poly&);
};

Poly poly_zero(const RingPtr& ring);
Poly poly_const(const RingPtr& ring, uint32_t c);
Poly poly_var(const RingPtr& ring, int i);
Poly poly_term(const RingPtr& ring, const Monomial& m, uint32_t c);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, uint32_t c);
/// a * (c * m)
Poly poly_mul_term(const Poly& a, const Monomial& m, uint32_t c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, unsigned k);

/// Exact division a / b; throws if the division leaves a remainder.
Poly poly_divexact(const Poly& a, const Poly& b);

/// Partial derivative with respect to variable i.
Poly poly_derivative(const Poly& a, int i);

/// Largest power of variable i dividing every term (0 for the zero poly).
int poly_var_min_power(const Poly& a, int i);
/// Divide out x_i^k (caller guarantees divisibility).
Poly poly_shift_var_down(const Poly& a, int i, int k);

/// Evaluate at a point given as coordinates in [0, p).
uint32_t poly_eval(const Poly& a, std::span<const uint32_t> point);
/// All first partials evaluated at a point.
std::vector<uint32_t> poly_gradient_eval(const Poly& a, std::span<const uint32_t> point);

/// Substitute x_i -> args[i] (polynomials in a possibly different ring).
Poly poly_compose(const Poly& a, const std::vector<Poly>& args, const RingPtr& target);

/// Map into another ring with at least as many variables, sending x_i to
/// x_{var_map[i]}.
Poly poly_rename(const Poly& a, const RingPtr& target, const std::vector<int>& var_map);

/// Dense random homogeneous form of the given degree (all monomials, random
/// coefficients, possibly zero ones dropped).
Poly random_form(const RingPtr& ring, int degree, class Rng& rng);

/// All monomials of the given total degree, in descending ring order.
std::vector<Monomial> monomials_of_degree(const PolyRing& ring, int degree);
/// Number of monomials of total degree d in n variables.
uint64_t count_monomials(int nvars, int degree);

}  // namespace k3lat

#endif
