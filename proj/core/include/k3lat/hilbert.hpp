#ifndef K3LAT_HILBERT_HPP
#define K3LAT_HILBERT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gb.hpp"

namespace k3lat {

/// Reduced fraction with small integer parts; enough for Hilbert polynomial
/// coefficients at this scale.
struct Frac {
    int64_t num = 0;
    int64_t den = 1;

    Frac() = default;
    Frac(int64_t n, int64_t d = 1);
    Frac operator+(const Frac& o) const;
    Frac operator-(const Frac& o) const;
    Frac operator*(const Frac& o) const;
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool is_integer() const { return den == 1; }
};

/// Invariants of a homogeneous ideal computed from its initial ideal.
struct HilbertSummary {
    int krull_dim = 0;       // dimension of the quotient ring
    int proj_dim = -1;       // krull_dim - 1; -1 for the irrelevant ideal
    int64_t degree = 0;      // normalized leading coefficient
    std::vector<Frac> hp;    // Hilbert polynomial coefficients, low to high
    int64_t chi = 0;         // P(0)

    /// For proj_dim == 1: arithmetic genus 1 - P(0).
    int64_t curve_genus() const { return 1 - chi; }
    /// For proj_dim == 2: sectional genus from P(t) = (d/2)t^2 + c1 t + chi.
    int64_t sectional_genus() const;

    std::string hp_string() const;  // e.g. "13*t^2+2"
};

/// Hilbert series numerator of a monomial ideal over the full polynomial
/// ring: HS = N(t) / (1-t)^nvars.
std::vector<int64_t> hilbert_numerator(const std::vector<Monomial>& lead_terms, int nvars);

/// Full invariants for a homogeneous ideal; computes a Groebner basis when
/// one is not attached.  Throws GBCapExceeded if the basis is out of reach,
/// and std::invalid_argument on affine input.
HilbertSummary hilbert(const Ideal& I, const GBOptions& opt = {});

/// Number of standard monomials of the initial ideal in a given degree (the
/// Hilbert function of the quotient).
int64_t hilbert_function(const Ideal& I_with_gb, int degree);

}  // namespace k3lat

#endif
