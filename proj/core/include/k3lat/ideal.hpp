#ifndef K3LAT_IDEAL_HPP
#define K3LAT_IDEAL_HPP

#include <memory>
#include <optional>
#include <vector>

#include "poly.hpp"

namespace k3lat {

/// A reduced Groebner basis together with the data derived from it.
struct GroebnerData {
    std::vector<Poly> basis;        // monic, reduced, sorted by increasing lead
    std::vector<Monomial> initial;  // lead monomials of basis
};

/// Ideal: generator list plus an optional Groebner cache.  Values are
/// immutable after construction; gb() returns a new value carrying the cache.
class Ideal {
public:
    Ideal() = default;
    explicit Ideal(RingPtr ring) : ring_(std::move(ring)) {}
    Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
        drop_zero_gens();
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }
    bool has_gb() const { return gb_ != nullptr; }
    const GroebnerData& gb_data() const { return *gb_; }
    void attach_gb(std::shared_ptr<const GroebnerData> gb) { gb_ = std::move(gb); }

    bool homogeneous() const {
        for (const Poly& g : gens_)
            if (!g.homogeneous()) return false;
        return true;
    }

    int max_gen_degree() const {
        int d = 0;
        for (const Poly& g : gens_) d = std::max(d, g.degree());
        return d;
    }

private:
    void drop_zero_gens() {
        std::erase_if(gens_, [](const Poly& g) { return g.is_zero(); });
    }
    RingPtr ring_;
    std::vector<Poly> gens_;
    std::shared_ptr<const GroebnerData> gb_;
};

}  // namespace k3lat

#endif
