#ifndef K3LAT_RING_HPP
#define K3LAT_RING_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gf.hpp"
#include "monomial.hpp"

namespace k3lat {

/// Polynomial ring GF(p)[x0..x_{n-1}] with a fixed monomial order.
class PolyRing {
public:
    PolyRing(FieldSpec field, int nvars, Order order = Order::GrevLex, int elim_k = 0)
        : field_(field), nvars_(nvars), order_(order), elim_k_(elim_k) {
        if (nvars < 1 || nvars > kMaxVars)
            throw std::invalid_argument("PolyRing: nvars out of range");
        if (order == Order::Elim && (elim_k < 1 || elim_k >= nvars))
            throw std::invalid_argument("PolyRing: bad elimination block");
        names_.reserve(nvars);
        for (int i = 0; i < nvars; ++i) names_.push_back("x" + std::to_string(i));
    }

    const FieldSpec& field() const { return field_; }
    uint32_t p() const { return field_.p; }
    int nvars() const { return nvars_; }
    Order order() const { return order_; }
    int elim_k() const { return elim_k_; }

    const std::string& var_name(int i) const { return names_[i]; }
    void set_var_names(std::vector<std::string> names) { names_ = std::move(names); }

    int cmp(const Monomial& a, const Monomial& b) const {
        return mono_cmp(a, b, order_, nvars_, elim_k_);
    }

    bool same_as(const PolyRing& o) const {
        return field_ == o.field_ && nvars_ == o.nvars_ && order_ == o.order_ &&
               elim_k_ == o.elim_k_;
    }

private:
    FieldSpec field_;
    int nvars_;
    Order order_;
    int elim_k_;
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(uint32_t p, int nvars, Order order = Order::GrevLex, int elim_k = 0) {
    return std::make_shared<PolyRing>(FieldSpec(p), nvars, order, elim_k);
}

}  // namespace k3lat

#endif
