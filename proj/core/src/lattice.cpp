#include "k3lat/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace k3lat {

LatticeK3::LatticeK3(int64_t genus, int64_t dd, int64_t nn) : g(genus), d(dd), n(nn) {
    if (g < 2) throw std::invalid_argument("LatticeK3: genus must be >= 2");
    if (n % 2 != 0) throw std::invalid_argument("LatticeK3: h2^2 must be even");
    if (disc() >= 0)
        throw std::invalid_argument("LatticeK3: lattice must be hyperbolic (negative discriminant)");
}

int64_t LatticeK3::genus_of(const DivisorClass& x) const {
    int64_t s = square(x);
    if (s % 2 != 0) throw std::logic_error("genus_of: odd square in an even lattice");
    return s / 2 + 1;
}

namespace {

/// Scan |a|,|b| <= box for R^2 = -2 with 0 <= R.h1 <= 4g, normalized in sign.
std::vector<DivisorClass> scan_minus_two(const LatticeK3& L, int64_t box) {
    std::vector<DivisorClass> out;
    for (int64_t a = -box; a <= box; ++a)
        for (int64_t b = -box; b <= box; ++b) {
            DivisorClass R{a, b};
            if (L.square(R) != -2) continue;
            int64_t deg = L.dot(R, DivisorClass{1, 0});
            if (deg < 0 || (deg == 0 && b < 0)) continue;  // take the + orientation
            if (deg > 4 * L.g) continue;                   // degree-bounded reps only
            out.push_back(R);
        }
    return out;
}

}  // namespace

MinusTwoResult minus_two_classes(const LatticeK3& L, int64_t bound_box) {
    MinusTwoResult res;
    int64_t box = bound_box > 0 ? bound_box : 64;
    std::vector<DivisorClass> cur = scan_minus_two(L, box);
    int stable = 0;
    while (stable < 2 && box < (int64_t(1) << 14)) {
        int64_t next_box = box * 2;
        std::vector<DivisorClass> next = scan_minus_two(L, next_box);
        if (next.size() == cur.size())
            ++stable;
        else
            stable = 0;
        cur = std::move(next);
        box = next_box;
    }
    res.classes = std::move(cur);
    res.box = box;
    res.exhausted = stable >= 2;
    return res;
}

BigNefVerdict is_big_nef_candidate(const LatticeK3& L, const DivisorClass& D) {
    BigNefVerdict v;
    DivisorClass h1{1, 0}, h2{0, 1};
    if (L.square(D) <= 0 || L.dot(D, h1) <= 0) {
        v.ok = false;
        v.witness = std::nullopt;
        return v;
    }
    // marked-class check: when h2 is a (-2)-class it is the class of an
    // actual curve on the surface, so D must meet it non-negatively
    if (L.square(h2) == -2 && L.dot(D, h2) < 0) {
        v.ok = false;
        v.witness = h2;
        return v;
    }
    // certified scan of {R^2 = -2, R.h1 > 0, R.D < 0}: compact for
    // hyperbolic lattices; box doubling until two stable enlargements
    int64_t box = std::max<int64_t>(64, 8 * (std::llabs(D.a) + std::llabs(D.b)) * L.g);
    auto scan = [&](int64_t B) {
        std::vector<DivisorClass> hits;
        for (int64_t a = -B; a <= B; ++a)
            for (int64_t b = -B; b <= B; ++b) {
                DivisorClass R{a, b};
                if (L.square(R) != -2) continue;
                if (L.dot(R, h1) <= 0) continue;
                if (L.dot(R, D) < 0) hits.push_back(R);
            }
        return hits;
    };
    std::vector<DivisorClass> hits = scan(box);
    int stable = 0;
    while (hits.empty() && stable < 2 && box < (int64_t(1) << 14)) {
        box *= 2;
        std::vector<DivisorClass> more = scan(box);
        if (more.empty())
            ++stable;
        else
            hits = std::move(more);
    }
    v.box = box;
    if (!hits.empty()) {
        v.ok = false;
        v.witness = hits.front();
        return v;
    }
    v.ok = true;
    return v;
}

NLTarget nl_target_genus(const LatticeK3& L, const DivisorClass& D) {
    int64_t s = L.square(D);
    if (s <= 0 || s % 2 != 0) throw std::invalid_argument("nl_target_genus: need D^2 > 0 even");
    NLTarget t;
    t.genus = s / 2 + 1;
    t.primitive = std::gcd(std::llabs(D.a), std::llabs(D.b)) == 1;
    return t;
}

std::optional<int64_t> h0_estimate(const LatticeK3& L, const DivisorClass& M) {
    if (M.a == 0 && M.b == 0) return std::nullopt;
    DivisorClass h1{1, 0}, h2{0, 1};
    int64_t s = L.square(M);
    int64_t deg = L.dot(M, h1);
    if (s == -2) {
        // effective (-2)-class: positive degree, or the marked class itself
        if (deg > 0 || (deg == 0 && M == h2)) return 1;
        return std::nullopt;
    }
    if (s < 0) return std::nullopt;
    if (deg <= 0) return std::nullopt;
    if (s == 0) {
        // multiple of a primitive isotropic class: h0(kE) = k + 1
        int64_t k = std::gcd(std::llabs(M.a), std::llabs(M.b));
        return k + 1;
    }
    return 2 + s / 2;
}

BNReport brill_noether_general(const LatticeK3& L, const DivisorClass& D) {
    BNReport rep;
    int64_t s = L.square(D);
    if (s <= 0 || s % 2 != 0)
        throw std::invalid_argument("brill_noether_general: need D^2 > 0 even");
    rep.h0_D = 2 + s / 2;
    int64_t box = 4 * L.g;
    for (int64_t a = -box; a <= box; ++a)
        for (int64_t b = -box; b <= box; ++b) {
            DivisorClass M{a, b};
            DivisorClass N{D.a - a, D.b - b};
            if ((M.a == 0 && M.b == 0) || (N.a == 0 && N.b == 0)) continue;
            auto hM = h0_estimate(L, M);
            if (!hM) continue;
            auto hN = h0_estimate(L, N);
            if (!hN) continue;
            int64_t prod = *hM * *hN;
            if (prod > rep.best_product) {
                rep.best_product = prod;
                rep.M = M;
                rep.N = N;
                rep.h0_M = *hM;
                rep.h0_N = *hN;
            }
        }
    rep.general = rep.best_product < rep.h0_D;
    return rep;
}

}  // namespace k3lat
