#ifndef K3LAT_K3_HPP
#define K3LAT_K3_HPP

#include <optional>

#include "lattice.hpp"
#include "models.hpp"

namespace k3lat {

struct K3ConstructionFailed : std::runtime_error {
    explicit K3ConstructionFailed(const std::string& w) : std::runtime_error(w) {}
};

/// A lattice-polarized K3 surface: the projective model, the marked curve
/// (or node), point sources for both, and the construction trace.
struct K3Record {
    Subscheme surface;
    Sampler sampler;

    // marked datum: a curve, or a node when the second lattice class is the
    // exceptional class of a simple double point
    bool has_curve = false;
    Subscheme curve;
    Sampler curve_sampler;
    bool has_node = false;
    PointP node;

    std::optional<LatticeK3> lattice;  // base lattice (h1 = original model class)
    DivisorClass pol{1, 0};            // current polarization in the base basis
    uint64_t seed = 0;
    uint32_t p = 65521;
    std::string trace;

    int genus() const;  // genus of the polarization (ambient = PP^genus)
};

enum class CertLevel { Fast, Full };

struct CertField {
    std::string name;
    std::string status;  // "PASS", "FAIL" or "SKIPPED"
    std::string value;
    std::string reason;
};

struct Certificate {
    std::vector<CertField> fields;
    bool all_pass() const {
        for (const CertField& f : fields)
            if (f.status == "FAIL") return false;
        return true;
    }
    const CertField* find(const std::string& name) const {
        for (const CertField& f : fields)
            if (f.name == name) return &f;
        return nullptr;
    }
};

/// h0(L) = g + 1 and the expected number of quadric generators
/// C(g+2, 2) - (4g - 2) for a projectively normal model cut by quadrics.
std::pair<int64_t, int64_t> expected_counts(int64_t g);

/// Complete intersection K3 of genus g in {3,4,5} containing a marked curve
/// of degree d and self-intersection n (n = -2 rational, n = 0 elliptic;
/// d = 0, n = -2 marks a simple node instead).
K3Record k3_ci(int g, int d, int n, uint32_t p, Rng& rng);

/// Tri/tetra/pentagonal K3 (marked elliptic pencil of degree d in {3,4,5});
/// base cases on scrolls, higher genus by iterated re-embedding |L + E|.
K3Record k3_scroll(int g, int d, uint32_t p, Rng& rng);

/// Section of the genus-g Mukai model (g in {6,...,10,12}) through a marked
/// datum; marking None gives the plain quasi-polarized model.
K3Record k3_mukai(int g, MarkKind marking, uint32_t p, Rng& rng);

/// Unmarked model of genus g (3 <= g <= 12, g != 11): a random complete
/// intersection for g <= 5, a general Mukai section otherwise.
K3Record k3_plain(int g, uint32_t p, Rng& rng);

/// Projection of a nodal K3 from its node: genus drops by one and the
/// exceptional class becomes a marked conic.
K3Record node_project(const K3Record& K, Rng& rng);

struct EmbedOptions {
    int gen_cap = 0;        // 0: choose from the target genus
    int curve_cap = 3;      // transported curve ideal degree cap
    int residuation_k_max = 4;
};

/// Re-embedding by |a L + b C|.  b > 0 uses residuation through a
/// hypersurface section containing the curve; b < 0 takes forms vanishing
/// along the curve to order -b; lattice screening rejects non big-and-nef
/// classes with a witness.
K3Record embed(const K3Record& K, int a, int b, Rng& rng, const EmbedOptions& opt = {});

/// Certification: fast = generator count + membership + smoothness sample +
/// lattice report; full adds Hilbert invariants, curve containment and the
/// adjunction identity.
Certificate certify(const K3Record& K, CertLevel level, Rng& rng);

/// Generator-degree histogram in the session shape, e.g. "{({2}, 66)}".
std::string degree_histogram(const Subscheme& V);

}  // namespace k3lat

#endif
