#ifndef K3LAT_SERIALIZE_HPP
#define K3LAT_SERIALIZE_HPP

#include <string>

#include "k3.hpp"

namespace k3lat {

/// On-disk layout for a record at path P:
///   P            JSON manifest: lattice data, class, invariants, seed,
///                trace, sampler chains, certificate (when attached)
///   P.surface    surface ideal in the text format
///   P.curve      marked curve ideal (when the record has one)
/// All writes are atomic (write to a temp file, then rename).
void save_record(const K3Record& K, const std::string& path);
K3Record load_record(const std::string& path);

/// Attach a certificate to an existing manifest.
void save_certificate(const std::string& path, const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
std::string lattice_report_json(const LatticeK3& L, const DivisorClass& pol);

/// Model cache: key (g, p, format-version); files live under dir.
bool model_cache_lookup(const std::string& dir, int g, uint32_t p, ModelRecord& out);
void model_cache_store(const std::string& dir, const ModelRecord& rec, uint32_t p);

/// mukai_model with a disk cache: models are seed-independent up to
/// coordinate choice, so the first construction is reused unless `fresh`.
ModelRecord mukai_model_cached(int g, uint32_t p, Rng& rng, const std::string& cache_dir,
                               bool fresh = false);

}  // namespace k3lat

#endif
