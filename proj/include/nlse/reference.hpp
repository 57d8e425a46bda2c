#pragma once

#include <filesystem>
#include <string>

#include "nlse/grid.hpp"
#include "nlse/integrators.hpp"

namespace nlse {

/// Everything that determines a reference solution (and its cache file).
struct ReferenceKey {
    Grid grid;                // interval and N_e
    double tau_e = 1e-5;
    double T = 1.0;
    Scheme scheme = Scheme::strang;
    double beta = -1.0;
    double sigma = 1.0;
    std::string potential;    // built-in key
    std::string initial;      // built-in key (filename only; not in the header)
    int oversample = 8;
};

/// Stable ids for the binary header.
std::uint32_t scheme_id(Scheme s);
std::uint32_t potential_id(const std::string& key);

/// Deterministic cache file name encoding the full key.
std::string cache_file_name(const ReferenceKey& key);

/// $NLSE_CACHE_DIR if set, else ./nlse_cache.
std::filesystem::path default_cache_dir();

/// Binary layout: magic "NLSR0001"; little-endian f64 a, f64 b, u64 N,
/// f64 tau_e, f64 T, u32 scheme, f64 beta, f64 sigma, u32 potential,
/// u32 oversample; then 2N f64 (re, im) pairs in canonical l-order.
/// Writes are atomic: temp file in the same directory, then rename.
void write_reference(const std::filesystem::path& path, const ReferenceKey& key,
                     const SpectralField& field);

/// Throws CacheError on bad magic, truncation, or metadata that does not
/// match `key`.
SpectralField read_reference(const std::filesystem::path& path, const ReferenceKey& key);

/// Cached get-or-compute: a valid cache file is returned as-is; a missing
/// or corrupt one triggers recomputation (STFS run at the key's resolution)
/// and an atomic rewrite.
SpectralField compute_reference(const ReferenceKey& key, const std::filesystem::path& cache_dir);

}  // namespace nlse
