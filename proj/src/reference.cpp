#include "nlse/reference.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse {

namespace {

constexpr char kMagic[8] = {'N', 'L', 'S', 'R', '0', '0', '0', '1'};

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& buf, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    put_u64(buf, v);
}

struct Parser {
    const unsigned char* p;
    std::size_t left;

    void need(std::size_t n) {
        if (left < n) throw CacheError("reference cache truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
        p += 4;
        left -= 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        p += 8;
        left -= 8;
        return v;
    }
    double f64() {
        const std::uint64_t v = u64();
        double x;
        std::memcpy(&x, &v, 8);
        return x;
    }
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

std::uint32_t scheme_id(Scheme s) {
    switch (s) {
        case Scheme::lie: return 0;
        case Scheme::strang: return 1;
        case Scheme::ewi: return 2;
    }
    throw InvalidInputError("unknown scheme value");
}

std::uint32_t potential_id(const std::string& key) {
    if (key == "zero") return 0;
    if (key == "box4") return 1;
    if (key == "fracpow076") return 2;
    if (key == "fracpow151w") return 3;
    if (key == "fracpow251w") return 4;
    if (key == "harmonic") return 5;
    throw InvalidInputError("potential key has no cache id: " + key);
}

std::string cache_file_name(const ReferenceKey& key) {
    (void)potential_id(key.potential);  // reject unknown keys early
    std::string name = "ref_" + key.potential + "_" + key.initial + "_" +
                       scheme_name(key.scheme) + "_N" + std::to_string(key.grid.n) + "_tau" +
                       fmt(key.tau_e) + "_T" + fmt(key.T) + "_beta" + fmt(key.beta) + "_sigma" +
                       fmt(key.sigma) + "_q" + std::to_string(key.oversample) + "_a" +
                       fmt(key.grid.a) + "_b" + fmt(key.grid.b) + ".nlsr";
    return name;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("NLSE_CACHE_DIR"); env && *env) return env;
    return std::filesystem::path("nlse_cache");
}

void write_reference(const std::filesystem::path& path, const ReferenceKey& key,
                     const SpectralField& field) {
    if (field.grid != key.grid) throw InvalidInputError("write_reference: grid mismatch");

    std::string buf;
    buf.reserve(76 + 16 * static_cast<std::size_t>(key.grid.n));
    buf.append(kMagic, 8);
    put_f64(buf, key.grid.a);
    put_f64(buf, key.grid.b);
    put_u64(buf, static_cast<std::uint64_t>(key.grid.n));
    put_f64(buf, key.tau_e);
    put_f64(buf, key.T);
    put_u32(buf, scheme_id(key.scheme));
    put_f64(buf, key.beta);
    put_f64(buf, key.sigma);
    put_u32(buf, potential_id(key.potential));
    put_u32(buf, static_cast<std::uint32_t>(key.oversample));
    for (const cplx& c : field.coeffs) {
        put_f64(buf, c.real());
        put_f64(buf, c.imag());
    }

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write cache file: " + tmp.string());
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw CacheError("short write to cache file: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);  // commit point
}

SpectralField read_reference(const std::filesystem::path& path, const ReferenceKey& key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file: " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (raw.size() < 8 || std::memcmp(raw.data(), kMagic, 8) != 0)
        throw CacheError("bad cache magic: " + path.string());

    Parser ps{reinterpret_cast<const unsigned char*>(raw.data()) + 8, raw.size() - 8};
    const double a = ps.f64();
    const double b = ps.f64();
    const std::uint64_t n = ps.u64();
    const double tau_e = ps.f64();
    const double T = ps.f64();
    const std::uint32_t sid = ps.u32();
    const double beta = ps.f64();
    const double sigma = ps.f64();
    const std::uint32_t pid = ps.u32();
    const std::uint32_t q = ps.u32();

    if (a != key.grid.a || b != key.grid.b || n != static_cast<std::uint64_t>(key.grid.n) ||
        tau_e != key.tau_e || T != key.T || sid != scheme_id(key.scheme) || beta != key.beta ||
        sigma != key.sigma || pid != potential_id(key.potential) ||
        q != static_cast<std::uint32_t>(key.oversample))
        throw CacheError("cache metadata does not match the requested key: " + path.string());

    if (ps.left != 16 * static_cast<std::size_t>(n))
        throw CacheError("cache payload length mismatch: " + path.string());

    SpectralField field(key.grid);
    for (int i = 0; i < key.grid.n; ++i) {
        const double re = ps.f64();
        const double im = ps.f64();
        field.coeffs[i] = cplx(re, im);
    }
    return field;
}

SpectralField compute_reference(const ReferenceKey& key, const std::filesystem::path& cache_dir) {
    const std::filesystem::path path = cache_dir / cache_file_name(key);
    if (std::filesystem::exists(path)) {
        try {
            return read_reference(path, key);
        } catch (const CacheError&) {
            // corrupt or stale: fall through to recompute
        }
    }

    SchemeRun run;
    run.scheme = key.scheme;
    run.tau = key.tau_e;
    run.T = key.T;
    run.grid = key.grid;
    run.potential = make_potential(key.potential);
    run.f = Nonlinearity{key.beta, key.sigma};
    run.initial = make_initial_data(key.initial);
    run.oversample = key.oversample;

    const Trajectory traj = evolve(run);
    const SpectralField& field = traj.fields.back();

    std::filesystem::create_directories(cache_dir);
    write_reference(path, key, field);
    return field;
}

}  // namespace nlse
