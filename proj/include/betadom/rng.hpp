#pragma once

#include <cstdint>
#include <stdexcept>

namespace betadom {

// Counter-based random stream. Output i of stream (seed, stream_id) is a
// strong 64-bit hash of (seed, stream_id, i), so equal parameters replay the
// exact sequence and distinct stream_ids give statistically independent
// substreams. No global state; one stream per owner.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : key_(derive_key(seed, stream_id)), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + 0x9e3779b97f4a7c15ULL * ++counter_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1); endpoint 0 is rejected so that
    // quantile functions are always well defined.
    double next_open01() {
        for (;;) {
            double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

  private:
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        std::uint64_t w = stream_id + 0xd1b54a32d192ed03ULL;
        w = (w ^ (w >> 29)) * 0xff51afd7ed558ccdULL;
        w = (w ^ (w >> 32)) * 0xc4ceb9fe1a85ec53ULL;
        w ^= w >> 32;
        return z ^ (w + 0x632be59bd9b4e019ULL);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace betadom
