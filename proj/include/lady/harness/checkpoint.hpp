#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lady/assimilation/nudging.hpp"
#include "lady/constitutive/stress.hpp"
#include "lady/spectral/field.hpp"

namespace lady {

/// Raised for unreadable, corrupt or mismatched checkpoint and observation files.
class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// On-disk layout, all little-endian:
///
///   char[8]  magic "LADYCKPT"
///   u32      version (1)
///   u32      d, N
///   f64      p, nu0, nu1, t
///   u32      field count F
///   F fields, each d components, each N^{d-1} (N/2+1) coefficients as (re, im) f64
///   pairs, in stored half-spectrum order (last axis fastest, last axis 0..N/2).
///
/// Every field is a velocity-shaped vector field on the header's grid.
struct Checkpoint {
    int dim = 2;
    int n = 0;
    StressParams params;
    double t = 0.0;
    std::vector<SpectralField> fields;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const Checkpoint& ck, const std::string& path);
/// Throws CheckpointError on I/O failure, bad magic, unknown version or truncation.
Checkpoint load_checkpoint(const std::string& path);
/// Same, and rejects a file whose grid differs from `expected`.
Checkpoint load_checkpoint(const std::string& path, const Grid& expected);

/// Observation wire format: magic "LADYOBS1", u32 kind (0 fourier, 1 nodal), u32 d, u32 N,
/// u32 m-or-stride, u32 components, f64 t, u64 count, then `count` complex pairs
/// (fourier) or doubles (nodal).
std::vector<unsigned char> serialize_observation(const Observation& obs);
Observation deserialize_observation(const std::vector<unsigned char>& bytes);

}  // namespace lady
