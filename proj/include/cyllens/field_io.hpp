#pragma once

#include "cyllens/field.hpp"

#include <cstdint>
#include <string>

namespace cyllens {

/// FNV-1a 64-bit hash, used as the field blob checksum.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const void* data, std::size_t len);

/// Writes the raw little-endian float64 blob at `path` (node order t-major,
/// then x3, x2, x1, components u1 u2 u3 p f1 f2 f3 innermost) and the text
/// sidecar header at `path + ".hdr"`. Returns the blob checksum.
std::string write_field(const SpaceTimeField& f, const std::string& path);

/// Reads blob + sidecar back; verifies magic and checksum. The result has no
/// analytic closure. Identically-zero components are stored implicitly.
SpaceTimeField read_field(const std::string& path);

} // namespace cyllens
