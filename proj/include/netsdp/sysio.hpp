#ifndef NETSDP_SYSIO_HPP
#define NETSDP_SYSIO_HPP

#include <string>

#include "netsdp/sysmodel.hpp"

namespace netsdp {

// JSON system format, version 1. Fields:
//   version: 1
//   n:       subsystem count
//   blocks:  [{alpha, m, d}, ...]
//   edges:   directed [i, j] pairs, 1-based
//   A:       {"i,j": row-major entries} for diagonal and coupling blocks
//   B, C, D: per-subsystem row-major entries
// Numbers round-trip exactly (shortest representation that parses back to
// the same double).
std::string system_to_json(const NetworkedSystem& sys);
NetworkedSystem system_from_json(const std::string& text);

// File variants; IoError on missing files, parse failures, or bad content.
void write_system(const NetworkedSystem& sys, const std::string& path);
NetworkedSystem read_system(const std::string& path);

}  // namespace netsdp

#endif  // NETSDP_SYSIO_HPP
