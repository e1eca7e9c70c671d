#pragma once

#include <string>

#include "core/coefficients.hpp"

namespace rslab {

// Binary cache layout (all integers little-endian):
//   magic "RST1" | version u16 | n_max u64 | kappa u16 | checksum u64
// followed by n_max signed 128-bit tau values in index order.  Only tau is
// persisted; every derived array is recomputed on load so the stored file
// stays the single source of truth.
inline constexpr char kCacheMagic[4] = {'R', 'S', 'T', '1'};
inline constexpr uint16_t kCacheVersion = 1;

void save_table(const std::string& path, const CoefficientTable& table);
CoefficientTable load_table(const std::string& path);

// Text import: one "n tau(n)" pair per line, contiguous from n = 1.
// Imports are cross-checked against the bundled sieve up to n = 1e4 and
// rejected on any disagreement.
CoefficientTable import_external_tau(const std::string& path);

}  // namespace rslab
