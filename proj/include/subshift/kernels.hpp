#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subshift/core.hpp"

namespace subshift {

enum class Execution { serial, parallel };

// Number of threads used by parallel kernels; 0 leaves the OpenMP default.
void set_thread_count(int threads);

// Distinct length-m windows of seq, each letter packed into `bits` bits.
// Requires m * bits <= 64.
std::uint64_t count_packed_windows(std::span<const Letter> seq, std::size_t m,
                                   unsigned bits, Execution ex);

// counts[m] for m = 0..max_m.
std::vector<std::uint64_t> packed_window_profile(std::span<const Letter> seq,
                                                 std::size_t max_m, unsigned bits,
                                                 Execution ex);

unsigned bits_for_alphabet(std::size_t size);

}  // namespace subshift
