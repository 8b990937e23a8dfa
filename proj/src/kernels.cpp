#include "subshift/kernels.hpp"

#include <algorithm>

#include "subshift/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subshift {

namespace {

std::uint64_t window_code(std::span<const Letter> seq, std::size_t start, std::size_t m,
                          unsigned bits) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < m; ++i) code = (code << bits) | seq[start + i];
  return code;
}

void check_packing(std::size_t m, unsigned bits) {
  if (bits == 0 || m * bits > 64)
    throw PreconditionError("window does not fit in 64 bits");
}

std::uint64_t count_serial(std::span<const Letter> seq, std::size_t m, unsigned bits) {
  if (seq.size() < m) return 0;
  std::vector<std::uint64_t> codes;
  codes.reserve(seq.size() - m + 1);
  for (std::size_t i = 0; i + m <= seq.size(); ++i) codes.push_back(window_code(seq, i, m, bits));
  std::sort(codes.begin(), codes.end());
  return static_cast<std::uint64_t>(std::unique(codes.begin(), codes.end()) - codes.begin());
}

std::uint64_t count_parallel(std::span<const Letter> seq, std::size_t m, unsigned bits) {
  if (seq.size() < m) return 0;
  const std::size_t windows = seq.size() - m + 1;
  int chunks = 1;
#ifdef _OPENMP
  chunks = omp_get_max_threads();
#endif
  std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chunks; ++c) {
    const std::size_t lo = windows * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
    const std::size_t hi = windows * static_cast<std::size_t>(c + 1) / static_cast<std::size_t>(chunks);
    auto& codes = local[static_cast<std::size_t>(c)];
    if (lo == hi) continue;
    codes.reserve(hi - lo);
    // Rolling code: shift in one letter per step.
    const std::uint64_t mask = m * bits == 64 ? ~0ull : ((1ull << (m * bits)) - 1);
    std::uint64_t code = window_code(seq, lo, m, bits);
    codes.push_back(code);
    for (std::size_t i = lo + 1; i < hi; ++i) {
      code = ((code << bits) | seq[i + m - 1]) & mask;
      codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  }
  std::vector<std::uint64_t> merged;
  for (auto& codes : local) merged.insert(merged.end(), codes.begin(), codes.end());
  std::sort(merged.begin(), merged.end());
  return static_cast<std::uint64_t>(std::unique(merged.begin(), merged.end()) - merged.begin());
}

}  // namespace

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

unsigned bits_for_alphabet(std::size_t size) {
  unsigned bits = 1;
  while ((1ull << bits) < size) ++bits;
  return bits;
}

std::uint64_t count_packed_windows(std::span<const Letter> seq, std::size_t m,
                                   unsigned bits, Execution ex) {
  if (m == 0) return 1;
  check_packing(m, bits);
  return ex == Execution::serial ? count_serial(seq, m, bits) : count_parallel(seq, m, bits);
}

std::vector<std::uint64_t> packed_window_profile(std::span<const Letter> seq,
                                                 std::size_t max_m, unsigned bits,
                                                 Execution ex) {
  std::vector<std::uint64_t> counts(max_m + 1, 0);
  for (std::size_t m = 0; m <= max_m; ++m) counts[m] = count_packed_windows(seq, m, bits, ex);
  return counts;
}

}  // namespace subshift
