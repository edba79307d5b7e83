#pragma once

#include <cstddef>

namespace walkspectra {

// Resource ceilings, overridable through WALKSPECTRA_MAX_N and
// WALKSPECTRA_MEM_MB. Values are re-read on every call.
struct Limits {
  int max_partition_n = 64;
  std::size_t memory_mb = 4096;

  static Limits from_environment();
};

// Throws std::length_error when `bytes` exceeds the configured memory budget.
void require_memory(std::size_t bytes, const char* what);

// Worker count used when a caller passes threads <= 0.
int default_thread_count();

}  // namespace walkspectra
