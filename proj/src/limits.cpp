#include "walkspectra/limits.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace walkspectra {

namespace {

long long env_integer(const char* name, long long fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long long value = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0) {
    throw std::invalid_argument(std::string(name) + " must be a positive integer, got '" + raw + "'");
  }
  return value;
}

}  // namespace

Limits Limits::from_environment() {
  Limits limits;
  limits.max_partition_n = static_cast<int>(env_integer("WALKSPECTRA_MAX_N", limits.max_partition_n));
  limits.memory_mb = static_cast<std::size_t>(
      env_integer("WALKSPECTRA_MEM_MB", static_cast<long long>(limits.memory_mb)));
  return limits;
}

void require_memory(std::size_t bytes, const char* what) {
  const std::size_t budget = Limits::from_environment().memory_mb * 1024ULL * 1024ULL;
  if (bytes > budget) {
    throw std::length_error(std::string(what) + " needs " + std::to_string(bytes >> 20) +
                            " MiB, above the WALKSPECTRA_MEM_MB budget of " +
                            std::to_string(budget >> 20) + " MiB");
  }
}

int default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace walkspectra
