#include "structcat/parallel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace structcat {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("STRUCTCAT_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  std::string text(env);
  std::size_t used = 0;
  long cap = 0;
  try {
    cap = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || cap <= 0)
    throw std::invalid_argument("STRUCTCAT_THREADS must be a positive integer, got '" + text + "'");
  // Not clamped to the core count, so multi-worker merges stay testable on
  // small machines.
  return static_cast<unsigned>(std::min(cap, 256L));
}

}  // namespace structcat
