#include "grasslat/config.hpp"

#include <cstdlib>
#include <string>

#include "grasslat/exact.hpp"

namespace grasslat {

namespace {

template <typename T>
void read_env(const char* name, T& out) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    if constexpr (std::is_floating_point_v<T>)
      out = static_cast<T>(std::stod(raw));
    else
      out = static_cast<T>(std::stoull(raw));
  } catch (const std::exception&) {
    throw Error(std::string("invalid value for ") + name + ": " + raw);
  }
}

}  // namespace

Config config_from_env(Config base) {
  read_env("GRASSLAT_BUDGET_VECTORS", base.max_vectors);
  read_env("GRASSLAT_MAX_RANK", base.max_rank);
  read_env("GRASSLAT_WORKERS", base.workers);
  read_env("GRASSLAT_SMALL_S1_CONSTANT", base.small_s1_constant);
  if (base.workers == 0) base.workers = 1;
  return base;
}

}  // namespace grasslat
