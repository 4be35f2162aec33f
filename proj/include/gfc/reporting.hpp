#ifndef GFC_REPORTING_HPP
#define GFC_REPORTING_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace gfc {

/// 17 significant digits: enough for byte-identical reproduction of
/// the underlying double.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Deterministic pseudo-random doubles in [-1, 1] (splitmix64 core);
/// used only by checks and tests, never by the product computations.
struct DetRng {
  std::uint64_t state;
  explicit DetRng(std::uint64_t seed) : state(seed) {}
  double next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return 2.0 * (static_cast<double>(z >> 11) / 9007199254740992.0) - 1.0;
  }
};

/// Least-squares slope of log(err) against log(h): the observed
/// convergence order for a sequence of (h, err) pairs.
double fitted_order(const std::vector<double>& h, const std::vector<double>& err);

/// Writes text to path, creating parent directories as needed.
void write_file(const std::string& path, const std::string& text);

}  // namespace gfc

#endif
