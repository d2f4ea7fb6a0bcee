#include "brandgraph/rng.hpp"

#include <stdexcept>

namespace brandgraph {

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::next_below: n must be > 0");
  // Reject draws from the tail that would bias small residues.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace brandgraph
