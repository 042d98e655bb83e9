#include "simmse/rng.hpp"

namespace simmse {

RngStream derive_stream(std::uint64_t master_seed,
                        std::initializer_list<std::uint64_t> path) {
  StreamKey key = master_key(master_seed);
  for (std::uint64_t counter : path) {
    key = key.child(counter);
  }
  return key.stream();
}

}  // namespace simmse
