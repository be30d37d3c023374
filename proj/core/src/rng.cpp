#include "cdasim/rng.hpp"

namespace cdasim {

std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  return mix(mix(seed) ^ mix(stream * 0xd6e8feb86659fd93ULL + 0xa5a5a5a5a5a5a5a5ULL));
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
  // Multiply-shift mapping; bias is span/2^64, far below anything observable.
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(span);
  return lo + static_cast<std::int64_t>(static_cast<std::uint64_t>(wide >> 64));
}

}  // namespace cdasim
