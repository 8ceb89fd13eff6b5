#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gcx {

// All errors raised by the library. Input validation failures, precondition
// violations and internal consistency failures all land here; callers that
// need to distinguish do so by catch site, not by subclass.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

// Vertex sets are bitmasks over the graph's fixed vertex order.
using VSet = std::uint32_t;
// Signed vertex sets: bit 2v = v, bit 2v+1 = v^-1.
using SSet = std::uint64_t;

constexpr int kMaxVertices = 30;

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int lowest_bit(std::uint64_t x) { return __builtin_ctzll(x); }

// Signed vertex index helpers.
inline int sv(int v, bool neg) { return 2 * v + (neg ? 1 : 0); }
inline int sv_vertex(int s) { return s / 2; }
inline bool sv_negative(int s) { return s & 1; }
inline int sv_inverse(int s) { return s ^ 1; }

// Swap v and v^-1 bits in a signed set.
inline SSet sset_inverse(SSet s) {
  const SSet even = 0x5555555555555555ull;
  return ((s & even) << 1) | ((s >> 1) & even);
}

inline SSet sset_of_vset(VSet m) {
  SSet r = 0;
  while (m) {
    int v = lowest_bit(m);
    m &= m - 1;
    r |= (SSet(3) << (2 * v));
  }
  return r;
}

inline VSet vset_of_sset(SSet s) {
  VSet r = 0;
  while (s) {
    int b = lowest_bit(s);
    s &= s - 1;
    r |= (VSet(1) << sv_vertex(b));
  }
  return r;
}

template <typename F>
void for_each_bit(std::uint64_t mask, F&& f) {
  while (mask) {
    int b = lowest_bit(mask);
    mask &= mask - 1;
    f(b);
  }
}

// Chunked parallel loop. Results must be written to preallocated slots so the
// merge order is independent of the schedule.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t nt = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gcx
