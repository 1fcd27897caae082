#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "uemb/space.hpp"

namespace uemb::testing {

inline Rat r(std::int64_t p, std::int64_t q = 1) { return Rat(BigInt(p), BigInt(q)); }

inline RatVector rv(std::initializer_list<Rat> c) { return RatVector(c); }

/// Random centrally symmetric polytope in dimension `dim` with at most
/// 2 * `half` vertices, integer coordinates in [-5, 5].
inline PolyhedralSpace<Rat> random_symmetric_space(std::mt19937_64& rng, std::size_t dim,
                                                   std::size_t half) {
  half = std::max(half, dim);  // fewer points can never span
  for (;;) {
    std::vector<RatVector> pts;
    for (std::size_t i = 0; i < half; ++i) {
      RatVector p(dim);
      for (auto& c : p) c = Rat(static_cast<std::int64_t>(rng() % 11) - 5);
      pts.push_back(p);
    }
    try {
      return make_space(pts, "random", true);
    } catch (const Error&) {
      // not full-dimensional; draw again
    }
  }
}

/// Rational points on the unit circle: ((1-t^2)/(1+t^2), 2t/(1+t^2)) for
/// t = j/(m-j), j = 0..m-1, symmetrized. Gives a 2m-gon inscribed in the disk.
inline PolyhedralSpace<Rat> rational_disk_polygon(std::int64_t m) {
  std::vector<RatVector> pts;
  for (std::int64_t j = 0; j < m; ++j) {
    const Rat t = r(j, m - j);
    const Rat den = 1 + t * t;
    pts.push_back({Rat((1 - t * t) / den), Rat(2 * t / den)});
  }
  return make_space(pts, "disk" + std::to_string(2 * m), true);
}

inline PolyhedralSpace<Rat> hexagon() {
  return make_space<Rat>({rv({r(1), r(0)}), rv({r(0), r(1)}), rv({r(-1), r(1)})}, "hexagon", true);
}

}  // namespace uemb::testing
