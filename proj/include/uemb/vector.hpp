#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "uemb/scalar.hpp"

namespace uemb {

/// Dense coordinate vector. Points x of X and functionals x* of X* share this type.
template <class T>
using Vec = std::vector<T>;

using RatVector = Vec<Rat>;

template <class T>
using Matrix = std::vector<Vec<T>>;

template <class T>
void require_same_dim(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  require_same_dim(a, b);
  T acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  return dot<T>(std::span<const T>(a), std::span<const T>(b));
}

template <class T>
Vec<T> operator+(const Vec<T>& a, const Vec<T>& b) {
  require_same_dim<T>(a, b);
  Vec<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class T>
Vec<T> operator-(const Vec<T>& a, const Vec<T>& b) {
  require_same_dim<T>(a, b);
  Vec<T> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class T>
Vec<T> operator-(const Vec<T>& a) {
  Vec<T> out(a);
  for (auto& c : out) c = -c;
  return out;
}

template <class T>
Vec<T> scaled(const Vec<T>& a, const T& s) {
  Vec<T> out(a);
  for (auto& c : out) c *= s;
  return out;
}

template <class T>
bool is_zero_vector(const Vec<T>& a) {
  return std::all_of(a.begin(), a.end(), [](const T& c) { return is_zero(c); });
}

/// Coordinate-wise equality under the scalar's policy.
template <class T>
bool same_point(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

/// Lexicographic order; coordinates that compare equal under the policy are ties.
template <class T>
bool lex_less(const Vec<T>& a, const Vec<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sign(T(a[i] - b[i]));
    if (s != 0) return s < 0;
  }
  return a.size() < b.size();
}

/// Index of `p` in `points`, or npos.
template <class T>
std::size_t find_point(const std::vector<Vec<T>>& points, const Vec<T>& p) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (same_point(points[i], p)) return i;
  return static_cast<std::size_t>(-1);
}

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

template <class T>
std::string format_vector(const Vec<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_scalar(v[i]);
  }
  return out + ")";
}

template <class T>
Vec<double> to_double(const Vec<T>& v) {
  Vec<double> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(scalar_traits<T>::to_double(c));
  return out;
}

/// Rank by Gaussian elimination; exact for rationals.
template <class T>
std::size_t rank(Matrix<T> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Largest pivot keeps the float path stable; any nonzero pivot is exact for Rat.
    std::size_t piv = npos;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (is_zero(rows[i][c])) continue;
      if (piv == npos || abs_value(rows[i][c]) > abs_value(rows[piv][c])) piv = i;
    }
    if (piv == npos) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (is_zero(rows[i][c])) continue;
      const T f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Solves the square system M y = rhs; empty result when M is singular.
template <class T>
std::vector<T> solve_square(Matrix<T> m, Vec<T> rhs) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = npos;
    for (std::size_t i = c; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      if (piv == npos || abs_value(m[i][c]) > abs_value(m[piv][c])) piv = i;
    }
    if (piv == npos) return {};
    std::swap(m[c], m[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(m[i][c])) continue;
      const T f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
      rhs[i] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

}  // namespace uemb
