// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference implementations used by unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace nwa::oracle {

inline std::int64_t round_half_away(double x) {
  const double r = std::floor(std::fabs(x) + 0.5);
  return static_cast<std::int64_t>(x < 0 ? -r : r);
}

/// All interior strict minima of `x`.
inline std::vector<std::int64_t> all_minima(const std::vector<double>& x) {
  std::vector<std::int64_t> out;
  for (std::size_t n = 1; n + 1 < x.size(); ++n) {
    if (x[n - 1] > x[n] && x[n] < x[n + 1]) out.push_back(static_cast<std::int64_t>(n));
  }
  return out;
}

inline std::optional<std::int64_t> minima_spacing(const std::vector<double>& x) {
  auto m = all_minima(x);
  if (m.size() < 2) return std::nullopt;
  return m[1] - m[0];
}

struct Windows {
  std::int64_t q1, q2, q3, avg;
};

inline Windows windows(std::vector<std::int64_t> v, double r_min, double r_max) {
  std::sort(v.begin(), v.end());
  const auto size = static_cast<std::int64_t>(v.size());
  const std::int64_t m = round_half_away(2.0 * r_max / r_min);
  auto at = [&](int j) {
    std::int64_t idx = round_half_away(j * static_cast<double>(size) / 4.0);
    if (idx > size - 1) idx = size - 1;
    return v[static_cast<std::size_t>(idx)];
  };
  long double total = 0;
  for (auto x : v) total += x;
  return {m * at(1), m * at(2), m * at(3),
          m * round_half_away(static_cast<double>(total / static_cast<long double>(size)))};
}

/// O(w^2) DFT, maximum modulus over every bin.
inline double naive_max_dft(const std::vector<double>& x, std::size_t* argmax = nullptr) {
  const std::size_t w = x.size();
  double best = -1.0;
  for (std::size_t k = 0; k < w; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < w; ++n) {
      const double ang = -2.0 * M_PI * static_cast<double>(k * n % w) / static_cast<double>(w);
      acc += x[n] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      if (argmax) *argmax = k;
    }
  }
  return best;
}

struct Metrics {
  double q1, q2, q3, avg, std, f;
};

inline Metrics batch_metrics(const std::vector<double>& x) {
  std::vector<double> y = x;
  std::sort(y.begin(), y.end());
  const auto w = static_cast<std::int64_t>(y.size());
  auto q = [&](int j) {
    std::int64_t idx = round_half_away(j * static_cast<double>(w) / 4.0);
    return y[static_cast<std::size_t>(std::min(idx, w - 1))];
  };
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(w);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {q(1), q(2), q(3), mean, std::sqrt(ss / static_cast<double>(w)), naive_max_dft(x)};
}

/// Two-pass sample variance (ddof = 1); zero below two values.
inline double sample_variance(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-9) {
  return std::fabs(a - b) <= std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs_floor);
}

/// Best cluster->class assignment by depth-first enumeration in
/// lexicographic order; the first strictly better total wins.
struct MappingResult {
  std::vector<int> labels;
  std::uint64_t matched = 0;
};

inline void mapping_dfs(const std::vector<std::vector<std::uint64_t>>& c, std::vector<int>& cur,
                        std::vector<bool>& used, std::uint64_t sum, MappingResult& best, bool& have) {
  const std::size_t m = c.size();
  if (cur.size() == m) {
    if (!have || sum > best.matched) {
      best.labels = cur;
      best.matched = sum;
      have = true;
    }
    return;
  }
  const std::size_t k = cur.size();
  for (std::size_t y = 0; y < m; ++y) {
    if (used[y]) continue;
    used[y] = true;
    cur.push_back(static_cast<int>(y));
    mapping_dfs(c, cur, used, sum + c[k][y], best, have);
    cur.pop_back();
    used[y] = false;
  }
}

inline MappingResult brute_mapping(const std::vector<std::vector<std::uint64_t>>& c) {
  MappingResult best;
  std::vector<int> cur;
  std::vector<bool> used(c.size(), false);
  bool have = false;
  mapping_dfs(c, cur, used, 0, best, have);
  return best;
}

}  // namespace nwa::oracle
