// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "features/metrics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "common/error.hpp"
#include "common/numeric.hpp"

namespace nwa::features {
namespace {

// One r2c plan per length, executed through the new-array interface so a
// single plan serves every caller.
struct PlanCache {
  std::mutex mu;
  std::map<std::size_t, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [n, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(std::size_t n) {
    std::lock_guard lock(mu);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(n, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftScratch {
  std::size_t n = 0;
  double* in = nullptr;
  fftw_complex* out = nullptr;

  ~FftScratch() { release(); }
  void release() {
    if (in) fftw_free(in);
    if (out) fftw_free(out);
    in = nullptr;
    out = nullptr;
  }
  void reserve(std::size_t len) {
    if (len <= n) return;
    release();
    n = len;
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
  }
};

std::size_t quartile_index(int j, std::size_t w) {
  const auto idx = nint(static_cast<double>(j) * static_cast<double>(w) / 4.0);
  return std::min(static_cast<std::size_t>(std::max<long long>(idx, 0)), w - 1);
}

}  // namespace

double WindowMetrics::get(int metric_index) const {
  switch (metric_index) {
    case 1: return q1;
    case 2: return q2;
    case 3: return q3;
    case 4: return avg;
    case 5: return std;
    case 6: return f;
    default: fail(ErrorKind::kConfig, "metric index out of range");
  }
}

double max_dft_modulus(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  thread_local FftScratch scratch;
  scratch.reserve(n);
  fftw_plan plan = plan_cache().get(n);
  std::copy(x.begin(), x.end(), scratch.in);
  fftw_execute_dft_r2c(plan, scratch.in, scratch.out);
  double best = 0.0;
  // Real input: bins above n/2 mirror the conjugates of the lower half.
  for (std::size_t k = 0; k <= n / 2; ++k) {
    best = std::max(best, std::hypot(scratch.out[k][0], scratch.out[k][1]));
  }
  return best;
}

WindowMetrics compute_metrics(std::span<const double> buffer) {
  const std::size_t w = buffer.size();
  if (w == 0) fail(ErrorKind::kConfig, "empty window");
  thread_local std::vector<double> sorted;
  sorted.assign(buffer.begin(), buffer.end());
  std::sort(sorted.begin(), sorted.end());
  WindowMetrics m;
  m.q1 = sorted[quartile_index(1, w)];
  m.q2 = sorted[quartile_index(2, w)];
  m.q3 = sorted[quartile_index(3, w)];
  double sum = 0.0;
  for (double v : buffer) sum += v;
  m.avg = sum / static_cast<double>(w);
  double ss = 0.0;
  for (double v : buffer) ss += (v - m.avg) * (v - m.avg);
  m.std = std::sqrt(ss / static_cast<double>(w));
  m.f = max_dft_modulus(buffer);
  return m;
}

std::optional<WindowMetrics> compute_metrics(const WindowState& state) {
  if (!state.full()) return std::nullopt;
  thread_local std::vector<double> buffer;
  state.copy_contents(buffer);
  const std::size_t w = buffer.size();
  std::vector<double>& sorted = buffer;
  WindowMetrics m;
  m.f = max_dft_modulus(buffer);
  m.avg = state.mean();
  m.std = std::sqrt(state.variance());
  std::sort(sorted.begin(), sorted.end());
  m.q1 = sorted[quartile_index(1, w)];
  m.q2 = sorted[quartile_index(2, w)];
  m.q3 = sorted[quartile_index(3, w)];
  return m;
}

}  // namespace nwa::features
