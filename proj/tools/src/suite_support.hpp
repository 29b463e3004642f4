#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hopfmod/cli/report.hpp"
#include "hopfmod/manifold.hpp"

namespace hopf::cli {

enum class Tier { exact, first, second };

class Recorder {
 public:
  Recorder(const RunConfig& cfg, Report& rep) : cfg_(cfg), rep_(rep) {}

  double tol(Tier t) const {
    const double base = t == Tier::exact ? cfg_.tol.exact : t == Tier::first ? cfg_.tol.first : cfg_.tol.second;
    return base * cfg_.tolerance_scale;
  }
  // Fixed thresholds that sit outside the three tiers still follow --tolerance-scale.
  double fixed(double t) const { return t * cfg_.tolerance_scale; }

  void below(const std::string& id, const std::string& anchor, double residual, double tolerance, std::string note = {}) {
    const bool ok = std::isfinite(residual) && residual <= tolerance;
    rep_.checks.push_back({id, anchor, ok ? Status::pass : Status::fail, residual, tolerance, std::move(note)});
  }
  void below(const std::string& id, const std::string& anchor, double residual, Tier t, std::string note = {}) {
    below(id, anchor, residual, tol(t), std::move(note));
  }
  // Passes when value stays above the threshold (detectability checks).
  void above(const std::string& id, const std::string& anchor, double value, double threshold, std::string note = {}) {
    const bool ok = std::isfinite(value) && value > threshold;
    rep_.checks.push_back({id, anchor, ok ? Status::pass : Status::fail, value, threshold, std::move(note)});
  }
  // Exact checks record the number of violations as the residual.
  void exact(const std::string& id, const std::string& anchor, long violations, std::string note = {}) {
    rep_.checks.push_back({id, anchor, violations == 0 ? Status::pass : Status::fail, static_cast<double>(violations),
                           0.0, std::move(note)});
  }
  void info(const std::string& id, const std::string& anchor, double value, std::string note = {}) {
    rep_.checks.push_back({id, anchor, Status::info, value, std::nullopt, std::move(note)});
  }

  const RunConfig& cfg() const { return cfg_; }

 private:
  const RunConfig& cfg_;
  Report& rep_;
};

// Evaluates f(0..n-1) on `workers` threads; results land in index order.
template <typename T>
std::vector<T> parallel_map(int n, int workers, const std::function<T(int)>& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (workers <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::isnan(x) ? x : std::max(m, x);
  return m;
}

// Per-suite generator so a suite draws the same samples alone or inside `all`.
inline Rng suite_rng(const RunConfig& cfg, std::uint64_t salt) { return Rng(cfg.seed * 0x9E3779B97F4A7C15ULL ^ salt); }

void run_algebra(Recorder& r);
void run_vaisman(Recorder& r);
void run_lorentz(Recorder& r);
void run_charges(Recorder& r);
void run_quantize(Recorder& r);

}  // namespace hopf::cli
