#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlaudit {

/// Base class for all toolkit errors. The CLI maps these to exit code 2.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV input; message carries 1-based row and column name.
class CsvError : public AuditError {
 public:
  using AuditError::AuditError;
};

/// Formula syntax or semantic error; carries the byte offset of the problem.
class FormulaError : public AuditError {
 public:
  FormulaError(const std::string& what, std::size_t offset)
      : AuditError(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Rank-deficient design matrix: no silent pseudo-inverse fallback.
class SingularDesignError : public AuditError {
 public:
  using AuditError::AuditError;
};

/// Iterative solver stopped before reaching its tolerance.
class ConvergenceError : public AuditError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : AuditError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Stable seed derivation for per-unit RNG streams (tree i, fold j, ...).
/// splitmix64 applied to the seed xored with a stride keyed by the index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic RNG with explicit samplers so results do not depend on
/// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (two uniforms per draw, no cache).
  double normal();

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Independent stream derived from this generator's construction seed.
  Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Runs body(i) for i in [0, count). Work is split into contiguous blocks,
/// one per worker; callers must write results into index-addressed slots so
/// the outcome is identical for any thread count.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace mlaudit
