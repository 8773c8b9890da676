#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mlaudit/dataset.hpp"

namespace mlaudit {

inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();
inline constexpr int kMtryAll = -1;      // consider every column at each split
inline constexpr int kMtryDefault = -2;  // max(1, floor(p/3))

/// Uniform handle over fitted models. Implementations are immutable after
/// fit; predict is const and safe for concurrent callers. Predictions are
/// always on the original response scale.
class FittedModel {
 public:
  virtual ~FittedModel() = default;
  virtual std::string family() const = 0;
  /// Original dataset feature names the model reads at predict time.
  virtual const std::vector<std::string>& features() const = 0;
  virtual std::vector<double> predict(const Dataset& ds) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

using ModelPtr = std::shared_ptr<const FittedModel>;

struct TreeParams {
  int max_depth = kUnlimitedDepth;  // 0 grows a single leaf
  int min_leaf = 1;
  int mtry = kMtryAll;
  std::uint64_t seed = 0;
};

struct ForestParams {
  int n_trees = 100;
  int mtry = kMtryDefault;
  int max_depth = kUnlimitedDepth;
  int min_leaf = 1;
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

struct SvrParams {
  double c = 1.0;
  double gamma = 1.0;
  double epsilon = 0.1;
  double tol = 1e-3;
  std::uint64_t max_iter = 0;  // 0: 100000 * n
};

struct LmSpec {
  std::string formula;
};

struct TreeSpec {
  std::vector<std::string> features;
  TreeParams params;
};

struct RfSpec {
  std::vector<std::string> features;
  ForestParams params;
};

struct SvrSpec {
  std::vector<std::string> features;
  SvrParams params;
};

/// Fixed-value predictor (plan-independent when value is set; otherwise the
/// training response mean). Useful as a baseline and in diagnostics.
struct ConstantSpec {
  std::optional<double> value;
};

struct ModelSpec {
  std::variant<LmSpec, TreeSpec, RfSpec, SvrSpec, ConstantSpec> family_spec;
  std::string id;  // report label; defaults to the family name when empty

  std::string family() const;
  std::string label() const { return id.empty() ? family() : id; }
};

/// Fits the requested family on ds. threads caps fit-time parallelism
/// (forest trees); results are identical for any thread count.
ModelPtr fit_model(const ModelSpec& spec, const Dataset& ds, int threads = 1);

/// Copy of spec with the stochastic-family seed replaced (no-op for lm,
/// svr, constant). Used to derive per-fold streams during cross-validation.
ModelSpec with_seed(ModelSpec spec, std::uint64_t seed);
std::uint64_t spec_seed(const ModelSpec& spec);

nlohmann::json spec_to_json(const ModelSpec& spec);
ModelSpec spec_from_json(const nlohmann::json& j);

/// Versioned JSON round-trip for fitted models.
void save_model(const FittedModel& model, const std::string& path);
ModelPtr load_model(const std::string& path);
ModelPtr model_from_json(const nlohmann::json& j);

}  // namespace mlaudit
