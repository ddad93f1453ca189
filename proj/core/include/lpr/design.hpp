#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace lpr {

/// Strictly increasing, finite measurement abscissae.
///
/// Instances are immutable once built. The only ways to obtain one are
/// validate_design() and symmetric_design(), so every Design in flight
/// satisfies the ordering invariant.
class Design {
 public:
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }

  /// Smallest adjacent difference; +inf for a single-point design.
  double min_gap() const noexcept { return min_gap_; }

  /// Set only for designs built by symmetric_design(), whose offsets are
  /// mirrored exactly.
  std::optional<double> symmetry_center() const noexcept { return center_; }

  bool operator==(const Design& other) const noexcept { return points_ == other.points_; }

 private:
  Design(std::vector<double> points, std::optional<double> center);

  std::vector<double> points_;
  double min_gap_;
  std::optional<double> center_;

  friend Design validate_design(std::vector<double> raw_points);
  friend Design symmetric_design(double t, double h, int half_count, bool include_center);
};

/// Sorts and validates raw abscissae. Throws ValidationError on empty input,
/// non-finite values or duplicates.
Design validate_design(std::vector<double> raw_points);

/// Points t +- (k/half_count) h for k = 1..half_count, plus t when requested.
Design symmetric_design(double t, double h, int half_count, bool include_center);

/// Mirror image of the design about t, i.e. {2t - x_i}.
Design reflect(const Design& design, double t);

/// True when x_i - t == -(x_{N-1-i} - t) to within tol for every i.
bool is_symmetric_about(const Design& design, double t, double tol);

/// Symmetry test with the library's policy: exact for designs built by
/// symmetric_design() around t, tolerance 1e-12 * h otherwise.
bool is_symmetric_design(const Design& design, double t, double h);

/// Largest |x_i - t|; the bandwidth that maps the whole design onto [-1, 1].
double default_bandwidth(const Design& design, double t);

/// Measurements aligned with a Design.
class SampleSet {
 public:
  SampleSet(const Design& design, std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

enum class WeightKind { uniform, linear_minus, linear_plus, quadratic, tabulated };

/// Non-negative weight function W on [-1, 1], zero outside.
class WeightScheme {
 public:
  /// Any kind except tabulated.
  explicit WeightScheme(WeightKind kind = WeightKind::quadratic);

  /// Piecewise-linear interpolation through (y, W(y)) nodes. Nodes must lie
  /// in [-1, 1], be strictly increasing in y and carry W >= 0.
  static WeightScheme tabulated(std::vector<std::pair<double, double>> table);

  WeightKind kind() const noexcept { return kind_; }
  std::span<const std::pair<double, double>> table() const noexcept { return table_; }

  double operator()(double y) const;

  /// Command-line spelling: uniform, linear-minus, linear-plus, quadratic, table.
  std::string_view name() const noexcept;

 private:
  WeightKind kind_;
  std::vector<std::pair<double, double>> table_;
};

/// Parses uniform | linear-minus | linear-plus | quadratic.
WeightScheme parse_weight_kind(std::string_view name);

/// Everything needed to define one local fit.
struct LprSpec {
  double t = 0.0;
  int q = 0;
  int p = 2;
  double h = 1.0;
  WeightScheme scheme{};

  static constexpr int kMaxOrder = 10;

  /// Throws ValidationError unless 0 <= q < p <= kMaxOrder, h > 0 and t finite.
  void validate() const;
};

/// Scaled abscissae (x_i - t) / h.
std::vector<double> scaled_abscissae(const Design& design, double t, double h);

/// w_i = W((x_i - t) / h).
std::vector<double> eval_weights(const WeightScheme& scheme, const Design& design, double t, double h);

}  // namespace lpr
