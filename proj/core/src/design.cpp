#include "lpr/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "lpr/errors.hpp"

namespace lpr {
namespace {

// Scaled abscissae that land within a few ulps of the support edge are
// treated as sitting on it, so edge weights such as W(-1) = 2 for 1 - y do
// not vanish because of the rounding in (x - t) / h.
constexpr double kEdgeSnap = 1e-12;

// Weights below this are flushed to exactly zero.
constexpr double kWeightFlush = 1e-300;

}  // namespace

Design::Design(std::vector<double> points, std::optional<double> center)
    : points_(std::move(points)), min_gap_(std::numeric_limits<double>::infinity()), center_(center) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    min_gap_ = std::min(min_gap_, points_[i] - points_[i - 1]);
  }
}

Design validate_design(std::vector<double> raw_points) {
  if (raw_points.empty()) {
    throw ValidationError("design must contain at least one point");
  }
  for (std::size_t i = 0; i < raw_points.size(); ++i) {
    if (!std::isfinite(raw_points[i])) {
      throw ValidationError("non-finite abscissa at index " + std::to_string(i));
    }
  }
  std::sort(raw_points.begin(), raw_points.end());
  auto dup = std::adjacent_find(raw_points.begin(), raw_points.end());
  if (dup != raw_points.end()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "duplicate abscissa " << *dup;
    throw ValidationError(msg.str());
  }
  return Design(std::move(raw_points), std::nullopt);
}

Design symmetric_design(double t, double h, int half_count, bool include_center) {
  if (half_count < 1) {
    throw ValidationError("half_count must be at least 1");
  }
  if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(t)) {
    throw ValidationError("symmetric design needs finite t and h > 0");
  }
  std::vector<double> offsets(static_cast<std::size_t>(half_count));
  for (int k = 1; k <= half_count; ++k) {
    offsets[static_cast<std::size_t>(k - 1)] = (static_cast<double>(k) / half_count) * h;
  }
  std::vector<double> pts;
  pts.reserve(offsets.size() * 2 + 1);
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) pts.push_back(t - *it);
  if (include_center) pts.push_back(t);
  for (double o : offsets) pts.push_back(t + o);
  return Design(std::move(pts), t);
}

Design reflect(const Design& design, double t) {
  std::vector<double> pts;
  pts.reserve(design.size());
  for (double x : design.points()) pts.push_back(t - (x - t));
  return validate_design(std::move(pts));
}

bool is_symmetric_about(const Design& design, double t, double tol) {
  const std::size_t n = design.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = design[i] - t;
    const double hi = design[n - 1 - i] - t;
    if (std::abs(lo + hi) > tol) return false;
  }
  return true;
}

bool is_symmetric_design(const Design& design, double t, double h) {
  if (design.symmetry_center() && *design.symmetry_center() == t) return true;
  return is_symmetric_about(design, t, 1e-12 * h);
}

double default_bandwidth(const Design& design, double t) {
  double h = 0.0;
  for (double x : design.points()) h = std::max(h, std::abs(x - t));
  return h;
}

SampleSet::SampleSet(const Design& design, std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() != design.size()) {
    throw ValidationError("sample count " + std::to_string(values_.size()) + " does not match design size " +
                          std::to_string(design.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("non-finite sample at index " + std::to_string(i));
    }
  }
}

WeightScheme::WeightScheme(WeightKind kind) : kind_(kind) {
  if (kind == WeightKind::tabulated) {
    throw ValidationError("tabulated weight schemes need a table");
  }
}

WeightScheme WeightScheme::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw ValidationError("weight table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [y, w] = table[i];
    if (!std::isfinite(y) || !std::isfinite(w)) throw ValidationError("weight table has non-finite entries");
    if (y < -1.0 || y > 1.0) throw ValidationError("weight table abscissa outside [-1, 1]");
    if (w < 0.0) throw ValidationError("weight table has a negative value");
    if (i > 0 && !(y > table[i - 1].first)) {
      throw ValidationError("weight table abscissae must be strictly increasing");
    }
  }
  WeightScheme s;
  s.kind_ = WeightKind::tabulated;
  s.table_ = std::move(table);
  return s;
}

double WeightScheme::operator()(double y) const {
  if (std::isnan(y)) return 0.0;
  if (std::abs(y) > 1.0) {
    if (std::abs(y) > 1.0 + kEdgeSnap) return 0.0;
    y = std::copysign(1.0, y);
  }
  switch (kind_) {
    case WeightKind::uniform:
      return 1.0;
    case WeightKind::linear_minus:
      return 1.0 - y;
    case WeightKind::linear_plus:
      return 1.0 + y;
    case WeightKind::quadratic:
      return std::max(0.0, 1.0 - y * y);
    case WeightKind::tabulated: {
      if (y < table_.front().first || y > table_.back().first) return 0.0;
      auto hi = std::lower_bound(table_.begin(), table_.end(), y,
                                 [](const auto& node, double v) { return node.first < v; });
      if (hi->first == y) return hi->second;
      auto lo = hi - 1;
      const double frac = (y - lo->first) / (hi->first - lo->first);
      return lo->second + frac * (hi->second - lo->second);
    }
  }
  return 0.0;
}

std::string_view WeightScheme::name() const noexcept {
  switch (kind_) {
    case WeightKind::uniform: return "uniform";
    case WeightKind::linear_minus: return "linear-minus";
    case WeightKind::linear_plus: return "linear-plus";
    case WeightKind::quadratic: return "quadratic";
    case WeightKind::tabulated: return "table";
  }
  return "unknown";
}

WeightScheme parse_weight_kind(std::string_view name) {
  if (name == "uniform") return WeightScheme(WeightKind::uniform);
  if (name == "linear-minus" || name == "linear_minus") return WeightScheme(WeightKind::linear_minus);
  if (name == "linear-plus" || name == "linear_plus") return WeightScheme(WeightKind::linear_plus);
  if (name == "quadratic") return WeightScheme(WeightKind::quadratic);
  throw ValidationError("unknown weight scheme '" + std::string(name) + "'");
}

void LprSpec::validate() const {
  if (!std::isfinite(t)) throw ValidationError("estimation point must be finite");
  if (p < 1) throw ValidationError("p must be at least 1");
  if (p > kMaxOrder) throw ValidationError("p must not exceed " + std::to_string(kMaxOrder));
  if (q < 0) throw ValidationError("q must be non-negative");
  if (q >= p) throw ValidationError("q must be smaller than p");
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("bandwidth h must be positive and finite");
}

std::vector<double> scaled_abscissae(const Design& design, double t, double h) {
  std::vector<double> y;
  y.reserve(design.size());
  for (double x : design.points()) y.push_back((x - t) / h);
  return y;
}

std::vector<double> eval_weights(const WeightScheme& scheme, const Design& design, double t, double h) {
  if (!(h > 0.0)) throw ValidationError("bandwidth h must be positive");
  std::vector<double> w;
  w.reserve(design.size());
  for (double x : design.points()) {
    double v = scheme((x - t) / h);
    if (v < kWeightFlush) v = 0.0;
    w.push_back(v);
  }
  return w;
}

}  // namespace lpr
