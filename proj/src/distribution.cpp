// Copyright 2026 The qprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qprep/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qprep::dist {

namespace {

constexpr double kInvSqrt2Pi =
    std::numbers::inv_sqrtpi / std::numbers::sqrt2;

double norm_cdf_z(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double norm_pdf_z(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_support(double a, double b) {
  require_finite(a, "support lower bound");
  require_finite(b, "support upper bound");
  if (!(a < b)) {
    throw std::invalid_argument("support must satisfy a < b");
  }
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::Uniform: return "uniform";
    case Family::Exponential: return "exponential";
    case Family::Gaussian: return "gaussian";
    case Family::TruncatedGaussian: return "truncated_gaussian";
    case Family::Mixture: return "mixture";
    case Family::Tabulated: return "tabulated";
  }
  throw std::invalid_argument("unknown family enum value");
}

Family family_from_name(const std::string& name) {
  if (name == "uniform") return Family::Uniform;
  if (name == "exponential") return Family::Exponential;
  if (name == "gaussian") return Family::Gaussian;
  if (name == "truncated_gaussian" || name == "truncated-gaussian") {
    return Family::TruncatedGaussian;
  }
  if (name == "mixture") return Family::Mixture;
  if (name == "tabulated") return Family::Tabulated;
  throw std::invalid_argument("unknown distribution family: " + name);
}

Distribution Distribution::uniform(double a, double b) {
  require_support(a, b);
  Distribution d;
  d.family_ = Family::Uniform;
  d.lo_ = a;
  d.hi_ = b;
  return d;
}

Distribution Distribution::exponential(double rate, std::optional<double> a,
                                       std::optional<double> b) {
  require_finite(rate, "rate");
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  if (a.has_value() != b.has_value()) {
    throw std::invalid_argument("support must give both bounds or neither");
  }
  double lo = a.value_or(0.0);
  double hi = b.value_or(20.0 / rate);
  require_support(lo, hi);
  Distribution d;
  d.family_ = Family::Exponential;
  d.rate_ = rate;
  d.lo_ = lo;
  d.hi_ = hi;
  d.norm_ = -std::expm1(-rate * (hi - lo));
  if (!(d.norm_ > 0.0)) {
    throw std::invalid_argument("exponential mass over support underflows");
  }
  return d;
}

Distribution Distribution::gaussian(double mean, double stddev,
                                    std::optional<double> a,
                                    std::optional<double> b) {
  require_finite(mean, "mean");
  require_finite(stddev, "stddev");
  if (!(stddev > 0.0)) throw std::invalid_argument("stddev must be positive");
  if (a.has_value() != b.has_value()) {
    throw std::invalid_argument("support must give both bounds or neither");
  }
  double lo = a.value_or(mean - 5.0 * stddev);
  double hi = b.value_or(mean + 5.0 * stddev);
  require_support(lo, hi);
  Distribution d;
  d.family_ = Family::Gaussian;
  d.mean_ = mean;
  d.stddev_ = stddev;
  d.lo_ = lo;
  d.hi_ = hi;
  d.norm_ = norm_cdf_z((hi - mean) / stddev) - norm_cdf_z((lo - mean) / stddev);
  if (!(d.norm_ > 0.0)) {
    throw std::invalid_argument("gaussian mass over support underflows");
  }
  return d;
}

Distribution Distribution::truncated_gaussian(double mean, double stddev,
                                              double a, double b) {
  Distribution d = gaussian(mean, stddev, a, b);
  d.family_ = Family::TruncatedGaussian;
  return d;
}

Distribution Distribution::mixture(std::vector<GaussianComponent> components,
                                   std::optional<double> a,
                                   std::optional<double> b) {
  if (components.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  if (a.has_value() != b.has_value()) {
    throw std::invalid_argument("support must give both bounds or neither");
  }
  double wsum = 0.0;
  double env_lo = 0.0;
  double env_hi = 0.0;
  bool first = true;
  for (const auto& c : components) {
    require_finite(c.weight, "component weight");
    require_finite(c.mean, "component mean");
    require_finite(c.stddev, "component stddev");
    if (!(c.weight > 0.0)) {
      throw std::invalid_argument("component weight must be positive");
    }
    if (!(c.stddev > 0.0)) {
      throw std::invalid_argument("component stddev must be positive");
    }
    wsum += c.weight;
    double clo = c.mean - 5.0 * c.stddev;
    double chi = c.mean + 5.0 * c.stddev;
    env_lo = first ? clo : std::min(env_lo, clo);
    env_hi = first ? chi : std::max(env_hi, chi);
    first = false;
  }
  for (auto& c : components) c.weight /= wsum;

  double lo = a.value_or(env_lo);
  double hi = b.value_or(env_hi);
  require_support(lo, hi);

  Distribution d;
  d.family_ = Family::Mixture;
  d.components_ = std::move(components);
  d.lo_ = lo;
  d.hi_ = hi;
  double mass = 0.0;
  for (const auto& c : d.components_) {
    mass += c.weight * (norm_cdf_z((hi - c.mean) / c.stddev) -
                        norm_cdf_z((lo - c.mean) / c.stddev));
  }
  d.norm_ = mass;
  if (!(d.norm_ > 0.0)) {
    throw std::invalid_argument("mixture mass over support underflows");
  }
  return d;
}

Distribution Distribution::tabulated(std::vector<double> xs,
                                     std::vector<double> ps) {
  if (xs.size() != ps.size()) {
    throw std::invalid_argument("tabulated xs and ps must have equal length");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("tabulated needs at least two knots");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_finite(xs[i], "tabulated knot position");
    require_finite(ps[i], "tabulated knot density");
    if (ps[i] < 0.0) {
      throw std::invalid_argument("tabulated densities must be nonnegative");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("tabulated knots must be strictly increasing");
    }
  }
  double raw = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    raw += 0.5 * (ps[i] + ps[i + 1]) * (xs[i + 1] - xs[i]);
  }
  if (!(raw > 0.0)) {
    throw std::invalid_argument("tabulated density must have positive mass");
  }
  Distribution d;
  d.family_ = Family::Tabulated;
  d.lo_ = xs.front();
  d.hi_ = xs.back();
  d.norm_ = raw;
  d.ps_.resize(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) d.ps_[i] = ps[i] / raw;
  d.xs_ = std::move(xs);
  d.cum_.assign(d.xs_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < d.xs_.size(); ++i) {
    d.cum_[i + 1] = d.cum_[i] + 0.5 * (d.ps_[i] + d.ps_[i + 1]) *
                                    (d.xs_[i + 1] - d.xs_[i]);
  }
  return d;
}

double Distribution::pdf(double x) const {
  if (!(x >= lo_) || !(x <= hi_)) return 0.0;
  switch (family_) {
    case Family::Uniform:
      return 1.0 / (hi_ - lo_);
    case Family::Exponential:
      return rate_ * std::exp(-rate_ * (x - lo_)) / norm_;
    case Family::Gaussian:
    case Family::TruncatedGaussian:
      return norm_pdf_z((x - mean_) / stddev_) / (stddev_ * norm_);
    case Family::Mixture: {
      double s = 0.0;
      for (const auto& c : components_) {
        s += c.weight * norm_pdf_z((x - c.mean) / c.stddev) / c.stddev;
      }
      return s / norm_;
    }
    case Family::Tabulated: {
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      std::size_t i = static_cast<std::size_t>(
          std::clamp<std::ptrdiff_t>(it - xs_.begin() - 1, 0,
                                     static_cast<std::ptrdiff_t>(xs_.size()) - 2));
      double dx = xs_[i + 1] - xs_[i];
      double u = (x - xs_[i]) / dx;
      return ps_[i] + (ps_[i + 1] - ps_[i]) * u;
    }
  }
  throw std::logic_error("unreachable family");
}

double Distribution::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  switch (family_) {
    case Family::Uniform:
      return clamp01((x - lo_) / (hi_ - lo_));
    case Family::Exponential:
      return clamp01(std::expm1(-rate_ * (x - lo_)) /
                     std::expm1(-rate_ * (hi_ - lo_)));
    case Family::Gaussian:
    case Family::TruncatedGaussian:
      return clamp01((norm_cdf_z((x - mean_) / stddev_) -
                      norm_cdf_z((lo_ - mean_) / stddev_)) /
                     norm_);
    case Family::Mixture: {
      double s = 0.0;
      for (const auto& c : components_) {
        s += c.weight * (norm_cdf_z((x - c.mean) / c.stddev) -
                         norm_cdf_z((lo_ - c.mean) / c.stddev));
      }
      return clamp01(s / norm_);
    }
    case Family::Tabulated: {
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      std::size_t i = static_cast<std::size_t>(
          std::clamp<std::ptrdiff_t>(it - xs_.begin() - 1, 0,
                                     static_cast<std::ptrdiff_t>(xs_.size()) - 2));
      double dx = xs_[i + 1] - xs_[i];
      double slope = (ps_[i + 1] - ps_[i]) / dx;
      double u = x - xs_[i];
      return clamp01(cum_[i] + ps_[i] * u + 0.5 * slope * u * u);
    }
  }
  throw std::logic_error("unreachable family");
}

namespace {

using nlohmann::json;

void check_allowed_keys(const json& obj,
                        std::initializer_list<const char*> allowed,
                        const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("unknown key \"" + it.key() + "\" in " +
                                  where);
    }
  }
}

double get_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw std::invalid_argument("missing key \"" + std::string(key) + "\" in " +
                                where);
  }
  if (!obj[key].is_number()) {
    throw std::invalid_argument("key \"" + std::string(key) + "\" in " + where +
                                " must be a number");
  }
  return obj[key].get<double>();
}

std::vector<double> get_number_array(const json& obj, const char* key,
                                     const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw std::invalid_argument("key \"" + std::string(key) + "\" in " + where +
                                " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      throw std::invalid_argument("key \"" + std::string(key) + "\" in " +
                                  where + " must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::optional<std::pair<double, double>> parse_support(const json& spec) {
  if (!spec.contains("support")) return std::nullopt;
  auto bounds = get_number_array(spec, "support", "distribution");
  if (bounds.size() != 2) {
    throw std::invalid_argument("support must be a two-element array");
  }
  return std::make_pair(bounds[0], bounds[1]);
}

}  // namespace

Distribution Distribution::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) {
    throw std::invalid_argument("distribution spec must be a JSON object");
  }
  check_allowed_keys(spec, {"family", "params", "support"}, "distribution");
  if (!spec.contains("family") || !spec["family"].is_string()) {
    throw std::invalid_argument("distribution spec needs a string \"family\"");
  }
  Family family = family_from_name(spec["family"].get<std::string>());
  json params = spec.value("params", json::object());
  if (!params.is_object()) {
    throw std::invalid_argument("\"params\" must be a JSON object");
  }
  auto support = parse_support(spec);

  switch (family) {
    case Family::Uniform: {
      check_allowed_keys(params, {}, "uniform params");
      if (!support) {
        throw std::invalid_argument("uniform requires an explicit support");
      }
      return uniform(support->first, support->second);
    }
    case Family::Exponential: {
      check_allowed_keys(params, {"rate"}, "exponential params");
      double rate = get_number(params, "rate", "exponential params");
      if (support) return exponential(rate, support->first, support->second);
      return exponential(rate);
    }
    case Family::Gaussian: {
      check_allowed_keys(params, {"mean", "stddev"}, "gaussian params");
      double mean = get_number(params, "mean", "gaussian params");
      double stddev = get_number(params, "stddev", "gaussian params");
      if (support) return gaussian(mean, stddev, support->first, support->second);
      return gaussian(mean, stddev);
    }
    case Family::TruncatedGaussian: {
      check_allowed_keys(params, {"mean", "stddev"},
                         "truncated_gaussian params");
      double mean = get_number(params, "mean", "truncated_gaussian params");
      double stddev = get_number(params, "stddev", "truncated_gaussian params");
      if (!support) {
        throw std::invalid_argument(
            "truncated_gaussian requires an explicit support");
      }
      return truncated_gaussian(mean, stddev, support->first, support->second);
    }
    case Family::Mixture: {
      check_allowed_keys(params, {"components"}, "mixture params");
      if (!params.contains("components") || !params["components"].is_array()) {
        throw std::invalid_argument("mixture params need a components array");
      }
      std::vector<GaussianComponent> components;
      for (const auto& c : params["components"]) {
        if (!c.is_object()) {
          throw std::invalid_argument("mixture component must be an object");
        }
        check_allowed_keys(c, {"weight", "mean", "stddev"},
                           "mixture component");
        components.push_back({get_number(c, "weight", "mixture component"),
                              get_number(c, "mean", "mixture component"),
                              get_number(c, "stddev", "mixture component")});
      }
      if (support) {
        return mixture(std::move(components), support->first, support->second);
      }
      return mixture(std::move(components));
    }
    case Family::Tabulated: {
      check_allowed_keys(params, {"xs", "ps"}, "tabulated params");
      auto xs = get_number_array(params, "xs", "tabulated params");
      auto ps = get_number_array(params, "ps", "tabulated params");
      if (support &&
          (xs.empty() || support->first != xs.front() ||
           support->second != xs.back())) {
        throw std::invalid_argument(
            "tabulated support, when given, must equal [xs.front, xs.back]");
      }
      return tabulated(std::move(xs), std::move(ps));
    }
  }
  throw std::logic_error("unreachable family");
}

nlohmann::json Distribution::to_json() const {
  json params = json::object();
  switch (family_) {
    case Family::Uniform:
      break;
    case Family::Exponential:
      params["rate"] = rate_;
      break;
    case Family::Gaussian:
    case Family::TruncatedGaussian:
      params["mean"] = mean_;
      params["stddev"] = stddev_;
      break;
    case Family::Mixture: {
      json comps = json::array();
      for (const auto& c : components_) {
        comps.push_back(
            {{"weight", c.weight}, {"mean", c.mean}, {"stddev", c.stddev}});
      }
      params["components"] = std::move(comps);
      break;
    }
    case Family::Tabulated:
      params["xs"] = xs_;
      params["ps"] = ps_;
      break;
  }
  return json{{"family", family_name(family_)},
              {"params", std::move(params)},
              {"support", {lo_, hi_}}};
}

Region region_bounds(int level, std::uint64_t index, double support_lo,
                     double support_hi) {
  if (level < 0 || level > 32) {
    throw std::invalid_argument("region level must be in [0, 32]");
  }
  require_support(support_lo, support_hi);
  const std::uint64_t slices = std::uint64_t{1} << level;
  if (index >= slices) {
    throw std::out_of_range("region index must be below 2^level");
  }
  const double width = support_hi - support_lo;
  auto edge = [&](std::uint64_t k) {
    if (k == 0) return support_lo;
    if (k == slices) return support_hi;
    // k / 2^level is exact: k < 2^32 fits a double, ldexp only shifts.
    double t = std::ldexp(static_cast<double>(k), -level);
    double x = support_lo + width * t;
    return std::clamp(x, support_lo, support_hi);
  };
  return Region{level, index, edge(index), edge(index + 1)};
}

}  // namespace qprep::dist
