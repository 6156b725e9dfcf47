#include "sl2r/report.hpp"

#include <algorithm>
#include <cmath>

namespace sl2r {

void VerificationReport::add(std::string name, double value, double tolerance) {
  residuals_.push_back({std::move(name), value, tolerance});
}

void VerificationReport::note(const std::string& key, std::string value) {
  for (auto& kv : metadata_) {
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(key, std::move(value));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  const std::string head = prefix.empty() ? prefix : prefix + "/";
  for (const auto& r : other.residuals_) add(head + r.name, r.value, r.tolerance);
  for (const auto& kv : other.metadata_) note(head + kv.first, kv.second);
}

bool VerificationReport::passed() const {
  return std::all_of(residuals_.begin(), residuals_.end(), [](const Residual& r) { return r.passed(); });
}

double VerificationReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : residuals_) {
    if (std::isnan(r.value)) return r.value;
    m = std::max(m, r.value);
  }
  return m;
}

std::optional<Residual> VerificationReport::first_failure() const {
  for (const auto& r : residuals_) {
    if (!r.passed()) return r;
  }
  return std::nullopt;
}

std::optional<double> VerificationReport::residual(const std::string& name) const {
  for (const auto& r : residuals_) {
    if (r.name == name) return r.value;
  }
  return std::nullopt;
}

std::optional<std::string> VerificationReport::meta(const std::string& key) const {
  for (const auto& kv : metadata_) {
    if (kv.first == key) return kv.second;
  }
  return std::nullopt;
}

}  // namespace sl2r
