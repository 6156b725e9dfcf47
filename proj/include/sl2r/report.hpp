#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sl2r {

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  // NaN never passes.
  bool passed() const { return value <= tolerance; }
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  void set_subject(std::string s) { subject_ = std::move(s); }

  void add(std::string name, double value, double tolerance);
  // Metadata keeps insertion order; a repeated key overwrites in place.
  void note(const std::string& key, std::string value);
  void merge(const VerificationReport& other, const std::string& prefix = {});

  bool passed() const;
  double max_residual() const;
  std::optional<Residual> first_failure() const;
  std::optional<double> residual(const std::string& name) const;
  std::optional<std::string> meta(const std::string& key) const;

  const std::vector<Residual>& residuals() const { return residuals_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

 private:
  std::string subject_;
  std::vector<Residual> residuals_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace sl2r
