#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace scripta {

enum class FeatureKind { hinge, fraglet, fraglet_cos, adjoined };

std::string to_string(FeatureKind k);
FeatureKind feature_kind_from_string(const std::string& s);

// A normalized histogram describing one column image's writing style.
// Entries are nonnegative and sum to 1 (within 1e-9).
struct FeatureVector {
  FeatureKind kind = FeatureKind::hinge;
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  double sum() const;
};

// Text format: first line `kind=<kind> dim=<n>`, second line the values
// space-separated with 12 significant digits.
void save_feature(const FeatureVector& f, const std::filesystem::path& path);
FeatureVector load_feature(const std::filesystem::path& path);

// Normalizes in place so the entries sum to one. Throws if the sum is zero.
void normalize(FeatureVector& f);

}  // namespace scripta
