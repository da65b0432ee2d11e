#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scripta/features.hpp"
#include "scripta/manifest.hpp"

namespace scripta {

// Identifies one sample in a distance matrix: a column and its split side.
struct SampleLabel {
  int column_index = 0;
  SplitSide side = SplitSide::whole;

  friend bool operator==(const SampleLabel&, const SampleLabel&) = default;
  friend auto operator<=>(const SampleLabel& l, const SampleLabel& r) {
    if (auto c = l.column_index <=> r.column_index; c != 0) return c;
    return static_cast<int>(l.side) <=> static_cast<int>(r.side);
  }
};

std::string to_string(const SampleLabel& label);
SampleLabel sample_label_from_string(const std::string& s);

struct DistanceMatrix {
  std::vector<SampleLabel> labels;
  std::vector<double> d;  // n x n, symmetric, zero diagonal

  std::size_t n() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return d[i * n() + j]; }
  double& at(std::size_t i, std::size_t j) { return d[i * n() + j]; }
  std::optional<std::size_t> index_of(const SampleLabel& label) const;
};

struct HitList {
  SampleLabel query;
  std::vector<std::pair<SampleLabel, double>> hits;  // ascending distance
  bool truncated = false;  // fewer candidates than requested
};

struct SiblingReport {
  struct Entry {
    int column_index = 0;
    int rank = 0;        // rank of the b sibling in the a sample's hit list
    bool no_sibling = false;
  };
  std::vector<Entry> entries;
  double top1_fraction = 0.0;  // over columns that have both halves
  std::size_t n_pairs = 0;
};

struct Embedding3D {
  std::vector<SampleLabel> labels;
  std::vector<double> coords;             // n x 3 row-major
  std::array<double, 3> explained_variance{0.0, 0.0, 0.0};
  int effective_components = 3;           // < 3 when the data is rank deficient
  bool rank_deficient = false;
};

// d(x, y) = 1/2 * sum_i (x_i - y_i)^2 / (x_i + y_i); bins where both
// histograms are empty contribute zero. Requires same kind and dimension.
double chi_square_distance(const FeatureVector& x, const FeatureVector& y);

DistanceMatrix distance_matrix(const std::vector<FeatureVector>& features,
                               const std::vector<SampleLabel>& labels);

// k best non-self, non-excluded labels by ascending distance; ties broken by
// lower column index, then split side a before b. Returns all available
// candidates (flagged) when k exceeds them.
HitList nearest_neighbours(const DistanceMatrix& m, const SampleLabel& query,
                           int k, const std::set<SampleLabel>& exclude = {});

// For every column with an (a, b) pair: the rank of the b sample in the a
// sample's hit list. Siblings are deliberately part of the candidate set.
SiblingReport sibling_check(const DistanceMatrix& m);

// Mean-centered PCA via SVD; component signs fixed so that the largest-
// magnitude loading of each component is positive. Rank-deficient inputs
// yield zero-filled trailing components and are flagged.
Embedding3D pca_embed(const std::vector<FeatureVector>& features,
                      const std::vector<SampleLabel>& labels);

// Text persistence. Matrix: header line with labels, then the strict lower
// triangle one row per line. Embedding: `column_index split x y z` rows.
void save_distance_matrix(const DistanceMatrix& m,
                          const std::filesystem::path& path);
DistanceMatrix load_distance_matrix(const std::filesystem::path& path);
void save_embedding(const Embedding3D& e, const std::filesystem::path& path);

}  // namespace scripta
