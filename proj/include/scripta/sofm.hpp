#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scripta/features.hpp"
#include "scripta/fraglet.hpp"

namespace scripta {

struct TrainingMeta {
  int epochs = 0;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  std::vector<double> quantization_error;  // one entry per epoch
  std::vector<std::string> warnings;
};

// A rectangular self-organizing map of fraglet centroids acting as a
// bag-of-patterns vocabulary.
struct Codebook {
  int rows = 0;
  int cols = 0;
  int dim = 2 * kFragletPoints;
  std::vector<double> centroids;  // rows*cols*dim, cell-major
  TrainingMeta meta;

  int cells() const { return rows * cols; }
  const double* centroid(int cell) const {
    return centroids.data() + static_cast<std::size_t>(cell) * dim;
  }
};

struct SofmSchedule {
  double lr_start = 0.5;
  double lr_end = 0.01;
  // Neighbourhood radius decays linearly from max(rows, cols)/2 to 1.
};

// Online Kohonen training: best-matching unit by Euclidean distance,
// Gaussian grid neighbourhood, linearly decaying learning rate and radius.
// Deterministic given sample order and seed. Centroids initialize from a
// seeded random sample of the training set. Fewer samples than centroids
// is a warning, not an error.
Codebook train_sofm(const std::vector<std::vector<double>>& samples, int rows,
                    int cols, int epochs, std::uint64_t seed,
                    const SofmSchedule& schedule = {});
Codebook train_sofm(const std::vector<Fraglet>& samples, int rows, int cols,
                    int epochs, std::uint64_t seed,
                    const SofmSchedule& schedule = {});

// Index of the best-matching unit for a sample (ties to the lowest index).
int best_matching_unit(const Codebook& cb, const double* sample);

// Indices of the k nearest centroids, ascending distance, ties by index.
std::vector<int> nearest_cells(const Codebook& cb, const double* sample, int k);

// Bag-of-patterns encoding: each fraglet votes 1/spread_k into each of its
// spread_k nearest centroids; the histogram is normalized to sum 1.
FeatureVector encode_fraglets(const std::vector<Fraglet>& fraglets,
                              const Codebook& cb, int spread_k,
                              FeatureKind kind = FeatureKind::fraglet);

// Extraction plus encoding; throws "insufficient ink" when the image yields
// no fraglets.
FeatureVector fraglet_histogram(const BinaryImage& img, const Codebook& cb,
                                const FragletConfig& cfg);

// Codebook file: header `rows cols dim epochs seed n_samples`, then one
// centroid per line with 12 significant digits.
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace scripta
