#include "scripta/sofm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "scripta/rng.hpp"

namespace scripta {

namespace {

double sq_distance(const double* a, const double* b, int dim, double cutoff) {
  double d = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
    if (d >= cutoff) return d;  // early abandon for BMU search
  }
  return d;
}

int find_bmu(const std::vector<double>& centroids, int cells, int dim,
             const double* sample) {
  int best = 0;
  double best_d = sq_distance(centroids.data(), sample, dim,
                              std::numeric_limits<double>::infinity());
  for (int c = 1; c < cells; ++c) {
    const double d = sq_distance(
        centroids.data() + static_cast<std::size_t>(c) * dim, sample, dim,
        best_d);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

Codebook train_sofm(const std::vector<std::vector<double>>& samples, int rows,
                    int cols, int epochs, std::uint64_t seed,
                    const SofmSchedule& schedule) {
  if (samples.empty()) throw std::invalid_argument("train_sofm: no samples");
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("train_sofm: map must be at least 2x2");
  if (epochs < 1) throw std::invalid_argument("train_sofm: epochs must be >= 1");
  const int dim = static_cast<int>(samples.front().size());
  for (const auto& s : samples) {
    if (static_cast<int>(s.size()) != dim)
      throw std::invalid_argument("train_sofm: inconsistent sample dims");
  }

  Codebook cb;
  cb.rows = rows;
  cb.cols = cols;
  cb.dim = dim;
  cb.meta.epochs = epochs;
  cb.meta.seed = seed;
  cb.meta.n_samples = samples.size();
  const int cells = rows * cols;
  if (samples.size() < static_cast<std::size_t>(cells)) {
    cb.meta.warnings.push_back(
        "fewer samples (" + std::to_string(samples.size()) +
        ") than centroids (" + std::to_string(cells) + ")");
  }

  Rng rng(seed);
  cb.centroids.resize(static_cast<std::size_t>(cells) * dim);
  for (int c = 0; c < cells; ++c) {
    const auto& src = samples[rng.below(samples.size())];
    std::copy(src.begin(), src.end(),
              cb.centroids.begin() + static_cast<std::size_t>(c) * dim);
  }

  const double radius_start = std::max(rows, cols) / 2.0;
  const double radius_end = 1.0;
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    const double frac = epochs > 1 ? static_cast<double>(epoch) / (epochs - 1)
                                   : 0.0;
    const double lr =
        schedule.lr_start + (schedule.lr_end - schedule.lr_start) * frac;
    const double sigma = radius_start + (radius_end - radius_start) * frac;
    const int reach = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    rng.shuffle(order);

    for (std::size_t oi : order) {
      const double* x = samples[oi].data();
      const int bmu = find_bmu(cb.centroids, cells, dim, x);
      const int br = bmu / cols;
      const int bc = bmu % cols;
      const int r0 = std::max(0, br - reach);
      const int r1 = std::min(rows - 1, br + reach);
      const int c0 = std::max(0, bc - reach);
      const int c1 = std::min(cols - 1, bc + reach);
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          const double grid2 = static_cast<double>((r - br) * (r - br) +
                                                   (c - bc) * (c - bc));
          const double h = std::exp(-grid2 / (2.0 * sigma * sigma));
          const double step = lr * h;
          if (step < 1e-12) continue;
          double* cent =
              cb.centroids.data() + (static_cast<std::size_t>(r) * cols + c) * dim;
          for (int i = 0; i < dim; ++i) cent[i] += step * (x[i] - cent[i]);
        }
      }
    }

    // Post-epoch quantization error: mean distance of samples to their BMU.
    double qe = 0.0;
    for (const auto& s : samples) {
      const int bmu = find_bmu(cb.centroids, cells, dim, s.data());
      qe += std::sqrt(sq_distance(
          cb.centroids.data() + static_cast<std::size_t>(bmu) * dim, s.data(),
          dim, std::numeric_limits<double>::infinity()));
    }
    cb.meta.quantization_error.push_back(qe / static_cast<double>(samples.size()));
  }
  return cb;
}

Codebook train_sofm(const std::vector<Fraglet>& samples, int rows, int cols,
                    int epochs, std::uint64_t seed,
                    const SofmSchedule& schedule) {
  std::vector<std::vector<double>> flat;
  flat.reserve(samples.size());
  for (const auto& f : samples) flat.push_back(f.flatten());
  return train_sofm(flat, rows, cols, epochs, seed, schedule);
}

int best_matching_unit(const Codebook& cb, const double* sample) {
  return find_bmu(cb.centroids, cb.cells(), cb.dim, sample);
}

std::vector<int> nearest_cells(const Codebook& cb, const double* sample,
                               int k) {
  const int cells = cb.cells();
  if (k < 1 || k > cells)
    throw std::invalid_argument("nearest_cells: k out of range");
  std::vector<std::pair<double, int>> dist(cells);
  for (int c = 0; c < cells; ++c) {
    dist[c] = {sq_distance(cb.centroid(c), sample, cb.dim,
                           std::numeric_limits<double>::infinity()),
               c};
  }
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = dist[i].second;
  return out;
}

FeatureVector encode_fraglets(const std::vector<Fraglet>& fraglets,
                              const Codebook& cb, int spread_k,
                              FeatureKind kind) {
  if (fraglets.empty())
    throw std::runtime_error("fraglet histogram: insufficient ink");
  if (spread_k < 1 || spread_k > cb.cells())
    throw std::invalid_argument("encode_fraglets: spread_k out of range");

  FeatureVector f;
  f.kind = kind;
  f.values.assign(cb.cells(), 0.0);
  const double vote = 1.0 / static_cast<double>(spread_k);
  for (const auto& frag : fraglets) {
    const auto flat = frag.flatten();
    for (int cell : nearest_cells(cb, flat.data(), spread_k))
      f.values[cell] += vote;
  }
  normalize(f);
  return f;
}

FeatureVector fraglet_histogram(const BinaryImage& img, const Codebook& cb,
                                const FragletConfig& cfg) {
  return encode_fraglets(extract_fraglets(img, cfg), cb, cfg.spread_k);
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write codebook: " + path.string());
  out << cb.rows << " " << cb.cols << " " << cb.dim << " " << cb.meta.epochs
      << " " << cb.meta.seed << " " << cb.meta.n_samples << "\n";
  char buf[64];
  for (int c = 0; c < cb.cells(); ++c) {
    const double* cent = cb.centroid(c);
    for (int i = 0; i < cb.dim; ++i) {
      std::snprintf(buf, sizeof(buf), "%.12g", cent[i]);
      if (i) out << ' ';
      out << buf;
    }
    out << "\n";
  }
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("codebook not found: " + path.string());
  Codebook cb;
  if (!(in >> cb.rows >> cb.cols >> cb.dim >> cb.meta.epochs >> cb.meta.seed >>
        cb.meta.n_samples))
    throw std::runtime_error("malformed codebook header: " + path.string());
  if (cb.rows < 1 || cb.cols < 1 || cb.dim < 1)
    throw std::runtime_error("bad codebook geometry: " + path.string());
  cb.centroids.resize(static_cast<std::size_t>(cb.cells()) * cb.dim);
  for (double& v : cb.centroids) {
    if (!(in >> v))
      throw std::runtime_error("truncated codebook: " + path.string());
  }
  return cb;
}

}  // namespace scripta
