#include "scripta/featurespace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scripta {

std::string to_string(const SampleLabel& label) {
  std::string s = std::to_string(label.column_index);
  switch (label.side) {
    case SplitSide::whole: s += 'w'; break;
    case SplitSide::a: s += 'a'; break;
    case SplitSide::b: s += 'b'; break;
  }
  return s;
}

SampleLabel sample_label_from_string(const std::string& s) {
  if (s.size() < 2) throw std::runtime_error("bad sample label '" + s + "'");
  SampleLabel label;
  const char side = s.back();
  label.column_index = std::stoi(s.substr(0, s.size() - 1));
  switch (side) {
    case 'w': label.side = SplitSide::whole; break;
    case 'a': label.side = SplitSide::a; break;
    case 'b': label.side = SplitSide::b; break;
    default: throw std::runtime_error("bad sample label '" + s + "'");
  }
  return label;
}

std::optional<std::size_t> DistanceMatrix::index_of(
    const SampleLabel& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

double chi_square_distance(const FeatureVector& x, const FeatureVector& y) {
  if (x.kind != y.kind)
    throw std::invalid_argument("chi_square_distance: kind mismatch");
  if (x.dim() != y.dim())
    throw std::invalid_argument("chi_square_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    const double s = x.values[i] + y.values[i];
    if (s > 0.0) {
      const double diff = x.values[i] - y.values[i];
      d += diff * diff / s;
    }
  }
  return 0.5 * d;
}

DistanceMatrix distance_matrix(const std::vector<FeatureVector>& features,
                               const std::vector<SampleLabel>& labels) {
  if (features.size() != labels.size())
    throw std::invalid_argument("distance_matrix: label count mismatch");
  if (features.size() < 2)
    throw std::invalid_argument("distance_matrix: need at least 2 samples");

  DistanceMatrix m;
  m.labels = labels;
  const std::size_t n = labels.size();
  m.d.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = chi_square_distance(features[i], features[j]);
      m.at(i, j) = dij;
      m.at(j, i) = dij;
    }
  }
  return m;
}

HitList nearest_neighbours(const DistanceMatrix& m, const SampleLabel& query,
                           int k, const std::set<SampleLabel>& exclude) {
  if (k < 1) throw std::invalid_argument("nearest_neighbours: k must be >= 1");
  const auto qi = m.index_of(query);
  if (!qi) throw std::invalid_argument("nearest_neighbours: unknown query label");

  std::vector<std::pair<SampleLabel, double>> cands;
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (i == *qi) continue;
    if (exclude.count(m.labels[i])) continue;
    cands.push_back({m.labels[i], m.at(*qi, i)});
  }
  std::sort(cands.begin(), cands.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second < r.second;
    return l.first < r.first;
  });

  HitList out;
  out.query = query;
  if (static_cast<std::size_t>(k) >= cands.size()) {
    out.truncated = static_cast<std::size_t>(k) > cands.size();
    out.hits = std::move(cands);
  } else {
    out.hits.assign(cands.begin(), cands.begin() + k);
  }
  return out;
}

SiblingReport sibling_check(const DistanceMatrix& m) {
  SiblingReport report;
  std::size_t top1 = 0;
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (m.labels[i].side != SplitSide::a) continue;
    const SampleLabel sibling{m.labels[i].column_index, SplitSide::b};
    SiblingReport::Entry entry;
    entry.column_index = m.labels[i].column_index;
    if (!m.index_of(sibling)) {
      entry.no_sibling = true;
      report.entries.push_back(entry);
      continue;
    }
    const HitList hits =
        nearest_neighbours(m, m.labels[i], static_cast<int>(m.n()));
    for (std::size_t r = 0; r < hits.hits.size(); ++r) {
      if (hits.hits[r].first == sibling) {
        entry.rank = static_cast<int>(r) + 1;
        break;
      }
    }
    ++report.n_pairs;
    if (entry.rank == 1) ++top1;
    report.entries.push_back(entry);
  }
  report.top1_fraction =
      report.n_pairs ? static_cast<double>(top1) / report.n_pairs : 0.0;
  return report;
}

Embedding3D pca_embed(const std::vector<FeatureVector>& features,
                      const std::vector<SampleLabel>& labels) {
  constexpr int kComponents = 3;
  if (features.size() != labels.size())
    throw std::invalid_argument("pca_embed: label count mismatch");
  const std::size_t n = features.size();
  if (n < kComponents + 1)
    throw std::invalid_argument("pca_embed: need at least 4 samples");
  const std::size_t dim = features.front().dim();
  for (const auto& f : features) {
    if (f.dim() != dim)
      throw std::invalid_argument("pca_embed: inconsistent dimensions");
  }

  Eigen::MatrixXd data(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) data(i, j) = features[i].values[j];
  }
  const Eigen::RowVectorXd mean = data.colwise().mean();
  data.rowwise() -= mean;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(data,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();

  Embedding3D e;
  e.labels = labels;
  e.coords.assign(n * kComponents, 0.0);

  // Numerical rank against the largest singular value.
  const double tol = sv.size() ? sv(0) * 1e-9 : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  e.effective_components = std::min(rank, kComponents);
  e.rank_deficient = e.effective_components < kComponents;

  for (int c = 0; c < e.effective_components; ++c) {
    Eigen::VectorXd direction = svd.matrixV().col(c);
    // Sign convention: the largest-magnitude loading is positive.
    int arg = 0;
    for (int j = 1; j < direction.size(); ++j) {
      if (std::abs(direction(j)) > std::abs(direction(arg))) arg = j;
    }
    const double flip = direction(arg) < 0.0 ? -1.0 : 1.0;
    const Eigen::VectorXd scores = data * direction * flip;
    for (std::size_t i = 0; i < n; ++i) e.coords[i * kComponents + c] = scores(i);
    e.explained_variance[c] = sv(c) * sv(c) / static_cast<double>(n - 1);
  }
  return e;
}

void save_distance_matrix(const DistanceMatrix& m,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix: " + path.string());
  for (std::size_t i = 0; i < m.n(); ++i) {
    if (i) out << ' ';
    out << to_string(m.labels[i]);
  }
  out << "\n";
  char buf[64];
  for (std::size_t i = 1; i < m.n(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g", m.at(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << "\n";
  }
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix not found: " + path.string());
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("empty matrix file: " + path.string());
  DistanceMatrix m;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) m.labels.push_back(sample_label_from_string(tok));
  }
  const std::size_t n = m.labels.size();
  if (n < 2) throw std::runtime_error("matrix needs >= 2 labels: " + path.string());
  m.d.assign(n * n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double v;
      if (!(in >> v))
        throw std::runtime_error("truncated matrix: " + path.string());
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  return m;
}

void save_embedding(const Embedding3D& e, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embedding: " + path.string());
  out << "column_index split x y z\n";
  char buf[64];
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    out << e.labels[i].column_index << ' ' << to_string(e.labels[i].side);
    for (int c = 0; c < 3; ++c) {
      std::snprintf(buf, sizeof(buf), "%.12g", e.coords[i * 3 + c]);
      out << ' ' << buf;
    }
    out << "\n";
  }
}

}  // namespace scripta
