#include "scripta/features.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scripta {

std::string to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::hinge: return "hinge";
    case FeatureKind::fraglet: return "fraglet";
    case FeatureKind::fraglet_cos: return "fraglet-cos";
    case FeatureKind::adjoined: return "adjoined";
  }
  return "?";
}

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "hinge") return FeatureKind::hinge;
  if (s == "fraglet") return FeatureKind::fraglet;
  if (s == "fraglet-cos") return FeatureKind::fraglet_cos;
  if (s == "adjoined") return FeatureKind::adjoined;
  throw std::runtime_error("unknown feature kind '" + s + "'");
}

double FeatureVector::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

void normalize(FeatureVector& f) {
  const double s = f.sum();
  if (s <= 0.0) throw std::runtime_error("normalize: zero histogram");
  for (double& v : f.values) v /= s;
}

void save_feature(const FeatureVector& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write feature file: " + path.string());
  out << "kind=" << to_string(f.kind) << " dim=" << f.dim() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", f.values[i]);
    if (i) out << ' ';
    out << buf;
  }
  out << "\n";
}

FeatureVector load_feature(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("feature file not found: " + path.string());
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("empty feature file: " + path.string());
  std::string kind_str;
  std::size_t dim = 0;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("kind=", 0) == 0) kind_str = tok.substr(5);
      else if (tok.rfind("dim=", 0) == 0) dim = std::stoul(tok.substr(4));
    }
  }
  if (kind_str.empty() || dim == 0)
    throw std::runtime_error("malformed feature header: " + path.string());
  FeatureVector f;
  f.kind = feature_kind_from_string(kind_str);
  f.values.reserve(dim);
  double v;
  while (in >> v) f.values.push_back(v);
  if (f.values.size() != dim)
    throw std::runtime_error("feature value count mismatch: " + path.string());
  return f;
}

}  // namespace scripta
