#include "scripta/phasestats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "scripta/rng.hpp"

namespace scripta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sorted candidate hit lists per query sample, own-column samples excluded.
struct ColumnHits {
  int column = 0;
  // One sorted list per sample of this column; entries carry the candidate's
  // distance and serial column position.
  std::vector<std::vector<std::pair<double, int>>> per_sample;
};

std::vector<ColumnHits> column_hit_lists(const DistanceMatrix& m) {
  std::map<int, std::vector<std::size_t>> by_column;
  for (std::size_t i = 0; i < m.n(); ++i)
    by_column[m.labels[i].column_index].push_back(i);

  std::vector<ColumnHits> out;
  for (const auto& [col, samples] : by_column) {
    ColumnHits ch;
    ch.column = col;
    for (std::size_t qi : samples) {
      std::vector<std::pair<double, int>> cands;
      cands.reserve(m.n());
      for (std::size_t j = 0; j < m.n(); ++j) {
        if (m.labels[j].column_index == col) continue;  // self and siblings
        cands.push_back({m.at(qi, j), m.labels[j].column_index});
      }
      std::sort(cands.begin(), cands.end());
      ch.per_sample.push_back(std::move(cands));
    }
    out.push_back(std::move(ch));
  }
  return out;
}

}  // namespace

int VoteCurve::argmin_column() const {
  if (columns.empty()) throw std::runtime_error("empty vote curve");
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] < p[best]) best = i;
  }
  return columns[best];
}

double VoteCurve::min_p() const {
  if (columns.empty()) throw std::runtime_error("empty vote curve");
  return *std::min_element(p.begin(), p.end());
}

double chi_square_sf_1df(double statistic) {
  if (statistic <= 0.0) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

double student_t_sf(double t, double df) {
  boost::math::students_t_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

double fisher_f_sf(double f, double df1, double df2) {
  boost::math::fisher_f_distribution<double> dist(df1, df2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

VoteCurve lr_vote_curve(const DistanceMatrix& m, int wmin, int wmax) {
  if (wmin < 1 || wmax < wmin)
    throw std::invalid_argument("lr_vote_curve: bad window range");
  const auto hits = column_hit_lists(m);

  VoteCurve curve;
  curve.wmin = wmin;
  curve.wmax = wmax;
  for (const auto& ch : hits) {
    const int c = ch.column;
    int n_left = 0, n_right = 0;
    for (const auto& other : hits) {
      if (other.column < c) ++n_left;
      if (other.column > c) ++n_right;
    }
    if (n_left == 0 || n_right == 0) {
      curve.columns.push_back(c);
      curve.p.push_back(1.0);
      curve.flagged.push_back(true);
      continue;
    }

    bool clipped = false;
    double p_sum = 0.0;
    int p_count = 0;
    for (int w = wmin; w <= wmax; ++w) {
      double obs_left = 0.0, obs_right = 0.0;
      for (const auto& cands : ch.per_sample) {
        const int take = std::min<int>(w, static_cast<int>(cands.size()));
        if (take < w) clipped = true;
        for (int i = 0; i < take; ++i) {
          if (cands[i].second < c) obs_left += 1.0;
          else obs_right += 1.0;
        }
      }
      const double total = obs_left + obs_right;
      if (total <= 0.0) continue;
      const double frac_left =
          static_cast<double>(n_left) / (n_left + n_right);
      const double e_left = total * frac_left;
      const double e_right = total - e_left;
      const double stat = (obs_left - e_left) * (obs_left - e_left) / e_left +
                          (obs_right - e_right) * (obs_right - e_right) / e_right;
      p_sum += chi_square_sf_1df(stat);
      ++p_count;
    }
    curve.columns.push_back(c);
    curve.p.push_back(p_count ? p_sum / p_count : 1.0);
    curve.flagged.push_back(clipped || p_count == 0);
  }
  return curve;
}

StatReport t_test_summary(const GroupSummary& g1, const GroupSummary& g2) {
  if (g1.n < 2 || g2.n < 2)
    throw std::invalid_argument("t_test_summary: groups need N >= 2");
  if (g1.sd < 0.0 || g2.sd < 0.0)
    throw std::invalid_argument("t_test_summary: negative sd");

  StatReport rep;
  rep.test = StatTest::t_test;
  rep.groups = {g1, g2};
  rep.df1 = static_cast<double>(g1.n + g2.n - 2);

  const double sp2 = ((g1.n - 1) * g1.sd * g1.sd + (g2.n - 1) * g2.sd * g2.sd) /
                     rep.df1;
  const double se = std::sqrt(sp2 * (1.0 / g1.n + 1.0 / g2.n));
  if (se == 0.0) {
    rep.degenerate = true;
    if (g1.mean == g2.mean) {
      rep.statistic = 0.0;
      rep.p = 1.0;
    } else {
      rep.statistic = g1.mean > g2.mean ? kInf : -kInf;
      rep.p = 0.0;
    }
    return rep;
  }
  rep.statistic = (g1.mean - g2.mean) / se;
  rep.p = 2.0 * student_t_sf(std::abs(rep.statistic), rep.df1);
  return rep;
}

StatReport one_way_anova_summary(const GroupSummary& g1,
                                 const GroupSummary& g2) {
  if (g1.n < 2 || g2.n < 2)
    throw std::invalid_argument("one_way_anova_summary: groups need N >= 2");
  if (g1.sd < 0.0 || g2.sd < 0.0)
    throw std::invalid_argument("one_way_anova_summary: negative sd");

  StatReport rep;
  rep.test = StatTest::one_way_anova;
  rep.groups = {g1, g2};
  rep.df1 = 1.0;
  rep.df2 = static_cast<double>(g1.n + g2.n - 2);

  const double total_n = static_cast<double>(g1.n + g2.n);
  const double grand = (g1.n * g1.mean + g2.n * g2.mean) / total_n;
  rep.ss_between = g1.n * (g1.mean - grand) * (g1.mean - grand) +
                   g2.n * (g2.mean - grand) * (g2.mean - grand);
  rep.ss_within = (g1.n - 1) * g1.sd * g1.sd + (g2.n - 1) * g2.sd * g2.sd;
  rep.ms_between = rep.ss_between / rep.df1;
  rep.ms_within = rep.ss_within / rep.df2;
  if (rep.ms_within == 0.0) {
    rep.degenerate = true;
    rep.statistic = rep.ss_between == 0.0 ? 0.0 : kInf;
    rep.p = rep.ss_between == 0.0 ? 1.0 : 0.0;
    return rep;
  }
  rep.statistic = rep.ms_between / rep.ms_within;
  rep.p = fisher_f_sf(rep.statistic, rep.df1, rep.df2);
  return rep;
}

DistanceGroups nn_distance_groups(const DistanceMatrix& m, int wmin, int wmax,
                                  int n_left, int n_right) {
  if (wmin < 1 || wmax < wmin)
    throw std::invalid_argument("nn_distance_groups: bad window range");
  if (n_left < 2 || n_right < 2)
    throw std::invalid_argument("nn_distance_groups: groups need >= 2 columns");

  std::map<int, std::vector<std::size_t>> by_column;
  for (std::size_t i = 0; i < m.n(); ++i)
    by_column[m.labels[i].column_index].push_back(i);
  const int n_columns = static_cast<int>(by_column.size());
  if (n_columns <= 2 * wmin)
    throw std::invalid_argument("nn_distance_groups: series too short");
  if (n_left + n_right > n_columns)
    throw std::invalid_argument("nn_distance_groups: groups exceed series");

  DistanceGroups out;
  for (const auto& [col, queries] : by_column) {
    double sum = 0.0;
    int count = 0;
    for (int w = wmin; w <= wmax; ++w) {
      double best = kInf;
      for (const auto& [other, cands] : by_column) {
        if (other == col || std::abs(other - col) > w) continue;
        for (std::size_t qi : queries) {
          for (std::size_t cj : cands) best = std::min(best, m.at(qi, cj));
        }
      }
      if (best < kInf) {
        sum += best;
        ++count;
      }
    }
    if (count == 0)
      throw std::runtime_error("nn_distance_groups: isolated column " +
                               std::to_string(col));
    out.columns.push_back(col);
    out.values.push_back(sum / count);
  }
  out.left.assign(out.values.begin(), out.values.begin() + n_left);
  out.right.assign(out.values.end() - n_right, out.values.end());
  return out;
}

NNSeries nn_position_series(const DistanceMatrix& m, int k_hits) {
  if (k_hits < 1)
    throw std::invalid_argument("nn_position_series: k_hits must be >= 1");
  const auto hits = column_hit_lists(m);

  NNSeries series;
  series.k_hits = k_hits;
  series.splits_used = 1;
  for (const auto& ch : hits) {
    series.splits_used =
        std::max(series.splits_used, static_cast<int>(ch.per_sample.size()));
    double sum = 0.0;
    int count = 0;
    for (const auto& cands : ch.per_sample) {
      const int take = std::min<int>(k_hits, static_cast<int>(cands.size()));
      for (int i = 0; i < take; ++i) {
        sum += cands[i].second;
        ++count;
      }
    }
    series.columns.push_back(ch.column);
    series.values.push_back(count ? sum / count : ch.column);
  }
  return series;
}

NNSeries smooth(const NNSeries& series, int w) {
  if (w < 1 || w % 2 == 0)
    throw std::invalid_argument("smooth: window must be odd");
  NNSeries out = series;
  const int n = static_cast<int>(series.values.size());
  const int half = w / 2;
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) sum += series.values[j];
    out.values[i] = sum / (hi - lo + 1);
  }
  return out;
}

double logistic_eval(const LogisticParams& p, double x) {
  const double z = -p.steepness * (x - p.x_offset);
  if (z > 700.0) return p.y_offset;
  if (z < -700.0) return p.y_offset + p.amplitude;
  return p.y_offset + p.amplitude / (1.0 + std::exp(z));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pearson: length mismatch");
  if (a.size() < 3) throw std::invalid_argument("pearson: need length >= 3");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0)
    throw std::invalid_argument("pearson: zero variance");
  return cov / std::sqrt(va * vb);
}

namespace {

struct SeriesView {
  const std::vector<int>& x;
  const std::vector<double>& v;
};

// Correlation between the unit sigmoid s(x; x0, b) and the data, plus the
// regression coefficients needed for affine recalibration. Returns false
// when the sigmoid is numerically constant over the sample points.
bool sigmoid_correlation(const SeriesView& sv, double x0, double b, double& r,
                         double& mean_s, double& beta) {
  const std::size_t n = sv.x.size();
  double ms = 0.0, mv = 0.0;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = -b * (sv.x[i] - x0);
    s[i] = z > 700.0 ? 0.0 : (z < -700.0 ? 1.0 : 1.0 / (1.0 + std::exp(z)));
    ms += s[i];
    mv += sv.v[i];
  }
  ms /= n;
  mv /= n;
  double cov = 0.0, vs = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ds = s[i] - ms;
    const double dv = sv.v[i] - mv;
    cov += ds * dv;
    vs += ds * ds;
    vv += dv * dv;
  }
  if (vs < 1e-24 || vv <= 0.0) return false;
  r = cov / std::sqrt(vs * vv);
  mean_s = ms;
  beta = cov / vs;  // least-squares amplitude of data on the unit sigmoid
  return true;
}

bool series_constant(const NNSeries& series) {
  const auto [mn, mx] =
      std::minmax_element(series.values.begin(), series.values.end());
  return *mx - *mn < 1e-12;
}

FitReport degenerate_fit(const NNSeries& series, FitMethod method) {
  FitReport rep;
  rep.method = method;
  rep.degenerate = true;  // no transition
  rep.params.x_offset = (series.columns.front() + series.columns.back()) / 2.0;
  rep.params.y_offset = series.values.front();
  rep.params.amplitude = 0.0;
  rep.params.steepness = 1.0;
  rep.r = 0.0;
  return rep;
}

}  // namespace

FitReport fit_logistic_mc(const NNSeries& series, long iters,
                          std::uint64_t seed) {
  if (series.size() < 8)
    throw std::invalid_argument("fit_logistic_mc: series too short");
  if (iters < 1) throw std::invalid_argument("fit_logistic_mc: iters >= 1");
  if (series_constant(series))
    return degenerate_fit(series, FitMethod::monte_carlo);

  const SeriesView sv{series.columns, series.values};
  const double x_lo = series.columns.front();
  const double x_hi = series.columns.back();
  const auto [vmn, vmx] =
      std::minmax_element(series.values.begin(), series.values.end());
  const double range = *vmx - *vmn;

  Rng rng(seed);
  double best_r = -kInf;
  double best_x0 = 0.0, best_b = 1.0;
  for (long it = 0; it < iters; ++it) {
    const double x0 = rng.uniform(x_lo, x_hi);
    (void)rng.uniform(*vmn, *vmx);        // y_offset draw; recalibrated below
    (void)rng.uniform(0.0, 2.0 * range);  // amplitude draw, same
    const double b = 10.0 * (1.0 - rng.uniform());  // (0, 10]
    double r, ms, beta;
    if (!sigmoid_correlation(sv, x0, b, r, ms, beta)) continue;
    if (r > best_r) {
      best_r = r;
      best_x0 = x0;
      best_b = b;
    }
  }
  if (best_r == -kInf) return degenerate_fit(series, FitMethod::monte_carlo);

  // The correlation objective is blind to affine scale, so the winning
  // shape's y_offset/amplitude come from regressing the data on its unit
  // sigmoid rather than from the random draws.
  double r, ms, beta;
  sigmoid_correlation(sv, best_x0, best_b, r, ms, beta);
  double mv = 0.0;
  for (double v : series.values) mv += v;
  mv /= static_cast<double>(series.size());

  FitReport rep;
  rep.method = FitMethod::monte_carlo;
  rep.params.x_offset = best_x0;
  rep.params.steepness = best_b;
  rep.params.amplitude = beta;
  rep.params.y_offset = mv - beta * ms;
  rep.r = std::abs(r);
  return rep;
}

FitReport fit_logistic_ls(const NNSeries& series) {
  if (series.size() < 8)
    throw std::invalid_argument("fit_logistic_ls: series too short");
  if (series_constant(series))
    return degenerate_fit(series, FitMethod::least_squares);

  const std::size_t n = series.size();
  const std::size_t quart = std::max<std::size_t>(1, n / 4);
  double first_q = 0.0, last_q = 0.0;
  for (std::size_t i = 0; i < quart; ++i) {
    first_q += series.values[i];
    last_q += series.values[n - 1 - i];
  }
  first_q /= static_cast<double>(quart);
  last_q /= static_cast<double>(quart);

  Eigen::Vector4d p;  // x_offset, y_offset, amplitude, steepness
  p << (series.columns.front() + series.columns.back()) / 2.0, first_q,
      last_q - first_q, 0.5;

  auto sse_of = [&](const Eigen::Vector4d& q) {
    const LogisticParams lp{q(0), q(1), q(2), q(3)};
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = logistic_eval(lp, series.columns[i]) - series.values[i];
      sse += r * r;
    }
    return sse;
  };

  double sse = sse_of(p);
  double lambda = 1e-3;
  bool converged = false;
  constexpr int kMaxIter = 200;
  for (int iter = 0; iter < kMaxIter && !converged; ++iter) {
    Eigen::MatrixXd jac(n, 4);
    Eigen::VectorXd resid(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = series.columns[i];
      const double z = -p(3) * (x - p(0));
      const double s =
          z > 700.0 ? 0.0 : (z < -700.0 ? 1.0 : 1.0 / (1.0 + std::exp(z)));
      const double ds = s * (1.0 - s);
      resid(i) = p(1) + p(2) * s - series.values[i];
      jac(i, 0) = -p(2) * p(3) * ds;       // d/dx_offset
      jac(i, 1) = 1.0;                     // d/dy_offset
      jac(i, 2) = s;                       // d/damplitude
      jac(i, 3) = p(2) * ds * (x - p(0));  // d/dsteepness
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * resid;

    bool improved = false;
    for (int inner = 0; inner < 40; ++inner) {
      Eigen::Matrix4d damped = jtj;
      for (int d = 0; d < 4; ++d)
        damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
      const Eigen::Vector4d delta = damped.ldlt().solve(-jtr);
      Eigen::Vector4d cand = p + delta;
      cand(3) = std::max(cand(3), 1e-6);  // canonical form keeps b > 0
      const double cand_sse = sse_of(cand);
      if (cand_sse < sse) {
        const double gain = sse - cand_sse;
        p = cand;
        sse = cand_sse;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (gain < 1e-12 * (1.0 + sse)) converged = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
    if (!improved) {
      converged = true;  // stationary within numerical resolution
      break;
    }
  }

  FitReport rep;
  rep.method = FitMethod::least_squares;
  rep.converged = converged;
  rep.params = {p(0), p(1), p(2), p(3)};
  std::vector<double> model(n);
  for (std::size_t i = 0; i < n; ++i)
    model[i] = logistic_eval(rep.params, series.columns[i]);
  try {
    rep.r = pearson(model, series.values);
  } catch (const std::exception&) {
    rep.r = 0.0;
    rep.degenerate = true;
  }
  return rep;
}

}  // namespace scripta
