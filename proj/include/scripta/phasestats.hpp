#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scripta/featurespace.hpp"

namespace scripta {

// Averaged left/right vote chi-square probability per column.
struct VoteCurve {
  std::vector<int> columns;
  std::vector<double> p;          // averaged over window sizes, in [0,1]
  std::vector<bool> flagged;      // end columns with an empty side, clipped windows
  int wmin = 9;
  int wmax = 26;

  // Column with the globally smallest averaged p (ties to the lower column).
  int argmin_column() const;
  double min_p() const;
};

// Per-column average serial position of nearest neighbours.
struct NNSeries {
  std::vector<int> columns;       // ascending serial positions
  std::vector<double> values;     // average neighbour position, column units
  int k_hits = 8;
  int splits_used = 2;

  std::size_t size() const { return columns.size(); }
};

// Canonical increasing logistic: f(x) = y_offset + A / (1 + exp(-b (x - x_offset))).
struct LogisticParams {
  double x_offset = 0.0;
  double y_offset = 0.0;
  double amplitude = 0.0;  // A
  double steepness = 0.0;  // b > 0 in the canonical form
};

enum class FitMethod { monte_carlo, least_squares };

struct FitReport {
  LogisticParams params;
  double r = 0.0;      // Pearson correlation of model vs data
  FitMethod method = FitMethod::monte_carlo;
  int smoothing = 0;   // 0 = none, otherwise the window (3 or 5)
  bool degenerate = false;   // constant input series: no transition
  bool converged = true;     // least squares only
};

enum class StatTest { t_test, one_way_anova, chi_square };

struct GroupSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;  // NaN when unknown (summary-stat inputs)
  double max = 0.0;
};

struct StatReport {
  StatTest test = StatTest::t_test;
  double statistic = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;  // unused for t-test and chi-square
  double p = 1.0;
  std::vector<GroupSummary> groups;
  bool degenerate = false;
  // ANOVA decomposition, populated for one_way_anova only.
  double ss_between = 0.0;
  double ss_within = 0.0;
  double ms_between = 0.0;
  double ms_within = 0.0;
};

// For each column and window size w in [wmin, wmax]: take the w nearest
// feature-space neighbours of each of the column's samples (its own split
// siblings excluded), vote each hit left/right of the column's serial
// position, and test the votes against expectations proportional to the
// columns available on each side (1 dof chi-square). The per-column value
// is the p averaged over window sizes. End columns with an empty side are
// recorded with p = 1 and flagged.
VoteCurve lr_vote_curve(const DistanceMatrix& m, int wmin = 9, int wmax = 26);

// Pooled-variance two-sample t-test from summary statistics; two-sided p.
StatReport t_test_summary(const GroupSummary& g1, const GroupSummary& g2);

// One-way ANOVA for two groups from summary statistics.
StatReport one_way_anova_summary(const GroupSummary& g1,
                                 const GroupSummary& g2);

// Per-column nearest-neighbour distance where candidates are restricted to
// columns within w serial positions, averaged over w in [wmin, wmax]; the
// left group collects the first `n_left` columns' values and the right
// group the last `n_right`.
struct DistanceGroups {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<int> columns;        // all columns, ascending
  std::vector<double> values;      // per-column averaged NN distance
};
DistanceGroups nn_distance_groups(const DistanceMatrix& m, int wmin = 18,
                                  int wmax = 26, int n_left = 18,
                                  int n_right = 17);

// Average serial position of the top k_hits neighbours of each column's
// samples combined (2*k_hits votes for split corpora), siblings excluded.
NNSeries nn_position_series(const DistanceMatrix& m, int k_hits = 8);

// Centered running mean with windows truncated at the series ends.
NNSeries smooth(const NNSeries& series, int w);

double logistic_eval(const LogisticParams& p, double x);

// Seeded uniform random search over bounded parameter ranges, maximizing
// the Pearson correlation between model and series; y_offset and amplitude
// of the winner are recalibrated by linear regression (the correlation
// objective is blind to affine scale). Deterministic per seed.
FitReport fit_logistic_mc(const NNSeries& series, long iters,
                          std::uint64_t seed);

// Damped Gauss-Newton least squares from a deterministic initial guess.
FitReport fit_logistic_ls(const NNSeries& series);

// Product-moment correlation; throws on zero variance or length < 3.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

// Regularized survival functions used for the p-values.
double chi_square_sf_1df(double statistic);
double student_t_sf(double t, double df);       // one-sided upper tail
double fisher_f_sf(double f, double df1, double df2);

}  // namespace scripta
