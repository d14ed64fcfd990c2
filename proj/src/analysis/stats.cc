// Copyright 2026 The ibrl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ibrl/analysis/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace ibrl {

double Mean(const std::vector<double>& x) {
  if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double SampleStd(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = Mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

RollingSeries Rolling(const std::vector<double>& x, int window) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  if (static_cast<size_t>(window) > x.size()) throw std::invalid_argument("window longer than series");
  RollingSeries out;
  const size_t w = window;
  for (size_t end = w; end <= x.size(); ++end) {
    std::vector<double> slice(x.begin() + (end - w), x.begin() + end);
    out.mean.push_back(Mean(slice));
    out.std.push_back(SampleStd(slice));
  }
  return out;
}

std::string SignificanceStars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

namespace {

double TwoSidedP(double t, double dof) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace

RegressionResult SimpleOls(const std::vector<double>& y, const std::vector<double>& x) {
  if (y.size() != x.size()) throw std::invalid_argument("regression series differ in length");
  const size_t n = y.size();
  if (n < 3) throw std::invalid_argument("regression needs at least 3 observations");
  const double mx = Mean(x), my = Mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("zero-variance regressor");
  RegressionResult r;
  r.n = n;
  r.b1 = sxy / sxx;
  r.b0 = my - r.b1 * mx;
  double sse = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double e = y[i] - r.b0 - r.b1 * x[i];
    sse += e * e;
  }
  r.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  const double dof = static_cast<double>(n - 2);
  const double s2 = sse / dof;
  double sumx2 = 0.0;
  for (double v : x) sumx2 += v * v;
  r.se1 = std::sqrt(s2 / sxx);
  r.se0 = std::sqrt(s2 * sumx2 / (static_cast<double>(n) * sxx));
  auto ratio = [](double b, double se) {
    if (se > 0.0) return b / se;
    return b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
  };
  r.t0 = ratio(r.b0, r.se0);
  r.t1 = ratio(r.b1, r.se1);
  r.p0 = TwoSidedP(r.t0, dof);
  r.p1 = TwoSidedP(r.t1, dof);
  return r;
}

RegressionResult CategoricalRegression(const std::vector<double>& y, const std::vector<int>& eta) {
  if (y.size() != eta.size()) throw std::invalid_argument("regression series differ in length");
  bool has0 = false, has1 = false;
  std::vector<double> x(eta.size());
  for (size_t i = 0; i < eta.size(); ++i) {
    if (eta[i] != 0 && eta[i] != 1) throw std::invalid_argument("eta must be 0 or 1");
    has0 |= eta[i] == 0;
    has1 |= eta[i] == 1;
    x[i] = 1.0 - eta[i];
  }
  if (!has0 || !has1) throw std::invalid_argument("degenerate regressor");
  return SimpleOls(y, x);
}

double KolmogorovSurvival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  const double a2 = -2.0 * lambda * lambda;
  double sum = 0.0, sign = 1.0, prev = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * 2.0 * std::exp(a2 * j * j);
    sum += term;
    if (std::abs(term) <= 1e-10 * prev || std::abs(term) <= 1e-16 * sum) {
      return std::clamp(sum, 0.0, 1.0);
    }
    sign = -sign;
    prev = std::abs(term);
  }
  return 1.0;  // series has not settled: lambda is tiny
}

KsResult KsTwoSample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks samples must be non-empty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult r;
  r.d = d;
  const double en = std::sqrt(na * nb / (na + nb));
  r.p_value = KolmogorovSurvival((en + 0.12 + 0.11 / en) * d);
  return r;
}

std::vector<LagCorrelation> LaggedCorrelation(const std::vector<double>& x,
                                              const std::vector<double>& y, int max_lag,
                                              double alpha) {
  if (x.size() != y.size()) throw std::invalid_argument("series differ in length");
  if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
  const long n = static_cast<long>(x.size());
  std::vector<LagCorrelation> out;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    LagCorrelation c;
    c.lag = lag;
    const long start = std::max(0L, -static_cast<long>(lag));
    const long end = std::min(n, n - lag);
    if (end - start < 3) throw std::invalid_argument("fewer than 3 overlapping points at a lag");
    std::vector<double> xs, ys;
    for (long t = start; t < end; ++t) {
      xs.push_back(x[t]);
      ys.push_back(y[t + lag]);
    }
    c.n = xs.size();
    const double mx = Mean(xs), my = Mean(ys);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
      sxx += (xs[k] - mx) * (xs[k] - mx);
      syy += (ys[k] - my) * (ys[k] - my);
      sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (sxx > 0.0 && syy > 0.0) {
      c.defined = true;
      c.corr = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
      const double dof = static_cast<double>(c.n) - 2.0;
      const double denom = 1.0 - c.corr * c.corr;
      const double t = denom > 0.0 ? c.corr * std::sqrt(dof / denom)
                                   : std::copysign(std::numeric_limits<double>::infinity(), c.corr);
      c.p_value = TwoSidedP(t, dof);
      c.significant = c.p_value < alpha;
    }
    out.push_back(c);
  }
  return out;
}

std::map<int, int> MaxHubTenure(const std::vector<int>& hub_ids, const std::vector<int>& etas) {
  if (hub_ids.size() != etas.size()) throw std::invalid_argument("series differ in length");
  std::map<int, int> best;
  for (int e : etas) best.emplace(e, 0);
  int run = 0;
  for (size_t t = 0; t < hub_ids.size(); ++t) {
    if (hub_ids[t] < 0) {
      run = 0;
      continue;
    }
    const bool extends = t > 0 && run > 0 && hub_ids[t] == hub_ids[t - 1] && etas[t] == etas[t - 1];
    run = extends ? run + 1 : 1;
    best[etas[t]] = std::max(best[etas[t]], run);
  }
  return best;
}

double Quantile(std::vector<double> x, double q) {
  if (x.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(x.begin(), x.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(x.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (pos - lo) * (x[hi] - x[lo]);
}

}  // namespace ibrl
