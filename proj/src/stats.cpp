#include "rdpso/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "rdpso/error.hpp"

namespace rdpso {
namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges fast for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxTerms = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::accuracy, "incomplete beta continued fraction did not converge");
}

double sample_variance(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::input, "summarize: empty sample");
  const double mean = mean_of(values);
  const double std = values.size() < 2 ? std::numeric_limits<double>::quiet_NaN()
                                       : std::sqrt(sample_variance(values, mean));
  return {mean, std};
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::domain, "incomplete beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "incomplete beta: x outside [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (!(dof > 0.0)) throw Error(ErrorKind::domain, "t distribution: dof must be > 0");
  if (std::isnan(t)) throw Error(ErrorKind::numeric, "t distribution: t is NaN");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

TTest unpaired_t(std::span<const double> a, std::span<const double> b, double level) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::input, "unpaired_t: each sample needs at least 2 values");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double qa = sample_variance(a, ma) / na;
  const double qb = sample_variance(b, mb) / nb;
  const double se2 = qa + qb;

  TTest out{};
  if (se2 == 0.0) {
    // Both samples constant: identical means are indistinguishable, any
    // difference is certain.
    out.dof = na + nb - 2.0;
    out.t = ma == mb ? 0.0 : std::numeric_limits<double>::infinity();
    out.p = ma == mb ? 1.0 : 0.0;
  } else {
    out.t = std::abs(ma - mb) / std::sqrt(se2);
    out.dof = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    out.p = student_t_two_sided_p(out.t, out.dof);
  }
  out.significant = out.p < level;
  return out;
}

ProblemRanking rank_problem(std::span<const ResultSample> samples, double level) {
  ProblemRanking out;
  const std::size_t k = samples.size();
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (samples[i].final_bests.empty()) {
      throw Error(ErrorKind::input, "rank_problem: empty sample for " + samples[i].algorithm);
    }
    means[i] = mean_of(samples[i].final_bests);
  }
  out.order.resize(k);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  // Stable on equal means so ties keep input order.
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t x, std::size_t y) { return means[x] < means[y]; });

  out.ranks.assign(k, 0);
  int group_rank = 1;
  for (std::size_t pos = 0; pos < k; ++pos) {
    if (pos > 0) {
      const TTest test = unpaired_t(samples[out.order[pos - 1]].final_bests,
                                    samples[out.order[pos]].final_bests, level);
      out.adjacent_tests.push_back(test);
      if (test.significant) group_rank = static_cast<int>(pos) + 1;
    }
    out.ranks[out.order[pos]] = group_rank;
  }
  return out;
}

std::map<std::string, double> average_rank(const RankTable& table) {
  std::set<std::string> algorithms;
  std::set<std::string> problems;
  for (const auto& [key, rank] : table.ranks) {
    algorithms.insert(key.first);
    problems.insert(key.second);
  }
  std::string missing;
  std::map<std::string, double> out;
  for (const std::string& a : algorithms) {
    double sum = 0.0;
    for (const std::string& p : problems) {
      const auto it = table.ranks.find({a, p});
      if (it == table.ranks.end()) {
        missing += (missing.empty() ? "" : ", ") + a + "/" + p;
        continue;
      }
      sum += it->second;
    }
    out[a] = sum / static_cast<double>(problems.size());
  }
  if (!missing.empty()) throw Error(ErrorKind::input, "average_rank: missing cells: " + missing);
  return out;
}

}  // namespace rdpso
