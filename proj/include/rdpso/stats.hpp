#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rdpso {

struct ResultSample {
  std::string algorithm;
  std::string problem;
  std::vector<double> final_bests;
};

struct Summary {
  double mean;
  double std;  // sample standard deviation (n − 1); NaN for a single value
};

// Throws Error(input) for an empty sample.
Summary summarize(std::span<const double> values);

// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

struct TTest {
  double t;    // |t|
  double dof;  // Welch–Satterthwaite
  double p;    // two-sided
  bool significant;
};

// Welch's unequal-variance test. Needs at least two values per side.
TTest unpaired_t(std::span<const double> a, std::span<const double> b, double level = 0.05);

struct ProblemRanking {
  // Indexes into the input, ascending by mean.
  std::vector<std::size_t> order;
  // Rank per input sample (competition ranking over tie groups).
  std::vector<int> ranks;
  // Test between order[k] and order[k + 1].
  std::vector<TTest> adjacent_tests;
};

// Sorts by mean, merges adjacent samples whose difference is not significant
// into one tie group, and gives every member the group's first position.
ProblemRanking rank_problem(std::span<const ResultSample> samples, double level = 0.05);

struct RankTable {
  std::map<std::pair<std::string, std::string>, int> ranks;  // (algorithm, problem) → rank

  void set(const std::string& algorithm, const std::string& problem, int rank) {
    ranks[{algorithm, problem}] = rank;
  }
};

// Mean rank per algorithm. Every algorithm must be ranked on every problem
// seen in the table; otherwise Error(input) lists the missing cells.
std::map<std::string, double> average_rank(const RankTable& table);

}  // namespace rdpso
