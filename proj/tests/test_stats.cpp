#include "doctest.h"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "rdpso/error.hpp"
#include "rdpso/random.hpp"
#include "rdpso/stats.hpp"

using namespace rdpso;

namespace {

// Normal draws rescaled to an exact sample mean and standard deviation.
std::vector<double> synthetic(double mean, double sd, std::size_t n, std::uint64_t seed) {
  SeededRandom rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  const Summary s = summarize(v);
  for (double& x : v) x = mean + sd * (x - s.mean) / s.std;
  return v;
}

ResultSample sample(std::string algorithm, std::vector<double> values) {
  return {std::move(algorithm), "p", std::move(values)};
}

// numpy default_rng(7): 30 draws of N(0, 1) followed by 30 of N(0.6, 2²).
const std::vector<double> kWelchA{
    0.0012301533574825742, 0.2987455375084699, -0.2741378553622176,
    -0.8905918387572742, -0.45467078517172255, -0.9916465549964624,
    0.060143602597438485, 1.3402152455545335, -0.49220651855132963,
    -0.6204748998199404, 0.4898420501851982, 0.35688700816006075,
    0.10541424899789856, -0.9304680447082047, -0.02925182246327349,
    0.6953031944582878, -1.344214547285082, -0.45761576104021817,
    -1.901222739800844, -1.289537739784976, -1.8417350377917323,
    -0.23509113107468127, -1.2674464814437032, 0.2712643588217015,
    0.15675108662422516, -0.18693094462995438, -2.516759710820513,
    -0.5386928958466366, -0.048500945401071985, 0.11330898600330756
};
const std::vector<double> kWelchB{
    -2.460271531010787, -0.3555065520678613, -1.357038156113279,
    -1.0176744788511987, 2.7217972467721574, -1.0150693506637931,
    0.5349565901089588, 2.3687797347663477, -0.567200865486604,
    0.3765961008316807, 0.8209282864989611, 0.727563548510124,
    -1.8501116528353867, 0.7522804607540161, 3.3176468434830753,
    -2.4942893562569646, 2.3187653760431965, 0.8387080513931624,
    -0.6829407882144428, 4.600833092684845, 2.1245194241694234,
    -1.7985778042104466, 0.7490324575429268, 1.7533791673403707,
    0.22243574929850135, 1.9658205343904118, 0.4669653597011688,
    1.9344951216686557, 3.477045183312304, -0.7513245020113056};

}  // namespace

TEST_CASE("summarize") {
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(summarize(ones).mean == 1.0);
  CHECK(summarize(ones).std == 0.0);
  const std::vector<double> two{0, 2};
  CHECK(summarize(two).std == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const std::vector<double> four{3, 5, 4, 4};
  CHECK(summarize(four).mean == 4.0);
  CHECK(summarize(four).std == doctest::Approx(0.816496580927726).epsilon(1e-14));
  const std::vector<double> single{7};
  CHECK(std::isnan(summarize(single).std));
  CHECK_THROWS_AS(summarize(std::vector<double>{}), Error);
}

TEST_CASE("incomplete beta and t tail") {
  CHECK(regularized_incomplete_beta(2, 3, 0) == 0.0);
  CHECK(regularized_incomplete_beta(2, 3, 1) == 1.0);
  // I_x(1, 1) = x and I_x(a, 1) = x^a.
  CHECK(regularized_incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(regularized_incomplete_beta(2.5, 1, 0.4) == doctest::Approx(std::pow(0.4, 2.5)).epsilon(1e-13));
  for (double dof : {1.0, 2.5, 7.0, 29.3, 180.0}) {
    boost::math::students_t dist(dof);
    for (double t : {0.0, 0.1, 1.0, 2.2, 5.0, 30.0}) {
      CAPTURE(dof);
      CAPTURE(t);
      const double ref = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      CHECK(std::abs(student_t_two_sided_p(t, dof) - ref) <= 1e-10 * std::max(1.0, ref) + 1e-300);
      CHECK(student_t_two_sided_p(-t, dof) == student_t_two_sided_p(t, dof));
    }
  }
}

TEST_CASE("welch test against reference values") {
  const TTest r = unpaired_t(kWelchA, kWelchB);
  CHECK(r.t == doctest::Approx(2.755226677049629).epsilon(1e-10));
  CHECK(r.p == doctest::Approx(0.008724784721797127).epsilon(1e-8));
  CHECK(r.significant);
  const double va = summarize(kWelchA).std * summarize(kWelchA).std / 30.0;
  const double vb = summarize(kWelchB).std * summarize(kWelchB).std / 30.0;
  CHECK(r.dof == doctest::Approx((va + vb) * (va + vb) / (va * va / 29.0 + vb * vb / 29.0)));
}

TEST_CASE("welch test edge cases") {
  const std::vector<double> a{1.0, 2.0, 3.5, 0.2};
  const TTest same = unpaired_t(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);
  CHECK_FALSE(same.significant);

  std::vector<double> lo(5), hi(5);
  for (int k = 0; k < 5; ++k) {
    lo[k] = 1e-9 * k;
    hi[k] = 10.0 + 1e-9 * k;
  }
  CHECK(unpaired_t(lo, hi).significant);

  const std::vector<double> flat{2, 2, 2};
  const TTest flat_same = unpaired_t(flat, flat);
  CHECK(flat_same.t == 0.0);
  CHECK(flat_same.p == 1.0);
  const std::vector<double> flat_other{3, 3, 3};
  const TTest flat_diff = unpaired_t(flat, flat_other);
  CHECK(std::isinf(flat_diff.t));
  CHECK(flat_diff.p == 0.0);
  CHECK(flat_diff.significant);

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(unpaired_t(one, a), Error);
}

TEST_CASE("welch test symmetry and scale invariance") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = synthetic(1.0, 2.0, 10 + seed, seed);
    const auto b = synthetic(2.0, 0.5, 25, seed + 100);
    const TTest ab = unpaired_t(a, b);
    const TTest ba = unpaired_t(b, a);
    CHECK(ab.t == doctest::Approx(ba.t).epsilon(1e-14));
    CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
    for (double k : {1e-6, 3.7, 1e8}) {
      std::vector<double> as = a, bs = b;
      for (double& x : as) x *= k;
      for (double& x : bs) x *= k;
      const TTest scaled = unpaired_t(as, bs);
      CHECK(std::abs(scaled.t - ab.t) <= 1e-9 * ab.t);
      CHECK(std::abs(scaled.p - ab.p) <= 1e-9);
    }
  }
}

TEST_CASE("rank triples") {
  const std::vector<ResultSample> separated{sample("c", synthetic(30, 0.01, 20, 1)),
                                            sample("a", synthetic(10, 0.01, 20, 2)),
                                            sample("b", synthetic(20, 0.01, 20, 3))};
  const ProblemRanking r = rank_problem(separated);
  CHECK(r.ranks == std::vector<int>{3, 1, 2});
  CHECK(r.order == std::vector<std::size_t>{1, 2, 0});
  CHECK(r.adjacent_tests.size() == 2);

  const std::vector<ResultSample> close{sample("a", synthetic(5.00, 1, 20, 4)),
                                        sample("b", synthetic(5.01, 1, 20, 5)),
                                        sample("c", synthetic(5.02, 1, 20, 6))};
  CHECK(rank_problem(close).ranks == std::vector<int>{1, 1, 1});

  // Competition ranking: a tie for first pushes the next group to third.
  const std::vector<ResultSample> mixed{sample("a", synthetic(1.00, 1, 20, 7)),
                                        sample("b", synthetic(1.01, 1, 20, 8)),
                                        sample("c", synthetic(50, 1, 20, 9)),
                                        sample("d", synthetic(90, 1, 20, 10))};
  CHECK(rank_problem(mixed).ranks == std::vector<int>{1, 1, 3, 4});
}

TEST_CASE("F6-style tie between the ring variants") {
  // Means and standard deviations of 100 runs on F6 for three algorithms.
  const std::vector<ResultSample> f6{
      sample("SPSO", synthetic(47.3744, 79.8406, 100, 61)),
      sample("RDPSO-Lbest", synthetic(19.5009, 16.7704, 100, 62)),
      sample("RDPSO-Lbest-RP", synthetic(24.0065, 24.4861, 100, 63))};
  const ProblemRanking r = rank_problem(f6);
  CHECK(r.ranks[1] == 1);
  CHECK(r.ranks[2] == 1);
  CHECK(r.ranks[0] == 3);
}

TEST_CASE("adding a constant changes no rank") {
  std::vector<ResultSample> base;
  const double means[] = {3.0, 3.2, 8.0, 8.1, 20.0};
  for (int k = 0; k < 5; ++k) {
    base.push_back(sample(std::string(1, char('a' + k)), synthetic(means[k], 1.0, 30, 40 + k)));
  }
  const auto expected = rank_problem(base).ranks;
  for (double shift : {-100.0, 0.5, 1e3}) {
    auto moved = base;
    for (auto& s : moved) {
      for (double& x : s.final_bests) x += shift;
    }
    CHECK(rank_problem(moved).ranks == expected);
  }
}

TEST_CASE("average rank") {
  // Ranks of RDPSO-Lbest on F1..F25.
  const int lbest[] = {5, 7, 3, 6, 4, 1, 1, 3, 3, 1, 1, 1, 1,
                       1, 4, 2, 1, 3, 3, 3, 1, 4, 1, 2, 4};
  RankTable table;
  for (int k = 0; k < 25; ++k) table.set("RDPSO-Lbest", "F" + std::to_string(k + 1), lbest[k]);
  CHECK(average_rank(table).at("RDPSO-Lbest") == 2.64);

  RankTable flat;
  for (int k = 0; k < 4; ++k) flat.set("x", "p" + std::to_string(k), 3);
  CHECK(average_rank(flat).at("x") == 3.0);

  RankTable two;
  two.set("x", "p", 1);
  two.set("x", "q", 3);
  two.set("y", "p", 2);
  two.set("y", "q", 1);
  CHECK(average_rank(two).at("x") == 2.0);

  RankTable gap = two;
  gap.set("z", "p", 3);
  try {
    average_rank(gap);
    FAIL("expected missing-cell error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
    CHECK(std::string(e.what()).find("z") != std::string::npos);
    CHECK(std::string(e.what()).find("q") != std::string::npos);
  }
}

TEST_CASE("average rank stays within [1, algorithms]") {
  SeededRandom rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    RankTable table;
    for (int p = 0; p < 6; ++p) {
      std::vector<ResultSample> samples;
      for (int a = 0; a < 4; ++a) {
        samples.push_back(sample("a" + std::to_string(a),
                                 synthetic(10 * rng.uniform(), 0.1 + rng.uniform(), 10,
                                           1000 * trial + 10 * p + a)));
      }
      const auto ranks = rank_problem(samples).ranks;
      for (int a = 0; a < 4; ++a) table.set(samples[a].algorithm, std::to_string(p), ranks[a]);
    }
    for (const auto& [name, avg] : average_rank(table)) {
      CHECK(avg >= 1.0);
      CHECK(avg <= 4.0);
    }
  }
}
