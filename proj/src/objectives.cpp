#include "rdpso/objectives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/QR>

#include "rdpso/error.hpp"

namespace rdpso {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Weierstrass constants.
constexpr double kWeierA = 0.5;
constexpr double kWeierB = 3.0;
constexpr int kWeierKMax = 20;

double scaffer_pair(double x, double y) {
  const double r2 = x * x + y * y;
  const double s = std::sin(std::sqrt(r2));
  const double d = 1.0 + 0.001 * r2;
  return 0.5 + (s * s - 0.5) / (d * d);
}

double rosenbrock_pair(double x, double y) {
  const double a = x * x - y;
  const double b = x - 1.0;
  return 100.0 * a * a + b * b;
}

double griewank_scalar(double u) { return u * u / 4000.0 - std::cos(u) + 1.0; }

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

std::vector<Bounds> replicate(Bounds b, std::size_t n) {
  if (!(b.lo < b.hi)) throw Error(ErrorKind::input, "bounds need lo < hi");
  return std::vector<Bounds>(n, b);
}

void check_bounds(const std::vector<Bounds>& bounds, std::size_t n, const char* what) {
  if (bounds.size() != n) {
    throw Error(ErrorKind::dimension, std::string(what) + ": expected " + std::to_string(n) +
                                          " bounds, got " + std::to_string(bounds.size()));
  }
  for (const Bounds& b : bounds) {
    if (!(b.lo < b.hi)) throw Error(ErrorKind::input, std::string(what) + ": lo must be < hi");
  }
}

std::ifstream open_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return in;
}

std::vector<double> parse_reals(const std::string& text, const std::filesystem::path& path) {
  std::istringstream words(text);
  std::vector<double> values;
  std::string token;
  while (words >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::parse, path.string() + ": not a real number: '" + token + "'");
    }
    values.push_back(v);
  }
  return values;
}

struct Registered {
  std::string_view name;
  BaseFunction function;
  Bounds search;
  Bounds init;
  Bounds optimum_region;
  bool rotated;
  double noise_scale;
};

// The optimum region keeps shifted optima strictly inside the search box,
// except for the griewank problem whose optimum lies outside the init box.
constexpr std::array<Registered, 12> kRegistry{{
    {"f1_sphere", BaseFunction::sphere, {-100, 100}, {-100, 100}, {-80, 80}, false, 0.0},
    {"f2_schwefel12", BaseFunction::schwefel_1_2, {-100, 100}, {-100, 100}, {-80, 80}, false, 0.0},
    {"f3_elliptic_rot", BaseFunction::elliptic, {-100, 100}, {-100, 100}, {-80, 80}, true, 0.0},
    {"f4_schwefel12_noise", BaseFunction::schwefel_1_2, {-100, 100}, {-100, 100}, {-80, 80}, false,
     0.4},
    {"f6_rosenbrock", BaseFunction::rosenbrock, {-100, 100}, {-100, 100}, {-80, 80}, false, 0.0},
    {"f7_griewank_rot_nobounds", BaseFunction::griewank, {-600, 600}, {0, 600}, {-600, 0}, true,
     0.0},
    {"f8_ackley_rot", BaseFunction::ackley, {-32, 32}, {-32, 32}, {-25.6, 25.6}, true, 0.0},
    {"f9_rastrigin", BaseFunction::rastrigin, {-5, 5}, {-5, 5}, {-4, 4}, false, 0.0},
    {"f10_rastrigin_rot", BaseFunction::rastrigin, {-5, 5}, {-5, 5}, {-4, 4}, true, 0.0},
    {"f11_weierstrass_rot", BaseFunction::weierstrass, {-0.5, 0.5}, {-0.5, 0.5}, {-0.4, 0.4}, true,
     0.0},
    {"f13_griewank_rosenbrock", BaseFunction::griewank_rosenbrock, {-3, 1}, {-3, 1}, {-2, 0}, false,
     0.0},
    {"f14_scaffer_rot", BaseFunction::scaffer_f6_expanded, {-100, 100}, {-100, 100}, {-80, 80}, true,
     0.0},
}};

constexpr std::array<std::string_view, kRegistry.size()> kNames = [] {
  std::array<std::string_view, kRegistry.size()> names{};
  for (std::size_t i = 0; i < kRegistry.size(); ++i) names[i] = kRegistry[i].name;
  return names;
}();

}  // namespace

double evaluate_base(BaseFunction f, std::span<const double> z) {
  const std::size_t n = z.size();
  double sum = 0.0;
  switch (f) {
    case BaseFunction::sphere:
      for (double v : z) sum += v * v;
      return sum;
    case BaseFunction::schwefel_1_2: {
      double partial = 0.0;
      for (double v : z) {
        partial += v;
        sum += partial * partial;
      }
      return sum;
    }
    case BaseFunction::elliptic:
      for (std::size_t i = 0; i < n; ++i) {
        const double expo = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        sum += std::pow(1e6, expo) * z[i] * z[i];
      }
      return sum;
    case BaseFunction::rosenbrock:
      for (std::size_t i = 0; i + 1 < n; ++i) sum += rosenbrock_pair(z[i], z[i + 1]);
      return sum;
    case BaseFunction::rastrigin:
      for (double v : z) sum += v * v - 10.0 * std::cos(kTwoPi * v) + 10.0;
      return sum;
    case BaseFunction::griewank: {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += z[i] * z[i] / 4000.0;
        prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
      }
      return sum - prod + 1.0;
    }
    case BaseFunction::ackley: {
      if (n == 0) return 0.0;
      double cos_sum = 0.0;
      for (double v : z) {
        sum += v * v;
        cos_sum += std::cos(kTwoPi * v);
      }
      const double dn = static_cast<double>(n);
      return -20.0 * std::exp(-0.2 * std::sqrt(sum / dn)) - std::exp(cos_sum / dn) + 20.0 +
             std::numbers::e;
    }
    case BaseFunction::weierstrass: {
      double offset = 0.0;
      double ak = 1.0;
      double bk = 1.0;
      for (int k = 0; k <= kWeierKMax; ++k) {
        for (double v : z) sum += ak * std::cos(kTwoPi * bk * (v + 0.5));
        offset += ak * std::cos(std::numbers::pi * bk);
        ak *= kWeierA;
        bk *= kWeierB;
      }
      return sum - static_cast<double>(n) * offset;
    }
    case BaseFunction::scaffer_f6_expanded:
      for (std::size_t i = 0; i < n; ++i) sum += scaffer_pair(z[i], z[(i + 1) % n]);
      return sum;
    case BaseFunction::griewank_rosenbrock:
      for (std::size_t i = 0; i < n; ++i) {
        sum += griewank_scalar(rosenbrock_pair(z[i], z[(i + 1) % n]));
      }
      return sum;
  }
  throw Error(ErrorKind::input, "unknown base function");
}

std::vector<double> base_minimizer(BaseFunction f, std::size_t n) {
  const bool at_ones = f == BaseFunction::rosenbrock || f == BaseFunction::griewank_rosenbrock;
  return std::vector<double>(n, at_ones ? 1.0 : 0.0);
}

Problem::Problem(std::string name, BaseFunction f, std::size_t dimension, Bounds search,
                 Bounds init)
    : name_(std::move(name)),
      function_(f),
      dimension_(dimension),
      search_(replicate(search, dimension)),
      init_(replicate(init, dimension)) {
  if (dimension == 0) throw Error(ErrorKind::input, "problem dimension must be positive");
}

void Problem::check_dimension(std::size_t n, const char* what) const {
  if (n != dimension_) {
    throw Error(ErrorKind::dimension, name_ + ": " + what + " has length " + std::to_string(n) +
                                          ", expected " + std::to_string(dimension_));
  }
}

Problem& Problem::set_shift(std::vector<double> shift) {
  check_dimension(shift.size(), "shift");
  shift_ = std::move(shift);
  return *this;
}

Problem& Problem::set_rotation(Matrix rotation) {
  check_dimension(static_cast<std::size_t>(rotation.rows()), "rotation");
  check_dimension(static_cast<std::size_t>(rotation.cols()), "rotation");
  if (!is_orthogonal(rotation)) {
    throw Error(ErrorKind::orthogonality, name_ + ": rotation matrix is not orthogonal");
  }
  rotation_ = std::move(rotation);
  return *this;
}

Problem& Problem::set_bias(double bias) {
  bias_ = bias;
  return *this;
}

Problem& Problem::set_noise_scale(double scale) {
  if (!(scale >= 0.0)) throw Error(ErrorKind::input, "noise scale must be non-negative");
  noise_scale_ = scale;
  return *this;
}

Problem& Problem::set_bounds_enforced(bool enforced) {
  bounds_enforced_ = enforced;
  return *this;
}

Problem& Problem::set_search_bounds(std::vector<Bounds> bounds) {
  check_bounds(bounds, dimension_, "search bounds");
  search_ = std::move(bounds);
  return *this;
}

Problem& Problem::set_init_bounds(std::vector<Bounds> bounds) {
  check_bounds(bounds, dimension_, "init bounds");
  init_ = std::move(bounds);
  return *this;
}

std::vector<double> Problem::transform(std::span<const double> x) const {
  check_dimension(x.size(), "x");
  Eigen::VectorXd d = as_vector(x);
  if (shift_) d -= as_vector(*shift_);
  if (rotation_) d = (*rotation_) * d;
  return {d.data(), d.data() + d.size()};
}

double Problem::evaluate(std::span<const double> x, RandomSource* noise) const {
  const std::vector<double> z = transform(x);
  double value = evaluate_base(function_, z);
  if (noise_scale_ > 0.0 && noise != nullptr) {
    value *= 1.0 + noise_scale_ * std::abs(noise->normal());
  }
  return value + bias_;
}

std::vector<double> Problem::optimum() const {
  const std::vector<double> zstar = base_minimizer(function_, dimension_);
  Eigen::VectorXd x = as_vector(zstar);
  if (rotation_) x = rotation_->transpose() * x;
  if (shift_) x += as_vector(*shift_);
  return {x.data(), x.data() + x.size()};
}

Matrix random_rotation(std::size_t n, RandomSource& rng) {
  if (n == 0) throw Error(ErrorKind::input, "random_rotation: n must be at least 1");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) a(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index c = 0; c < size; ++c) {
    if (packed(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

bool is_orthogonal(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXd gram = m.transpose() * m;
  const Eigen::MatrixXd residual = gram - Eigen::MatrixXd::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff() <= tolerance;
}

std::vector<double> load_shift(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in = open_data(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<double> values = parse_reals(buffer.str(), path);
  if (values.size() != n) {
    throw Error(ErrorKind::dimension, path.string() + ": expected " + std::to_string(n) +
                                          " values, found " + std::to_string(values.size()));
  }
  return values;
}

Matrix load_rotation(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in = open_data(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row = parse_reals(line, path);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != n) {
    throw Error(ErrorKind::dimension, path.string() + ": expected " + std::to_string(n) +
                                          " rows, found " + std::to_string(rows.size()));
  }
  const auto size = static_cast<Eigen::Index>(n);
  Matrix m(size, size);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw Error(ErrorKind::dimension, path.string() + ": row " + std::to_string(r + 1) +
                                            " has " + std::to_string(rows[r].size()) +
                                            " values, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  if (!is_orthogonal(m)) {
    throw Error(ErrorKind::orthogonality, path.string() + ": matrix is not orthogonal");
  }
  return m;
}

ProblemData load_problem_data(const std::filesystem::path& shift_path, std::size_t n,
                              const std::optional<std::filesystem::path>& rotation_path) {
  ProblemData data;
  data.shift = load_shift(shift_path, n);
  if (rotation_path) data.rotation = load_rotation(*rotation_path, n);
  return data;
}

std::span<const std::string_view> problem_names() { return kNames; }

Problem make_problem(std::string_view name, std::size_t dimension, std::uint64_t instance_seed) {
  const auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                               [&](const Registered& r) { return r.name == name; });
  if (it == kRegistry.end()) {
    std::string known;
    for (std::string_view n : kNames) known += (known.empty() ? "" : ", ") + std::string(n);
    throw Error(ErrorKind::unknown_name,
                "unknown problem '" + std::string(name) + "'; valid names: " + known);
  }
  const auto stream = static_cast<std::uint64_t>(it - kRegistry.begin()) + 1;
  SeededRandom rng(instance_seed, stream);

  Problem problem(std::string(name), it->function, dimension, it->search, it->init);
  problem.set_noise_scale(it->noise_scale);
  if (it->rotated) problem.set_rotation(random_rotation(dimension, rng));

  // Pick the optimum location first, then back out the shift that puts it there.
  Eigen::VectorXd target(static_cast<Eigen::Index>(dimension));
  const Bounds region = it->optimum_region;
  for (Eigen::Index j = 0; j < target.size(); ++j) {
    target[j] = region.lo + (region.hi - region.lo) * rng.uniform();
  }
  const std::vector<double> zstar = base_minimizer(it->function, dimension);
  Eigen::VectorXd offset = as_vector(zstar);
  if (problem.rotation()) offset = problem.rotation()->transpose() * offset;
  const Eigen::VectorXd shift = target - offset;
  problem.set_shift({shift.data(), shift.data() + shift.size()});
  return problem;
}

}  // namespace rdpso
