#include "finsler/zoo.hpp"

#include <cmath>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler::zoo {
namespace {

using num::fpow;
using num::fsqrt;
using num::ipow;
using num::Taylor2;

template <class T>
T dot(std::span<const T> y, Point a) {
  T s = y[0] * a[0];
  for (std::size_t i = 1; i < y.size(); ++i) s += y[i] * a[i];
  return s;
}

template <class T>
T norm_squared(std::span<const T> y) {
  T s = y[0] * y[0];
  for (std::size_t i = 1; i < y.size(); ++i) s += y[i] * y[i];
  return s;
}

double norm_squared(Point x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

std::vector<Interval> uniform_box(std::size_t n, double lo, double hi) {
  return std::vector<Interval>(n, Interval{lo, hi});
}

class EuclideanMetric final : public BasicMetric<EuclideanMetric> {
 public:
  explicit EuclideanMetric(std::size_t n) : n_(n) {
    if (n == 0 || n > num::kMaxDim) throw InvalidParameter("Euclidean: bad n");
  }
  std::size_t dim() const override { return n_; }
  std::string describe() const override {
    return "Euclidean(" + std::to_string(n_) + ")";
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    require_nonzero(y, margin, "y");
  }
  SampleBox default_box() const override {
    return {uniform_box(n_, -1, 1), uniform_box(n_, -1, 1)};
  }
  template <class T>
  T eval(Point, std::span<const T> y) const {
    return fsqrt(norm_squared(y));
  }
  template <class T>
  T eval_squared(Point, std::span<const T> y) const {
    return norm_squared(y);
  }

 private:
  std::size_t n_;
};

class ConstRiemannMetric final : public BasicMetric<ConstRiemannMetric> {
 public:
  explicit ConstRiemannMetric(num::SymMatrix a) : a_(std::move(a)) {
    if (a_.dim() == 0 || !num::cholesky(a_)) {
      throw InvalidParameter("ConstRiemann: matrix is not positive-definite");
    }
  }
  std::size_t dim() const override { return a_.dim(); }
  std::string describe() const override {
    std::ostringstream os;
    os << "ConstRiemann(";
    for (std::size_t i = 0; i < a_.dim(); ++i) {
      os << (i ? ";" : "");
      for (std::size_t j = 0; j < a_.dim(); ++j) os << (j ? "," : "") << a_(i, j);
    }
    os << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    require_nonzero(y, margin, "y");
  }
  SampleBox default_box() const override {
    return {uniform_box(dim(), -1, 1), uniform_box(dim(), -1, 1)};
  }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    return fsqrt(eval_squared(x, y));
  }
  template <class T>
  T eval_squared(Point, std::span<const T> y) const {
    const std::size_t n = a_.dim();
    T s = a_(0, 0) * y[0] * y[0];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == 0 && j == 0) continue;
        s += a_(i, j) * y[i] * y[j];
      }
    }
    return s;
  }

 private:
  num::SymMatrix a_;
};

class KleinMetric final : public BasicMetric<KleinMetric> {
 public:
  explicit KleinMetric(std::size_t n) : n_(n) {
    if (n == 0 || n > num::kMaxDim) throw InvalidParameter("Klein: bad n");
  }
  std::size_t dim() const override { return n_; }
  std::string describe() const override {
    return "Klein(" + std::to_string(n_) + ")";
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    if (!(std::sqrt(norm_squared(x)) < 1.0 - margin)) {
      throw DomainError("domain violation: Klein requires |x| < 1");
    }
    require_nonzero(y, margin, "y");
  }
  SampleBox default_box() const override {
    return {uniform_box(n_, -0.6, 0.6), uniform_box(n_, -1, 1)};
  }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    const double w = 1.0 - norm_squared(x);
    const T xy = dot(y, x);
    return fsqrt(norm_squared(y) * w + xy * xy) / w;
  }
  template <class T>
  T eval_squared(Point x, std::span<const T> y) const {
    const double w = 1.0 - norm_squared(x);
    const T xy = dot(y, x);
    return (norm_squared(y) * w + xy * xy) / (w * w);
  }

 private:
  std::size_t n_;
};

void check_lambda(double lambda) {
  if (!(lambda >= 2.0 && lambda <= 4.0)) {
    throw InvalidParameter("lambda must lie in [2, 4]");
  }
}

void check_k(int k) {
  if (k <= 0) throw InvalidParameter("k must be a positive integer");
}

template <class T>
T quartic_squared(const T& a, const T& b, double lambda) {
  return fsqrt(ipow(a, 4) + lambda * ipow(a, 2) * ipow(b, 2) + ipow(b, 4));
}

template <class T>
T knorm_squared(const T& a, const T& b, double lambda, int k) {
  return a * a + b * b +
         lambda * fpow(ipow(a, 2 * k) + ipow(b, 2 * k), 1.0 / k);
}

class QuarticMetric final : public BasicMetric<QuarticMetric> {
 public:
  explicit QuarticMetric(double lambda) : lambda_(lambda) { check_lambda(lambda); }
  std::size_t dim() const override { return 2; }
  std::string describe() const override {
    std::ostringstream os;
    os << "QuarticMinkowski(" << lambda_ << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    require_nonzero(y, margin, "y");
  }
  SampleBox default_box() const override {
    return {uniform_box(2, -1, 1), uniform_box(2, -1, 1)};
  }
  template <class T>
  T eval(Point, std::span<const T> y) const {
    return fsqrt(quartic_squared(y[0], y[1], lambda_));
  }
  template <class T>
  T eval_squared(Point, std::span<const T> y) const {
    return quartic_squared(y[0], y[1], lambda_);
  }

 private:
  double lambda_;
};

class KNormMetric final : public BasicMetric<KNormMetric> {
 public:
  KNormMetric(double lambda, int k) : lambda_(lambda), k_(k) {
    check_lambda(lambda);
    check_k(k);
  }
  std::size_t dim() const override { return 2; }
  std::string describe() const override {
    std::ostringstream os;
    os << "KNormMinkowski(" << lambda_ << "," << k_ << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    require_nonzero(y, margin, "y");
  }
  SampleBox default_box() const override {
    return {uniform_box(2, -1, 1), uniform_box(2, -1, 1)};
  }
  template <class T>
  T eval(Point, std::span<const T> y) const {
    return fsqrt(knorm_squared(y[0], y[1], lambda_, k_));
  }
  template <class T>
  T eval_squared(Point, std::span<const T> y) const {
    return knorm_squared(y[0], y[1], lambda_, k_);
  }

 private:
  double lambda_;
  int k_;
};

class RandersMetric final : public BasicMetric<RandersMetric> {
 public:
  RandersMetric(MetricPtr alpha, Vec b0, std::vector<Vec> b_linear)
      : alpha_(std::move(alpha)), b0_(std::move(b0)),
        b_linear_(std::move(b_linear)) {
    const std::size_t n = alpha_->dim();
    if (b0_.size() != n) throw InvalidParameter("Randers: b has wrong length");
    if (!b_linear_.empty()) {
      if (b_linear_.size() != n) {
        throw InvalidParameter("Randers: linear b coefficients need n rows");
      }
      for (const auto& row : b_linear_) {
        if (row.size() != n) {
          throw InvalidParameter("Randers: linear b coefficients need n columns");
        }
      }
    }
  }

  std::size_t dim() const override { return alpha_->dim(); }
  std::string describe() const override {
    std::ostringstream os;
    os << "Randers(" << alpha_->describe() << ", b=(";
    for (std::size_t i = 0; i < b0_.size(); ++i) os << (i ? "," : "") << b0_[i];
    os << ")" << (b_linear_.empty() ? "" : "+Lx") << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    alpha_->check_domain(x, y, margin);
    const double norm = beta_norm(x);
    if (!(norm < 1.0 - margin)) {
      throw DomainError("domain violation: |beta|_alpha = " +
                        std::to_string(norm) + " >= 1");
    }
  }
  SampleBox default_box() const override { return alpha_->default_box(); }

  template <class T>
  T eval(Point x, std::span<const T> y) const {
    const Vec b = coefficients(x);
    T a = alpha_->value(x, y);
    return a + dot(y, Point(b));
  }

  Vec coefficients(Point x) const {
    Vec b = b0_;
    for (std::size_t i = 0; i < b_linear_.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) b[i] += b_linear_[i][j] * x[j];
    }
    return b;
  }

  double beta_norm(Point x) const {
    Vec e(dim(), 0.0);
    e[0] = 1.0;
    const auto a = fundamental_tensor(*alpha_, {Vec(x.begin(), x.end()), e}, 0.0);
    const Vec b = coefficients(x);
    const Vec ainv_b = num::sym_solve(a.g, b);
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * ainv_b[i];
    return std::sqrt(std::max(s, 0.0));
  }

 private:
  MetricPtr alpha_;
  Vec b0_;
  std::vector<Vec> b_linear_;
};

class Example11Metric final : public BasicMetric<Example11Metric> {
 public:
  Example11Metric(double lambda, int k) : lambda_(lambda), k_(k) {
    check_lambda(lambda);
    check_k(k);
  }
  std::size_t dim() const override { return 4; }
  std::string describe() const override {
    std::ostringstream os;
    os << "Example11(" << lambda_ << "," << k_ << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    if (!(x[0] > margin && x[2] > margin)) {
      throw DomainError("domain violation: requires x1 > 0 and x3 > 0");
    }
    if (!(y[0] > margin && y[2] > margin)) {
      throw DomainError("domain violation: requires y1 > 0 and y3 > 0");
    }
  }
  SampleBox default_box() const override {
    return {{{0.1, 2}, {-1, 1}, {0.1, 2}, {-1, 1}},
            {{0.1, 2}, {-2, 2}, {0.1, 2}, {-2, 2}}};
  }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    return fsqrt(eval_squared(x, y));
  }
  template <class T>
  T eval_squared(Point x, std::span<const T> y) const {
    const double x1 = x[0];
    const double x3 = x[2];
    const T first = x3 * x3 * quartic_squared(y[0], y[1], lambda_);
    const T cross = 8.0 * ipow(x1, 3) * ipow(x3, 3) * y[0] * y[2];
    const T second = x3 * x3 * knorm_squared(y[2], y[3], lambda_, k_);
    return first + cross + second;
  }

 private:
  double lambda_;
  int k_;
};

class Example43Metric final : public BasicMetric<Example43Metric> {
 public:
  Example43Metric(std::size_t n, double epsilon) : n_(n), epsilon_(epsilon) {
    if (n < 4 || n > num::kMaxDim) throw InvalidParameter("Example43: n must be >= 4");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
      throw InvalidParameter("Example43: epsilon must lie in [0, 1)");
    }
  }
  std::size_t dim() const override { return n_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "Example43(" << n_ << "," << epsilon_ << ")";
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    require_dims(*this, x, y);
    if (!(std::sqrt(norm_squared(x.subspan(3))) < 1.0 - margin)) {
      throw DomainError("domain violation: requires |x2| < 1");
    }
    require_nonzero(y.first(3), margin, "y1");
    require_nonzero(y.subspan(3), margin, "y2");
    const double sq = eval_squared(x, y);
    if (!(sq > 0.0)) {
      throw DomainError("domain violation: validity inequality fails (F^2 = " +
                        std::to_string(sq) + ")");
    }
  }
  SampleBox default_box() const override {
    SampleBox b{uniform_box(3, -1, 1), uniform_box(3, -1, 1)};
    auto rest = uniform_box(n_ - 3, -0.6, 0.6);
    b.x.insert(b.x.end(), rest.begin(), rest.end());
    auto ry = uniform_box(n_ - 3, -1, 1);
    b.y.insert(b.y.end(), ry.begin(), ry.end());
    return b;
  }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    return fsqrt(eval_squared(x, y));
  }
  template <class T>
  T eval_squared(Point x, std::span<const T> y) const {
    const Point x1 = x.first(3);
    const Point x2 = x.subspan(3);
    const auto y1 = y.first(3);
    const auto y2 = y.subspan(3);
    const double r2 = norm_squared(x2);
    const double w = 1.0 - r2;
    const T randers1 = fsqrt(norm_squared(y1)) + epsilon_ * y1[2];
    const T x2y2 = dot(y2, x2);
    const T funk = (fsqrt(norm_squared(y2) * w + x2y2 * x2y2) + x2y2) / w;
    return r2 * randers1 * randers1 + 2.0 * dot(y1, x1) * x2y2 +
           norm_squared(x1) * funk * funk;
  }

 private:
  std::size_t n_;
  double epsilon_;
};

class OffsetFixture final : public BasicMetric<OffsetFixture> {
 public:
  OffsetFixture(MetricPtr base, double offset)
      : base_(std::move(base)), offset_(offset) {}
  std::size_t dim() const override { return base_->dim(); }
  std::string describe() const override {
    std::ostringstream os;
    os << base_->describe() << "+" << offset_;
    return os.str();
  }
  void check_domain(Point x, Point y, double margin) const override {
    base_->check_domain(x, y, margin);
  }
  SampleBox default_box() const override { return base_->default_box(); }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    return base_->value(x, y) + offset_;
  }

 private:
  MetricPtr base_;
  double offset_;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

MetricPtr build_alpha(const RiemannAlpha& alpha) {
  return std::visit(
      Overloaded{
          [](const Euclidean& e) -> MetricPtr {
            return std::make_shared<EuclideanMetric>(e.n);
          },
          [](const ConstRiemann& c) -> MetricPtr {
            return std::make_shared<ConstRiemannMetric>(c.a);
          },
          [](const Klein& k) -> MetricPtr {
            return std::make_shared<KleinMetric>(k.n);
          },
      },
      alpha);
}

}  // namespace

std::string family_name(const ZooSpec& spec) {
  return std::visit(Overloaded{
                        [](const Euclidean&) { return "euclidean"; },
                        [](const ConstRiemann&) { return "const_riemann"; },
                        [](const Klein&) { return "klein"; },
                        [](const QuarticMinkowski&) { return "quartic_minkowski"; },
                        [](const KNormMinkowski&) { return "knorm_minkowski"; },
                        [](const Randers&) { return "randers"; },
                        [](const Example11&) { return "example11"; },
                        [](const Example43&) { return "example43"; },
                    },
                    spec);
}

MetricPtr build(const ZooSpec& spec, std::span<const Vec> validity_xs) {
  return std::visit(
      Overloaded{
          [](const Euclidean& e) -> MetricPtr {
            return std::make_shared<EuclideanMetric>(e.n);
          },
          [](const ConstRiemann& c) -> MetricPtr {
            return std::make_shared<ConstRiemannMetric>(c.a);
          },
          [](const Klein& k) -> MetricPtr {
            return std::make_shared<KleinMetric>(k.n);
          },
          [](const QuarticMinkowski& q) -> MetricPtr {
            return std::make_shared<QuarticMetric>(q.lambda);
          },
          [](const KNormMinkowski& q) -> MetricPtr {
            return std::make_shared<KNormMetric>(q.lambda, q.k);
          },
          [&](const Randers& r) -> MetricPtr {
            auto alpha = build_alpha(r.alpha);
            auto m = std::make_shared<RandersMetric>(alpha, r.b0, r.b_linear);
            std::vector<Vec> xs(validity_xs.begin(), validity_xs.end());
            if (xs.empty()) xs.emplace_back(alpha->dim(), 0.0);
            for (const auto& x : xs) {
              if (x.size() != alpha->dim()) {
                throw InvalidParameter("Randers: validity point has wrong length");
              }
              const double norm = m->beta_norm(x);
              if (!(norm < 1.0)) {
                throw RandersInvalid(
                    "Randers: |beta|_alpha = " + std::to_string(norm) + " >= 1",
                    x, norm);
              }
            }
            return m;
          },
          [](const Example11& e) -> MetricPtr {
            return std::make_shared<Example11Metric>(e.lambda, e.k);
          },
          [](const Example43& e) -> MetricPtr {
            return std::make_shared<Example43Metric>(e.n, e.epsilon);
          },
      },
      spec);
}

double randers_beta_norm(const FinslerMetric& m, Point x) {
  const auto* r = dynamic_cast<const RandersMetric*>(&m);
  if (r == nullptr) throw InvalidParameter("not a Randers zoo metric");
  return r->beta_norm(x);
}

RandersParts randers_decompose(const FinslerMetric& m, const TangentSample& s,
                               double margin) {
  m.check_domain(s.x, s.y, margin);
  Vec neg(s.y.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -s.y[i];
  try {
    m.check_domain(s.x, neg, margin);
  } catch (const DomainError& e) {
    throw DomainError(std::string("reflected direction unavailable: ") + e.what());
  }
  const double fp = m.value(s.x, s.y);
  const double fm = m.value(s.x, neg);
  return {0.5 * (fp + fm), 0.5 * (fp - fm)};
}

MetricPtr make_offset_fixture(MetricPtr base, double offset) {
  return std::make_shared<OffsetFixture>(std::move(base), offset);
}

}  // namespace finsler::zoo
