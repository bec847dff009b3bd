#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "vangle/errors.hpp"
#include "vangle/metrics.hpp"

namespace vangle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlatRelative = 1e-13;
constexpr int kFlatRun = 8;
constexpr double kPiStation = 3.14159265358979323846;

// 5-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 5> kGaussX = {0.04691007703066800, 0.23076534494715845, 0.5,
                                           0.76923465505284155, 0.95308992296933200};
constexpr std::array<double, 5> kGaussW = {0.11846344252809454, 0.23931433524968324,
                                           0.28444444444444444, 0.23931433524968324,
                                           0.11846344252809454};

// Signed distance to the boundary (negative outside) with its gradient, on
// raw coordinates. For a convex polygon the distance of an interior point to
// the boundary equals the smallest distance to an edge line.
class DistanceField {
 public:
  explicit DistanceField(const Domain& g) : dim_(dimension(g)) {
    if (std::holds_alternative<UnitBall>(g)) {
      kind_ = Kind::kBall;
    } else if (std::holds_alternative<HalfSpace>(g)) {
      kind_ = Kind::kHalf;
    } else {
      kind_ = Kind::kPolygon;
      const auto& poly = std::get<ConvexPolygon>(g);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly.vertex(i);
        const Point e = poly.vertex(i + 1) - a;
        const double len = norm(e);
        const double nx = -e[1] / len, ny = e[0] / len;
        edges_.push_back({nx, ny, nx * a[0] + ny * a[1]});
      }
    }
  }

  int dim() const { return dim_; }

  double operator()(const double* z, double* grad) const {
    switch (kind_) {
      case Kind::kBall: {
        double r2 = 0.0;
        for (int i = 0; i < dim_; ++i) r2 += z[i] * z[i];
        const double r = std::sqrt(r2);
        if (grad != nullptr) {
          for (int i = 0; i < dim_; ++i) grad[i] = r > 0.0 ? -z[i] / r : 0.0;
        }
        return 1.0 - r;
      }
      case Kind::kHalf:
        if (grad != nullptr) {
          for (int i = 0; i < dim_; ++i) grad[i] = 0.0;
          grad[dim_ - 1] = 1.0;
        }
        return z[dim_ - 1];
      case Kind::kPolygon:
        break;
    }
    double best = kInf;
    const Edge* arg = &edges_.front();
    for (const Edge& e : edges_) {
      const double d = e.nx * z[0] + e.ny * z[1] - e.c;
      if (d < best) {
        best = d;
        arg = &e;
      }
    }
    if (grad != nullptr) {
      grad[0] = arg->nx;
      grad[1] = arg->ny;
    }
    return best;
  }

 private:
  enum class Kind { kBall, kHalf, kPolygon };
  struct Edge {
    double nx, ny, c;
  };
  Kind kind_ = Kind::kBall;
  int dim_;
  std::vector<Edge> edges_;
};

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Composite quadrature rule on [0, 1] for integrands built from 1/d along a
// segment. Intervals are bisected until d varies by at most kPieceRatio on
// them, which grades the rule geometrically towards an endpoint close to the
// boundary; each piece then gets the 5-point Gauss rule.
constexpr double kPieceRatio = 1.25;
constexpr int kMaxDepth = 60;

struct QuadNode {
  double t;
  double w;
};

class SegmentRule {
 public:
  explicit SegmentRule(int dim) : z_(static_cast<std::size_t>(dim)) {}

  // Returns false when d <= 0 somewhere on the segment.
  bool build(const DistanceField& field, const double* a, const double* b) {
    a_ = a;
    b_ = b;
    field_ = &field;
    nodes_.clear();
    const double d0 = distance_at(0.0);
    const double d1 = distance_at(1.0);
    if (!(d0 > 0.0 && d1 > 0.0)) return false;
    return refine(0.0, 1.0, d0, d1, 0);
  }

  const std::vector<QuadNode>& nodes() const { return nodes_; }

  double distance_at(double t, double* grad = nullptr) {
    const int n = field_->dim();
    for (int i = 0; i < n; ++i) z_[static_cast<std::size_t>(i)] = a_[i] + t * (b_[i] - a_[i]);
    return (*field_)(z_.data(), grad);
  }

 private:
  bool refine(double t0, double t1, double d0, double d1, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const double dm = distance_at(tm);
    if (!(dm > 0.0)) return false;
    const double lo = std::min({d0, d1, dm});
    const double hi = std::max({d0, d1, dm});
    if (hi <= kPieceRatio * lo || depth >= kMaxDepth) {
      for (std::size_t g = 0; g < kGaussX.size(); ++g) {
        nodes_.push_back({t0 + kGaussX[g] * (t1 - t0), kGaussW[g] * (t1 - t0)});
      }
      return true;
    }
    return refine(t0, tm, d0, dm, depth + 1) && refine(tm, t1, dm, d1, depth + 1);
  }

  const double* a_ = nullptr;
  const double* b_ = nullptr;
  const DistanceField* field_ = nullptr;
  std::vector<double> z_;
  std::vector<QuadNode> nodes_;
};

double segment_norm(int n, const double* a, const double* b) {
  double len2 = 0.0;
  for (int i = 0; i < n; ++i) len2 += (b[i] - a[i]) * (b[i] - a[i]);
  return std::sqrt(len2);
}

// Quasihyperbolic length of the segment [a, b]; +inf when it leaves G.
double segment_length(const DistanceField& field, const double* a, const double* b,
                      SegmentRule& rule) {
  if (!rule.build(field, a, b)) return kInf;
  double sum = 0.0;
  for (const QuadNode& q : rule.nodes()) sum += q.w / rule.distance_at(q.t);
  return segment_norm(field.dim(), a, b) * sum;
}

// Adds the gradients of segment_length with respect to a and b into ga, gb:
//   d/db = S (b - a)/|b - a| - |b - a| int t grad d / d^2,
//   d/da = -S (b - a)/|b - a| - |b - a| int (1 - t) grad d / d^2,
// with S = int 1/d over the unit parameter interval.
void add_segment_gradient(const DistanceField& field, const double* a, const double* b,
                          double* ga, double* gb, SegmentRule& rule, double* grad) {
  const int n = field.dim();
  if (!rule.build(field, a, b)) return;
  const double len = segment_norm(n, a, b);
  double s = 0.0;
  for (const QuadNode& q : rule.nodes()) {
    const double d = rule.distance_at(q.t, grad);
    s += q.w / d;
    const double c = len * q.w / (d * d);
    for (int i = 0; i < n; ++i) {
      gb[i] -= c * q.t * grad[i];
      ga[i] -= c * (1.0 - q.t) * grad[i];
    }
  }
  if (len > 0.0) {
    for (int i = 0; i < n; ++i) {
      const double u = s * (b[i] - a[i]) / len;
      gb[i] += u;
      ga[i] -= u;
    }
  }
}

// Interior nodes are constrained to hyperplanes orthogonal to the chord at
// equally spaced stations; the unknowns are their offsets in those planes.
class Polyline {
 public:
  Polyline(const Domain& g, const Point& x, const Point& y, int nodes)
      : field_(g), nodes_(nodes), dim_(x.dim()), basis_(dim_, dim_ - 1) {
    x_ = Eigen::Map<const Vec>(x.coords().data(), dim_);
    y_ = Eigen::Map<const Vec>(y.coords().data(), dim_);
    const Vec e = (y_ - x_).normalized();
    int found = 0;
    for (int axis = 0; axis < dim_ && found < dim_ - 1; ++axis) {
      Vec v = Vec::Unit(dim_, axis) - e[axis] * e;
      for (int k = 0; k < found; ++k) v -= v.dot(basis_.col(k)) * basis_.col(k);
      if (v.norm() > 1e-6) basis_.col(found++) = v.normalized();
    }
    grad_.resize(static_cast<std::size_t>(dim_));
  }

  int unknowns() const { return nodes_ * block(); }
  int block() const { return dim_ - 1; }

  // Node coordinates as columns, endpoints included.
  Mat positions(const Vec& q) const {
    Mat p(dim_, nodes_ + 2);
    p.col(0) = x_;
    p.col(nodes_ + 1) = y_;
    for (int i = 1; i <= nodes_; ++i) {
      // Chebyshev stations: geodesics meet the boundary-normal direction
      // steeply near low endpoints, where the path needs more nodes.
      const double tau = 0.5 * (1.0 - std::cos(kPiStation * i / (nodes_ + 1)));
      p.col(i) = x_ + tau * (y_ - x_) + basis_ * q.segment((i - 1) * block(), block());
    }
    return p;
  }

  double energy(const Vec& q) const {
    const Mat p = positions(q);
    double sum = 0.0;
    for (int i = 0; i <= nodes_; ++i) {
      sum += segment_length(field_, p.col(i).data(), p.col(i + 1).data(), rule_);
      if (!std::isfinite(sum)) return kInf;
    }
    return sum;
  }

  Vec gradient(const Vec& q) const {
    const Mat p = positions(q);
    Mat full = Mat::Zero(dim_, nodes_ + 2);
    for (int i = 0; i <= nodes_; ++i) {
      add_segment_gradient(field_, p.col(i).data(), p.col(i + 1).data(), full.col(i).data(),
                           full.col(i + 1).data(), rule_, grad_.data());
    }
    Vec out(unknowns());
    for (int i = 1; i <= nodes_; ++i) {
      out.segment((i - 1) * block(), block()) = basis_.transpose() * full.col(i);
    }
    return out;
  }

  // Block-tridiagonal Hessian by finite differences of the gradient. Nodes
  // three apart do not interact, so each colour class is perturbed at once.
  Eigen::SparseMatrix<double> hessian(const Vec& q, const Vec& g0, double length_scale) const {
    const int b = block();
    const int m = unknowns();
    const Mat p = positions(q);
    std::vector<double> step(static_cast<std::size_t>(nodes_));
    for (int i = 0; i < nodes_; ++i) {
      const double d = field_(p.col(i + 1).data(), nullptr);
      step[static_cast<std::size_t>(i)] = 1e-6 * std::min(d, length_scale);
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(6 * m * b));
    for (int colour = 0; colour < 3; ++colour) {
      for (int k = 0; k < b; ++k) {
        Vec qp = q;
        for (int i = colour; i < nodes_; i += 3) qp[i * b + k] += step[static_cast<std::size_t>(i)];
        const Vec g1 = gradient(qp);
        for (int i = colour; i < nodes_; i += 3) {
          const double h = step[static_cast<std::size_t>(i)];
          for (int j = std::max(0, i - 1); j <= std::min(nodes_ - 1, i + 1); ++j) {
            for (int l = 0; l < b; ++l) {
              const double v = (g1[j * b + l] - g0[j * b + l]) / h;
              // Symmetrize by averaging with the transposed entry.
              trips.emplace_back(j * b + l, i * b + k, 0.5 * v);
              trips.emplace_back(i * b + k, j * b + l, 0.5 * v);
            }
          }
        }
      }
    }
    Eigen::SparseMatrix<double> h(m, m);
    h.setFromTriplets(trips.begin(), trips.end());
    return h;
  }

  std::vector<Point> points(const Vec& q) const {
    const Mat p = positions(q);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(nodes_ + 2));
    for (int i = 0; i <= nodes_ + 1; ++i) {
      out.emplace_back(std::vector<double>(p.col(i).data(), p.col(i).data() + dim_));
    }
    return out;
  }

 private:
  DistanceField field_;
  int nodes_;
  int dim_;
  Vec x_;
  Vec y_;
  Mat basis_;
  mutable SegmentRule rule_{dim_};
  mutable std::vector<double> grad_;
};

}  // namespace

double qh_polyline_length(const Domain& g, const std::vector<Point>& nodes) {
  const DistanceField field(g);
  SegmentRule rule(field.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    sum += segment_length(field, nodes[i].coords().data(), nodes[i + 1].coords().data(), rule);
  }
  return sum;
}

QhPath qh_path(const Domain& g, const Point& x, const Point& y, const QhSolverParams& params) {
  require_interior(g, x, "qh_distance");
  require_interior(g, y, "qh_distance");
  if (params.node_count < 2) throw UsageError("qh_distance: node_count must be at least 2");
  if (!(params.step_tolerance > 0.0)) throw UsageError("qh_distance: step_tolerance must be positive");
  if (x == y) return {{x, y}, 0.0, 0, true};

  const Polyline line(g, x, y, params.node_count);
  const double scale = distance(x, y);
  Vec q = Vec::Zero(line.unknowns());
  double f = line.energy(q);
  if (!std::isfinite(f)) throw DomainError("qh_distance: chord leaves the domain");

  QhPath out;
  double lambda = 1e-3;
  int flat_steps = 0;
  for (int iter = 1; iter <= params.max_iters; ++iter) {
    out.iterations = iter;
    const Vec grad = line.gradient(q);
    const Eigen::SparseMatrix<double> hess = line.hessian(q, grad, scale);
    Eigen::VectorXd diag = hess.diagonal().cwiseAbs();
    const double floor = std::max(1e-12, 1e-12 * diag.maxCoeff());
    diag = diag.cwiseMax(floor);

    bool accepted = false;
    double max_step = 0.0;
    while (lambda < 1e16) {
      Eigen::SparseMatrix<double> a = hess;
      for (int i = 0; i < a.rows(); ++i) a.coeffRef(i, i) += lambda * diag[i];
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
      if (solver.info() == Eigen::Success) {
        const Vec delta = solver.solve(-grad);
        const Vec trial = q + delta;
        const double ft = delta.allFinite() ? line.energy(trial) : kInf;
        if (ft < f) {
          flat_steps = f - ft <= kFlatRelative * f ? flat_steps + 1 : 0;
          q = trial;
          f = ft;
          max_step = delta.cwiseAbs().maxCoeff();
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          break;
        }
      }
      lambda *= 10.0;
    }
    // No decrease at any damping, or a run of steps that no longer change the
    // length: the functional is flat to rounding. The latter happens where
    // the path crosses a ridge of the (non-smooth) polygon distance.
    if (!accepted || max_step < params.step_tolerance || flat_steps >= kFlatRun) {
      out.converged = true;
      break;
    }
  }
  out.nodes = line.points(q);
  out.length = f;
  return out;
}

MetricResult qh_distance(const Domain& g, const Point& x, const Point& y,
                         const QhSolverParams& params) {
  if (x == y) {
    require_interior(g, x, "qh_distance");
    return {0.0, std::nullopt, Enclosure{0.0, 0.0}};
  }
  const QhPath path = qh_path(g, x, y, params);
  if (!path.converged) {
    throw ConvergenceError("qh_distance: no convergence within max_iters", path.length);
  }
  Enclosure enc{jmetric(g, x, y).value, path.length};
  if (std::holds_alternative<UnitBall>(g)) {
    const double r = rho(g, x, y).value;
    enc.lower = std::max(enc.lower, 0.5 * r);
    enc.upper = std::min(enc.upper, r);
  }
  return {path.length, std::nullopt, enc};
}

}  // namespace vangle
