#include "conemetrics/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "conemetrics/curvature.hpp"
#include "conemetrics/geodesics.hpp"

namespace conemetrics {

namespace {

struct Functional {
  Vector row;
  std::string note;
  bool numerical = false;
};

Functional orthant_functional(const Vector& xi, const Vector& xj) {
  Eigen::Index k = 0;
  (xi.array() / xj.array()).maxCoeff(&k);  // first maximizer
  Functional f{Vector::Zero(xi.size()), {}, false};
  f.row(k) = 1.0 / xj(k);
  f.note = "coordinate " + std::to_string(k);
  return f;
}

Functional lorentz_functional(const Vector& boundary, const Vector& xj) {
  const auto n = boundary.size() - 1;
  const Vector spatial = boundary.tail(n);
  const double r = spatial.norm();
  Functional f{Vector::Zero(boundary.size()), {}, false};
  if (r <= 1e-13 * std::max(1.0, std::abs(boundary(0)) + xj.norm())) {
    // x_i and x_j share a ray; any interior-positive functional supports 0.
    f.row(0) = 1.0;
    f.note = "ray case";
  } else {
    // (1, -u) with |u| = 1 lies on the boundary of the dual cone and
    // vanishes on the boundary ray through (r, spatial).
    f.row(0) = 1.0;
    f.row.tail(n) = -spatial / r;
    f.note = "boundary normal";
  }
  f.row /= f.row.dot(xj);
  return f;
}

Functional sympd_functional(const Vector& boundary, const Vector& xj, std::size_t order) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym::from_coords(boundary, order));
  const Vector& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  int multiplicity = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) multiplicity += ev(k) - ev(0) <= 1e-10 * scale ? 1 : 0;
  const Vector w = es.eigenvectors().col(0);
  Functional f{sym::to_coords(w * w.transpose()), {}, false};
  f.row /= f.row.dot(xj);
  f.note = "null eigenvector, multiplicity " + std::to_string(multiplicity);
  return f;
}

// Subgradient of z -> M(z/x_j) at x_i by central differences. Any subgradient g
// has <g, x_j> = 1, is non-negative on the cone and vanishes at beta x_j - x_i.
Functional oracle_functional(const Cone& cone, const Vector& xi, const Vector& xj) {
  const double step = 1e-5 * xi.norm();
  Vector g(xi.size());
  Vector probe = xi;
  for (Eigen::Index k = 0; k < xi.size(); ++k) {
    probe(k) = xi(k) + step;
    const double up = signed_order_sup(cone, probe, xj);
    probe(k) = xi(k) - step;
    const double down = signed_order_sup(cone, probe, xj);
    probe(k) = xi(k);
    g(k) = (up - down) / (2.0 * step);
  }
  Functional f{g / g.dot(xj), "numerical subgradient (lower accuracy)", true};
  return f;
}

Functional supporting_functional(const Cone& cone, const Vector& xi, const Vector& xj, double beta) {
  const Vector boundary = beta * xj - xi;
  return std::visit(
      [&](const auto& k) -> Functional {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Orthant>) {
          return orthant_functional(xi, xj);
        } else if constexpr (std::is_same_v<K, Lorentz>) {
          return lorentz_functional(boundary, xj);
        } else if constexpr (std::is_same_v<K, SymPD>) {
          return sympd_functional(boundary, xj, k.order);
        } else {
          return oracle_functional(cone, xi, xj);
        }
      },
      cone.kind());
}

Matrix span_basis(const std::vector<ConePoint>& points) {
  Matrix m(points.front().dim(), points.size());
  for (std::size_t k = 0; k < points.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = points[k].coords();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

double relative_residual(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace

ConePoint Embedding::apply(const ConePoint& z) const {
  if (!sources.empty() && !z.cone().same_as(sources.front().cone())) {
    throw ConeMismatch("Embedding::apply: point from a different cone");
  }
  return {image_cone(), functionals * z.coords()};
}

Embedding embed(const std::vector<ConePoint>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("embed: need at least two points");
  const Cone& cone = points.front().cone();
  for (const auto& p : points) {
    if (!p.cone().same_as(cone)) throw ConeMismatch("embed: points from different cones");
    if (!contains_interior(p)) throw NotInterior("embed: points must be interior");
  }

  Embedding e;
  e.sources = points;
  e.basis = span_basis(points);
  e.betas = Matrix::Ones(n, n);
  e.functionals.resize(static_cast<Eigen::Index>(n * (n - 1)), cone.ambient_dim());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const OrderBound beta = order_sup(points[i], points[j]);
      if (!beta.is_finite()) throw DifferentParts("embed: points lie in different parts");
      e.betas(i, j) = beta.value;
      const Functional f = supporting_functional(cone, points[i].coords(), points[j].coords(), beta.value);
      e.functionals.row(row++) = f.row.transpose();
      e.pairs.emplace_back(i, j);
      e.notes.push_back("f(" + std::to_string(i) + "," + std::to_string(j) + "): " + f.note);
      e.lower_accuracy = e.lower_accuracy || f.numerical;
    }
  }
  for (const auto& p : points) e.images.push_back(e.apply(p));
  return e;
}

EmbeddingReport verify_embedding(const Embedding& e, double tol) {
  EmbeddingReport report;
  const std::size_t n = e.sources.size();
  for (const auto& img : e.images) report.images_interior = report.images_interior && contains_interior(img);

  for (std::size_t r = 0; r < e.pairs.size(); ++r) {
    const auto [i, j] = e.pairs[r];
    const Eigen::Index row = static_cast<Eigen::Index>(r);
    const double at_xj = e.functionals.row(row).dot(e.sources[j].coords());
    const Vector boundary = e.betas(i, j) * e.sources[j].coords() - e.sources[i].coords();
    report.max_normalization_error = std::max(report.max_normalization_error, std::abs(at_xj - 1.0));
    report.max_support_residual = std::max(
        report.max_support_residual, std::abs(e.functionals.row(row).dot(boundary)) / std::abs(at_xj));
  }

  if (report.images_interior) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double before = order_sup(e.sources[i], e.sources[j]).value;
        const double after = order_sup(e.images[i], e.images[j]).value;
        report.max_order_error = std::max(report.max_order_error, std::abs(before - after));
        report.max_thompson_error =
            std::max(report.max_thompson_error, std::abs(thompson_distance(e.sources[i], e.sources[j]) -
                                                         thompson_distance(e.images[i], e.images[j])));
        report.max_hilbert_error =
            std::max(report.max_hilbert_error, std::abs(hilbert_distance(e.sources[i], e.sources[j]) -
                                                        hilbert_distance(e.images[i], e.images[j])));
      }
    }
  }
  report.ok = report.images_interior && report.max_order_error <= tol &&
              report.max_thompson_error <= tol && report.max_hilbert_error <= tol &&
              report.max_normalization_error <= tol && report.max_support_residual <= tol;
  return report;
}

TransferReport transfer_geodesic_check(const ConePoint& u, const ConePoint& x, const ConePoint& y,
                                       double s, double tol) {
  TransferReport report;
  report.span_dim = span_dimension({u, x, y});
  if (report.span_dim < 3) {
    report.skipped = true;
    report.notice = "span{u, x, y} has dimension " + std::to_string(report.span_dim) +
                    "; the two-dimensional bound applies directly, no embedding needed";
    return report;
  }
  const ConePoint pux = make_geodesic(u, x).evaluate(s);
  const ConePoint puy = make_geodesic(u, y).evaluate(s);
  const Embedding e = embed({u, x, y, pux, puy});
  const auto& img = e.images;

  const ConePoint image_pux = make_geodesic(img[0], img[1]).evaluate(s);
  const ConePoint image_puy = make_geodesic(img[0], img[2]).evaluate(s);
  report.commuting_residual = std::max(relative_residual(img[3].coords(), image_pux.coords()),
                                       relative_residual(img[4].coords(), image_puy.coords()));

  report.lhs_thompson = thompson_distance(pux, puy);
  report.lhs_thompson_image = thompson_distance(image_pux, image_puy);
  report.lhs_hilbert = hilbert_distance(pux, puy);
  report.lhs_hilbert_image = hilbert_distance(image_pux, image_puy);
  report.rhs_thompson = thompson_distance(x, y);
  report.rhs_thompson_image = thompson_distance(img[1], img[2]);
  report.rhs_hilbert = hilbert_distance(x, y);
  report.rhs_hilbert_image = hilbert_distance(img[1], img[2]);
  report.radius = std::max(hilbert_distance(u, x), hilbert_distance(u, y));
  report.radius_image = std::max(hilbert_distance(img[0], img[1]), hilbert_distance(img[0], img[2]));

  const double diffs[] = {
      report.lhs_thompson - report.lhs_thompson_image, report.lhs_hilbert - report.lhs_hilbert_image,
      report.rhs_thompson - report.rhs_thompson_image, report.rhs_hilbert - report.rhs_hilbert_image,
      report.radius - report.radius_image};
  for (double d : diffs) report.invariance_error = std::max(report.invariance_error, std::abs(d));
  report.ok = report.commuting_residual <= tol && report.invariance_error <= tol;
  return report;
}

}  // namespace conemetrics
