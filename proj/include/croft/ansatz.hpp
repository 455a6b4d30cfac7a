#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "croft/error.hpp"
#include "croft/reference_family.hpp"
#include "croft/tortoise.hpp"

namespace croft {

/// Free q values: the first 12 intervals of the reference break grid.
inline constexpr std::size_t kAnsatzValues = 12;
/// q values plus the two shift components.
inline constexpr std::size_t kAnsatzDim = kAnsatzValues + 2;
/// Dimension after removing the two closure directions.
inline constexpr std::size_t kFormDim = kAnsatzDim - 2;

using AnsatzVector = Eigen::Matrix<double, kAnsatzDim, 1>;
using FormMatrix = Eigen::Matrix<double, kFormDim, kFormDim>;

/// Antisymmetric 24-value q on the reference breaks from its first 12 values.
inline StepFunction ansatz_q(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (static_cast<std::size_t>(v.size()) != kAnsatzValues) throw DomainError("ansatz needs 12 q values");
  std::vector<PiMultiple> breaks;
  for (auto [n, d] : reference::kBreaks) breaks.emplace_back(n, d);
  std::vector<double> q(2 * kAnsatzValues);
  for (std::size_t i = 0; i < kAnsatzValues; ++i) {
    q[i] = v(static_cast<Eigen::Index>(i));
    q[i + kAnsatzValues] = -q[i];
  }
  return make_step_function(std::move(breaks), std::move(q));
}

inline Family ansatz_family(const AnsatzVector& x) {
  return {ansatz_q(x.head<kAnsatzValues>()), {x(kAnsatzValues), x(kAnsatzValues + 1)}};
}

inline AnsatzVector reference_ansatz_vector() {
  AnsatzVector x;
  for (std::size_t i = 0; i < kAnsatzValues; ++i) x(static_cast<Eigen::Index>(i)) = reference::kQ[i];
  x(kAnsatzValues) = reference::kShift.x;
  x(kAnsatzValues + 1) = reference::kShift.y;
  return x;
}

/// Rows map the 12 q values to the closure defect Σ (q_{i+1} − q_i)·u(b_{i+1})
/// of the arc-centre chain.
inline Eigen::Matrix<double, 2, kAnsatzValues> closure_matrix() {
  Eigen::Matrix<double, 2, kAnsatzValues> C;
  const std::size_t n = 2 * kAnsatzValues;
  for (std::size_t j = 0; j < kAnsatzValues; ++j) {
    std::vector<double> q(n, 0.0);
    q[j] = 1.0;
    q[j + kAnsatzValues] = -1.0;
    Vec2 defect;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [num, den] = reference::kBreaks[i + 1];
      defect += (q[(i + 1) % n] - q[i]) * unit(static_cast<double>(num) * kPi / static_cast<double>(den));
    }
    C(0, static_cast<Eigen::Index>(j)) = defect.x;
    C(1, static_cast<Eigen::Index>(j)) = defect.y;
  }
  return C;
}

struct AnsatzPoint {
  Eigen::Matrix<double, kAnsatzValues, 1> v;
  Vec2 shift;
  double removed = 0.0;  ///< norm of the correction applied to v
};

/// Least-squares correction of v onto the closure constraints.
inline AnsatzPoint closure_project(const Eigen::Matrix<double, kAnsatzValues, 1>& v, Vec2 shift = {}) {
  const auto C = closure_matrix();
  const Eigen::Matrix2d G = C * C.transpose();
  const Eigen::Matrix<double, kAnsatzValues, 1> dv = C.transpose() * G.ldlt().solve(C * v);
  return {v - dv, shift, dv.norm()};
}

/// Orthonormal 14×12 basis of the closed directions: a null-space basis of the
/// closure matrix for the q block, and the identity for the shifts.
inline Eigen::Matrix<double, kAnsatzDim, kFormDim> ansatz_basis() {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(closure_matrix(), Eigen::ComputeFullV);
  const Eigen::MatrixXd V = svd.matrixV();
  Eigen::Matrix<double, kAnsatzDim, kFormDim> B = Eigen::Matrix<double, kAnsatzDim, kFormDim>::Zero();
  B.topLeftCorner<kAnsatzValues, kAnsatzValues - 2>() = V.rightCols(kAnsatzValues - 2);
  B(kAnsatzValues, kFormDim - 2) = 1.0;
  B(kAnsatzValues + 1, kFormDim - 1) = 1.0;
  return B;
}

/// Tortoise area at ε = 1 of the family with q values and shift x; its Hessian
/// at x = 0 is twice the ε² coefficient form.
inline double ansatz_area(const AnsatzVector& x, Mode mode) {
  return tortoise_area(ansatz_family(x), 1.0, mode).area;
}

struct QuadraticForm {
  FormMatrix matrix = FormMatrix::Zero();
  Eigen::Matrix<double, kAnsatzDim, kFormDim> basis;  ///< columns: closed directions in (q, shift)
  Mode mode = Mode::series2;
  double step = 0.0;
  double asymmetry = 0.0;     ///< max |M − Mᵀ| before symmetrisation
  double step_error = -1.0;   ///< max entry change against step h/2, if computed

  double value(const Eigen::Matrix<double, kFormDim, 1>& y) const { return y.dot(matrix * y); }
};

namespace detail {

inline FormMatrix polarised_hessian(Mode mode, double h, const Eigen::Matrix<double, kAnsatzDim, kFormDim>& B,
                                    double& asymmetry) {
  auto f = [&](const Eigen::Matrix<double, kFormDim, 1>& y) {
    return ansatz_area(B * y, mode);
  };
  using Y = Eigen::Matrix<double, kFormDim, 1>;
  const auto n = static_cast<Eigen::Index>(kFormDim);
  std::vector<std::future<std::vector<double>>> rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    rows.push_back(std::async(std::launch::async, [&, i] {
      std::vector<double> row(kFormDim);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Y ei = h * Y::Unit(i);
        const Y ej = h * Y::Unit(j);
        row[static_cast<std::size_t>(j)] = (f(ei + ej) - f(ei - ej) - f(ej - ei) + f(-ei - ej)) / (8.0 * h * h);
      }
      return row;
    }));
  }
  FormMatrix M;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get();
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = row[static_cast<std::size_t>(j)];
  }
  asymmetry = (M - M.transpose()).cwiseAbs().maxCoeff();
  return 0.5 * (M + M.transpose());
}

}  // namespace detail

/// ε² coefficient of the tortoise area as a quadratic form on the 12 closed
/// directions, by central differences of step h around the disc.
inline QuadraticForm assemble_quadratic_form(Mode mode, double h = 1e-3, bool estimate_step_error = false) {
  if (mode != Mode::series2 && mode != Mode::exact2) throw DomainError("quadratic form needs series2 or exact2");
  if (!(h >= 1e-4 && h <= 1e-2)) throw DomainError("finite-difference step must lie in [1e-4, 1e-2]");
  QuadraticForm Q;
  Q.basis = ansatz_basis();
  Q.mode = mode;
  Q.step = h;
  Q.matrix = detail::polarised_hessian(mode, h, Q.basis, Q.asymmetry);
  if (Q.asymmetry > 1e-8) throw ConvergenceError("finite-difference Hessian is not symmetric");
  if (estimate_step_error) {
    double unused = 0.0;
    const FormMatrix half = detail::polarised_hessian(mode, 0.5 * h, Q.basis, unused);
    Q.step_error = (half - Q.matrix).cwiseAbs().maxCoeff();
  }
  return Q;
}

/// ε² coefficient of the family x read directly off the tortoise area,
/// A(ε) = A(0) + c₂ε² + …, by a symmetric difference in ε.
inline double direct_c2(const AnsatzVector& x, Mode mode, double eps = 1e-2) {
  const double a0 = ansatz_area(AnsatzVector::Zero(), mode);
  return (ansatz_area(eps * x, mode) + ansatz_area(-eps * x, mode) - 2.0 * a0) / (2.0 * eps * eps);
}

/// Coordinates of x in the closed basis (least squares) and the part of x
/// that lies outside it.
inline std::pair<Eigen::Matrix<double, kFormDim, 1>, double> to_form_coordinates(const QuadraticForm& Q,
                                                                                  const AnsatzVector& x) {
  const Eigen::Matrix<double, kFormDim, 1> y = Q.basis.transpose() * x;
  return {y, (Q.basis * y - x).norm()};
}

struct Spectrum {
  std::vector<double> values;  ///< descending
  Eigen::MatrixXd vectors;     ///< columns match `values`
  int sweeps = 0;
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Full symmetric eigen-decomposition by cyclic Jacobi rotations, iterated
/// until the off-diagonal Frobenius norm drops below `off_tolerance`.
inline Spectrum jacobi_eigen(const Eigen::MatrixXd& M, double off_tolerance = 1e-13, int max_sweeps = 100) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw DomainError("matrix must be square");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, M.cwiseAbs().maxCoeff())) {
    throw DomainError("matrix must be symmetric");
  }
  Eigen::MatrixXd A = M;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) s += A(i, j) * A(i, j);
      }
    }
    return std::sqrt(s);
  };
  Spectrum out;
  while (off() > off_tolerance) {
    if (out.sweeps == max_sweeps) throw ConvergenceError("Jacobi eigen solver did not converge");
    ++out.sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return A(a, a) > A(b, b); });
  out.vectors.resize(n, n);
  const double scale = M.norm();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index k = order[static_cast<std::size_t>(i)];
    const double lambda = A(k, k);
    out.values.push_back(lambda);
    out.vectors.col(i) = V.col(k);
    if (std::fabs(lambda) <= 1e-12 * scale) {
      ++out.zero;
    } else if (lambda > 0.0) {
      ++out.positive;
    } else {
      ++out.negative;
    }
  }
  return out;
}

inline Spectrum eigen_signature(const QuadraticForm& Q) { return jacobi_eigen(Q.matrix); }

/// Largest ‖Mx − λx‖ over the eigenpairs.
inline double eigen_residual(const Eigen::MatrixXd& M, const Spectrum& s) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const Eigen::VectorXd x = s.vectors.col(i);
    worst = std::max(worst, (M * x - s.values[static_cast<std::size_t>(i)] * x).norm());
  }
  return worst;
}

/// The direction of eigenvector `index` in (q, shift) coordinates, scaled so
/// that its largest-magnitude q entry is +1.
inline AnsatzVector ansatz_direction(const QuadraticForm& Q, const Spectrum& s, Eigen::Index index = 0) {
  AnsatzVector x = Q.basis * s.vectors.col(index);
  Eigen::Index k = 0;
  x.head<kAnsatzValues>().cwiseAbs().maxCoeff(&k);
  return x / x(k);
}

}  // namespace croft
