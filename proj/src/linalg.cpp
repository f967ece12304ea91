#include "linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <string>

#include "errors.hpp"

namespace elmlc {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapConst = Eigen::Map<const EigenRowMajor>;

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

struct SvdFactors {
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  Eigen::VectorXd sigma_inv;  // reciprocal singular values, cutoff applied
};

SvdFactors decompose(const Matrix& h, double rtol) {
  if (h.empty()) throw ShapeError("pseudoinverse: empty operand");
  MapConst mapped(h.data(), static_cast<Eigen::Index>(h.rows()),
                  static_cast<Eigen::Index>(h.cols()));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(mapped,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericError("singular value decomposition did not converge for " +
                       shape_of(h) + " matrix");
  }
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? rtol * sigma(0) : 0.0;
  Eigen::VectorXd inv(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    inv(i) = sigma(i) > cutoff && sigma(i) > 0.0 ? 1.0 / sigma(i) : 0.0;
  }
  return {svd.matrixU(), svd.matrixV(), std::move(inv)};
}

Matrix to_matrix(const Eigen::MatrixXd& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    }
  }
  return out;
}

}  // namespace

Matrix pseudoinverse(const Matrix& h, double rtol) {
  SvdFactors f = decompose(h, rtol);
  Eigen::MatrixXd pinv = f.v * f.sigma_inv.asDiagonal() * f.u.transpose();
  return to_matrix(pinv);
}

Matrix least_squares_solve(const Matrix& h, const Matrix& t, double rtol) {
  if (h.rows() != t.rows()) {
    throw ShapeError("least_squares_solve: H has " + std::to_string(h.rows()) +
                     " rows but T has " + std::to_string(t.rows()));
  }
  SvdFactors f = decompose(h, rtol);
  MapConst tm(t.data(), static_cast<Eigen::Index>(t.rows()),
              static_cast<Eigen::Index>(t.cols()));
  Eigen::MatrixXd beta = f.v * (f.sigma_inv.asDiagonal() * (f.u.transpose() * tm));
  return to_matrix(beta);
}

}  // namespace elmlc
