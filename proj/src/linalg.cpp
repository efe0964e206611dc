#include "tlscond/linalg.hpp"

#include "tlscond/errors.hpp"

namespace tlscond::linalg {
namespace {

bool all_finite(const ThinSvd& svd) {
  return svd.values.allFinite() && svd.u.allFinite() && svd.v.allFinite();
}

template <typename Solver>
ThinSvd unpack(const Solver& solver) {
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("SVD iteration did not converge");
  }
  ThinSvd out{solver.singularValues(), solver.matrixU(), solver.matrixV()};
  if (!all_finite(out)) {
    throw ConvergenceError("SVD produced non-finite values");
  }
  return out;
}

}  // namespace

ThinSvd thin_svd(const Eigen::MatrixXd& m) {
  constexpr int options = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (std::min(m.rows(), m.cols()) <= kJacobiColumnLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::ColPivHouseholderQRPreconditioner> solver(m, options);
    return unpack(solver);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> solver(m, options);
  return unpack(solver);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  Eigen::VectorXd values;
  if (std::min(m.rows(), m.cols()) <= kJacobiColumnLimit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> solver(m);
    values = solver.singularValues();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("SVD iteration did not converge");
    }
    values = solver.singularValues();
  }
  if (!values.allFinite()) {
    throw ConvergenceError("SVD produced non-finite values");
  }
  return values;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

}  // namespace tlscond::linalg
