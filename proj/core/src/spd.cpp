#include "spdmeans/spd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spdmeans {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

void check_symmetry(const Eigen::MatrixXd& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTol * scale) {
    throw NotSymmetric("asymmetry " + std::to_string(asym) +
                       " exceeds tolerance for scale " + std::to_string(scale));
  }
}

void check_dim_range(Eigen::Index rows) {
  if (rows < 1 || rows > kMaxDim) {
    throw DimensionOutOfRange("dimension " + std::to_string(rows) +
                              " outside [1, " + std::to_string(kMaxDim) + "]");
  }
}

}  // namespace

SPDMatrix::SPDMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw NotSquare("matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  check_dim_range(m.rows());
  if (!m.allFinite()) {
    throw InvalidArgument("matrix entries must be finite");
  }
  check_symmetry(m);
  m_ = symmetrized(m);
  const EigenDecomposition ed = eig_symmetric(m_);
  const double lmax = ed.values(ed.values.size() - 1);
  const double lmin = ed.values(0);
  if (!(lmin > kPdTol * lmax)) {
    throw NotPositiveDefinite("lambda_min " + std::to_string(lmin) +
                              " vs lambda_max " + std::to_string(lmax));
  }
}

SPDMatrix::SPDMatrix(Eigen::MatrixXd m, TrustedTag) : m_(std::move(m)) {
  m_ = symmetrized(m_);
}

SPDMatrix SPDMatrix::trusted(Eigen::MatrixXd m) {
  return SPDMatrix(std::move(m), TrustedTag{});
}

SPDMatrix validate_spd(const Eigen::MatrixXd& m) { return SPDMatrix(m); }

EigenDecomposition eig_symmetric(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) {
    throw NotSquare("matrix is " + std::to_string(s.rows()) + "x" +
                    std::to_string(s.cols()));
  }
  check_symmetry(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized(s));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenDecomposition sym_eig(const SPDMatrix& a) { return eig_symmetric(a.mat()); }

SPDMatrix mat_power(const SPDMatrix& a, double p) {
  if (p == 0.0) {
    return SPDMatrix::trusted(Eigen::MatrixXd::Identity(a.dim(), a.dim()));
  }
  if (p == 1.0) return a;
  const EigenDecomposition ed = sym_eig(a);
  const Eigen::VectorXd powered = ed.values.array().pow(p);
  return SPDMatrix::trusted(ed.vectors * powered.asDiagonal() *
                            ed.vectors.transpose());
}

Eigen::MatrixXd mat_log(const SPDMatrix& a) {
  const EigenDecomposition ed = sym_eig(a);
  const Eigen::VectorXd logged = ed.values.array().log();
  Eigen::MatrixXd out =
      ed.vectors * logged.asDiagonal() * ed.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

SPDMatrix mat_exp(const Eigen::MatrixXd& s) {
  const EigenDecomposition ed = eig_symmetric(s);
  const Eigen::VectorXd exped = ed.values.array().exp();
  return SPDMatrix::trusted(ed.vectors * exped.asDiagonal() *
                            ed.vectors.transpose());
}

SPDMatrix congruence(const SPDMatrix& a, const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.rows() != a.dim()) {
    throw DimensionMismatch("transform is " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()) + " against dimension " +
                            std::to_string(a.dim()));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  if (!lu.isInvertible()) {
    throw SingularTransform("congruence transform is singular");
  }
  return validate_spd(c.transpose() * a.mat() * c);
}

double rel_fro_error(const Eigen::MatrixXd& x, const Eigen::MatrixXd& ref) {
  const double denom = ref.norm();
  const double num = (x - ref).norm();
  return denom > 0.0 ? num / denom : num;
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
  return eig_symmetric(s).values(0);
}

namespace detail {

void check_same_dim(const SPDMatrix& a, const SPDMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
  }
}

}  // namespace detail

}  // namespace spdmeans
