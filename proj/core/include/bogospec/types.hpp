#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace bogospec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

}  // namespace bogospec
