#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace secsym {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

} // namespace secsym
