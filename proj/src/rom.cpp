// SPDX-License-Identifier: Apache-2.0
#include "bilintang/rom.hpp"

namespace bilintang {

namespace {

MatrixFunction projectTerms(const MatrixFunction &f,
                            const Eigen::MatrixXcd *left,
                            const Eigen::MatrixXcd *right) {
  const Eigen::Index rows = left ? left->cols() : f.rows();
  const Eigen::Index cols = right ? right->cols() : f.cols();
  MatrixFunction out(rows, cols);
  for (const MatrixFunction::Term &term : f.terms()) {
    Eigen::MatrixXcd coeff = term.coefficient;
    if (left) {
      coeff = left->adjoint() * coeff;
    }
    if (right) {
      coeff = coeff * (*right);
    }
    out.addTerm(term.basis, std::move(coeff));
  }
  return out;
}

} // namespace

ReducedModel project(const StructuredBilinearSystem &sys,
                     const ReductionBases &bases) {
  if (bases.V.rows() != sys.n() || bases.W.rows() != sys.n()) {
    throw std::invalid_argument("basis row count does not match system order");
  }
  if (bases.V.cols() != bases.W.cols()) {
    throw std::invalid_argument("trial and test bases must have equal rank");
  }

  MatrixFunction C = projectTerms(sys.C(), nullptr, &bases.V);
  MatrixFunction K = projectTerms(sys.K(), &bases.W, &bases.V);
  MatrixFunction B = projectTerms(sys.B(), &bases.W, nullptr);
  std::vector<MatrixFunction> N;
  N.reserve(static_cast<size_t>(sys.m()));
  for (Eigen::Index j = 0; j < sys.m(); ++j) {
    N.push_back(projectTerms(sys.N(j), &bases.W, &bases.V));
  }

  ReducedModel rom{StructuredBilinearSystem(std::move(C), std::move(K),
                                            std::move(B), std::move(N),
                                            sys.tag(), sys.delay()),
                   bases, sys.n(), sys.m(), sys.p()};
  return rom;
}

} // namespace bilintang
