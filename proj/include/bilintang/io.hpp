// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_IO_HPP
#define BILINTANG_IO_HPP

#include <string>

#include "bilintang/subspaces.hpp"

namespace bilintang {

// Matrix Market coordinate-format I/O. Writers emit only nonzero entries
// with full double precision; readers accept real/complex/integer fields,
// coordinate and array formats, and the symmetric/skew/hermitian qualifiers.
void writeMatrixMarket(const std::string &path, const Eigen::MatrixXcd &matrix);
Eigen::MatrixXcd readMatrixMarket(const std::string &path);

/// Writes a system bundle: one .mtx file per coefficient matrix plus a
/// descriptor.json naming them and recording the template tag, dimensions
/// and delay. The directory is created if missing.
void saveSystem(const std::string &dir, const StructuredBilinearSystem &sys);
StructuredBilinearSystem loadSystem(const std::string &dir);

/// Writes V.mtx, W.mtx and provenance.json into dir.
void saveBases(const std::string &dir, const ReductionBases &bases);

} // namespace bilintang

#endif // BILINTANG_IO_HPP
