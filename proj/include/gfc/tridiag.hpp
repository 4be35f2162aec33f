#ifndef GFC_TRIDIAG_HPP
#define GFC_TRIDIAG_HPP

#include <vector>

namespace gfc {

struct TridiagEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // l2-orthonormal
};

/// k smallest eigenpairs of a real symmetric tridiagonal matrix,
/// found by Sturm-sequence bisection followed by inverse iteration
/// with orthogonalization. Deterministic: fixed sweep counts, fixed
/// start vector, no randomness.
TridiagEigen tridiag_smallest(const std::vector<double>& diag,
                              const std::vector<double>& off, int k);

}  // namespace gfc

#endif
