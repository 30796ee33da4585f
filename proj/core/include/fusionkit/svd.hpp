#pragma once

#include <vector>

#include "fusionkit/tensor.hpp"

namespace fusionkit {

// Thin SVD of a rank-2 tensor: m = U * diag(S) * Vt with U (rows x k),
// S descending non-negative of length k = min(rows, cols), Vt (k x cols).
// U and Vt are F64 tensors.
struct Svd2dResult {
    Tensor u;
    std::vector<double> singular_values;
    Tensor vt;
};

// One-sided Jacobi in double precision. A column pair is rotated while its
// normalized off-diagonal Gram mass exceeds 1e-12; gives up after 100 sweeps
// (no_convergence). Input must be rank 2 with finite entries.
Svd2dResult svd_2d(const Tensor& m);

}  // namespace fusionkit
