#pragma once

#include "fusionkit/tensor.hpp"

namespace fusionkit {

// Elementwise and reduction arithmetic over tensor maps.
//
// All functions are pure: inputs are never mutated. Reductions and
// linear combinations accumulate in double regardless of storage dtype;
// per key, the output tensor keeps the first operand's dtype.
// Binary operations require identical key sets and, per key, identical
// shapes; violations raise key_mismatch (reporting the symmetric key
// difference) or shape_mismatch.

TensorMap map_add(const TensorMap& a, const TensorMap& b);
TensorMap map_sub(const TensorMap& a, const TensorMap& b);

// Multiplies every element by `c`. `c` must be finite.
TensorMap map_scale(const TensorMap& a, double c);

// Divides every element by `n` (direct division, not multiplication by
// the reciprocal). `n` must be nonzero.
TensorMap map_div_scalar(const TensorMap& a, double n);

// sum_i coeffs[i] * maps[i]; lists must be non-empty and equal length.
TensorMap map_linear_combination(const std::vector<TensorMap>& maps,
                                 const std::vector<double>& coeffs);

// Sum over all keys of elementwise products. Empty map -> 0.
double flat_dot(const TensorMap& a, const TensorMap& b);

// flat_dot(a, a) under a square root.
double flat_norm(const TensorMap& a);

// flat_dot(a,b) / (|a| * |b|); both operands must have nonzero norm.
double cosine_similarity(const TensorMap& a, const TensorMap& b);

TensorMap zeros_like(const TensorMap& a);

}  // namespace fusionkit
