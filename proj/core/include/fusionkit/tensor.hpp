#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fusionkit/dtype.hpp"

namespace fusionkit {

// Dense row-major tensor. The raw buffer always holds exactly
// numel() * dtype_size(dtype) bytes, little-endian element encoding.
// Zero-element tensors are legal and carry an empty buffer.
struct Tensor {
    DType dtype = DType::F32;
    std::vector<size_t> shape;
    std::vector<uint8_t> data;

    Tensor() = default;
    Tensor(DType dt, std::vector<size_t> sh);

    static Tensor zeros(DType dt, std::vector<size_t> sh);
    // Builds a tensor by casting the given values into `dt` storage.
    static Tensor of(DType dt, std::vector<size_t> sh, const std::vector<double>& values);

    size_t numel() const;
    size_t nbytes() const { return data.size(); }
    size_t rank() const { return shape.size(); }

    // Widened element access by flat row-major index.
    double at(size_t i) const;
    // Stores `v` at flat index `i`, rounding to the storage dtype.
    void store(size_t i, double v);

    std::vector<double> to_doubles() const;
    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

// A model checkpoint: parameter key -> tensor. std::map keeps key
// iteration lexicographic, which every deterministic-output contract
// in this library relies on.
using TensorMap = std::map<std::string, Tensor>;

std::string shape_to_string(const std::vector<size_t>& shape);

// product(shape) with overflow detection; returns false on overflow.
bool checked_numel(const std::vector<size_t>& shape, size_t& out);

}  // namespace fusionkit
