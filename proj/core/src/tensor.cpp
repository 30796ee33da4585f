#include "fusionkit/tensor.hpp"

#include <cfenv>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

bool checked_numel(const std::vector<size_t>& shape, size_t& out) {
    size_t n = 1;
    for (size_t d : shape) {
        if (d != 0 && n > std::numeric_limits<size_t>::max() / d) return false;
        n *= d;
    }
    out = n;
    return true;
}

Tensor::Tensor(DType dt, std::vector<size_t> sh) : dtype(dt), shape(std::move(sh)) {
    size_t n = 0;
    if (!checked_numel(shape, n)) fail(errc::invalid_parameter, "tensor shape overflows size_t");
    data.assign(n * dtype_size(dtype), 0);
}

Tensor Tensor::zeros(DType dt, std::vector<size_t> sh) { return Tensor(dt, std::move(sh)); }

Tensor Tensor::of(DType dt, std::vector<size_t> sh, const std::vector<double>& values) {
    Tensor t(dt, std::move(sh));
    if (t.numel() != values.size()) {
        fail(errc::length_mismatch, "value count does not match tensor shape");
    }
    for (size_t i = 0; i < values.size(); ++i) t.store(i, values[i]);
    return t;
}

size_t Tensor::numel() const {
    size_t n = 0;
    checked_numel(shape, n);
    return n;
}

double Tensor::at(size_t i) const {
    const uint8_t* p = data.data() + i * dtype_size(dtype);
    switch (dtype) {
        case DType::F64: {
            double v;
            std::memcpy(&v, p, 8);
            return v;
        }
        case DType::F32: {
            float v;
            std::memcpy(&v, p, 4);
            return double(v);
        }
        case DType::F16: {
            uint16_t bits;
            std::memcpy(&bits, p, 2);
            return double(f16_to_f32(bits));
        }
        case DType::BF16: {
            uint16_t bits;
            std::memcpy(&bits, p, 2);
            return double(bf16_to_f32(bits));
        }
        case DType::U8:
            return double(*p);
        case DType::I64: {
            int64_t v;
            std::memcpy(&v, p, 8);
            return double(v);
        }
    }
    return 0.0;
}

// Integer stores use nearbyint, which rounds to nearest-even in the
// default FP environment, matching the half-precision store rule.
void Tensor::store(size_t i, double v) {
    uint8_t* p = data.data() + i * dtype_size(dtype);
    switch (dtype) {
        case DType::F64:
            std::memcpy(p, &v, 8);
            return;
        case DType::F32: {
            const float f = float(v);
            std::memcpy(p, &f, 4);
            return;
        }
        case DType::F16: {
            const uint16_t bits = f32_to_f16(float(v));
            std::memcpy(p, &bits, 2);
            return;
        }
        case DType::BF16: {
            const uint16_t bits = f32_to_bf16(float(v));
            std::memcpy(p, &bits, 2);
            return;
        }
        case DType::U8: {
            double r = std::nearbyint(v);
            if (!(r > 0.0)) r = 0.0;
            if (r > 255.0) r = 255.0;
            *p = uint8_t(r);
            return;
        }
        case DType::I64: {
            double r = std::nearbyint(v);
            constexpr double lo = -9223372036854775808.0;
            constexpr double hi = 9223372036854775807.0;
            int64_t out;
            if (std::isnan(r)) {
                out = 0;
            } else if (r <= lo) {
                out = std::numeric_limits<int64_t>::min();
            } else if (r >= hi) {
                out = std::numeric_limits<int64_t>::max();
            } else {
                out = int64_t(r);
            }
            std::memcpy(p, &out, 8);
            return;
        }
    }
}

std::vector<double> Tensor::to_doubles() const {
    std::vector<double> out(numel());
    for (size_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
}

std::string shape_to_string(const std::vector<size_t>& shape) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ',';
        os << shape[i];
    }
    os << ']';
    return os.str();
}

}  // namespace fusionkit
