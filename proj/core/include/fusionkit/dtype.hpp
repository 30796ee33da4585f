#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace fusionkit {

// Storage dtypes of checkpoint tensors. All arithmetic happens after
// widening to double; stores round back to the storage dtype
// (round-to-nearest-even for the half-precision formats).
enum class DType : uint8_t { F64, F32, F16, BF16, U8, I64 };

constexpr size_t dtype_size(DType t) {
    switch (t) {
        case DType::F64: return 8;
        case DType::F32: return 4;
        case DType::F16: return 2;
        case DType::BF16: return 2;
        case DType::U8: return 1;
        case DType::I64: return 8;
    }
    return 0;
}

const char* dtype_name(DType t);
std::optional<DType> dtype_from_name(std::string_view name);

// IEEE-754 binary16 <-> binary32, round-to-nearest-even on the way down.
float f16_to_f32(uint16_t bits);
uint16_t f32_to_f16(float value);

// bfloat16 <-> binary32, round-to-nearest-even on the way down.
float bf16_to_f32(uint16_t bits);
uint16_t f32_to_bf16(float value);

}  // namespace fusionkit
