#include "fusionkit/dtype.hpp"

#include <cstring>

namespace fusionkit {

const char* dtype_name(DType t) {
    switch (t) {
        case DType::F64: return "F64";
        case DType::F32: return "F32";
        case DType::F16: return "F16";
        case DType::BF16: return "BF16";
        case DType::U8: return "U8";
        case DType::I64: return "I64";
    }
    return "?";
}

std::optional<DType> dtype_from_name(std::string_view name) {
    if (name == "F64") return DType::F64;
    if (name == "F32") return DType::F32;
    if (name == "F16") return DType::F16;
    if (name == "BF16") return DType::BF16;
    if (name == "U8") return DType::U8;
    if (name == "I64") return DType::I64;
    return std::nullopt;
}

static float bits_to_f32(uint32_t bits) {
    float f;
    std::memcpy(&f, &bits, sizeof(f));
    return f;
}

static uint32_t f32_to_bits(float f) {
    uint32_t bits;
    std::memcpy(&bits, &f, sizeof(bits));
    return bits;
}

float f16_to_f32(uint16_t h) {
    const uint32_t sign = uint32_t(h & 0x8000u) << 16;
    uint32_t exp = (h >> 10) & 0x1Fu;
    uint32_t mant = h & 0x3FFu;
    if (exp == 0) {
        if (mant == 0) return bits_to_f32(sign);
        // subnormal: renormalize the mantissa
        int shift = 0;
        while (!(mant & 0x400u)) {
            mant <<= 1;
            ++shift;
        }
        mant &= 0x3FFu;
        const uint32_t e = 113u - uint32_t(shift);  // 127 - 15 + 1 - shift
        return bits_to_f32(sign | (e << 23) | (mant << 13));
    }
    if (exp == 31) {  // inf / nan
        return bits_to_f32(sign | 0x7F800000u | (mant << 13));
    }
    return bits_to_f32(sign | ((exp + 112u) << 23) | (mant << 13));
}

uint16_t f32_to_f16(float value) {
    const uint32_t x = f32_to_bits(value);
    const uint16_t sign = uint16_t((x >> 16) & 0x8000u);
    const uint32_t exp = (x >> 23) & 0xFFu;
    uint32_t mant = x & 0x7FFFFFu;

    if (exp == 0xFF) {  // inf / nan; keep nan payload top bits, force quiet
        if (mant == 0) return sign | 0x7C00u;
        return uint16_t(sign | 0x7C00u | 0x200u | (mant >> 13));
    }

    const int e = int(exp) - 127 + 15;
    if (e >= 31) return sign | 0x7C00u;  // overflow -> inf
    if (e <= 0) {
        if (e < -10) return sign;  // underflows to zero even after rounding
        mant |= 0x800000u;
        const int shift = 14 - e;
        uint32_t half = mant >> shift;
        const uint32_t rem = mant & ((1u << shift) - 1);
        const uint32_t halfway = 1u << (shift - 1);
        if (rem > halfway || (rem == halfway && (half & 1u))) ++half;
        return uint16_t(sign | half);
    }

    uint32_t half = uint32_t(sign) | (uint32_t(e) << 10) | (mant >> 13);
    const uint32_t rem = mant & 0x1FFFu;
    if (rem > 0x1000u || (rem == 0x1000u && (half & 1u))) ++half;
    return uint16_t(half);  // mantissa carry correctly bumps the exponent
}

float bf16_to_f32(uint16_t bits) {
    return bits_to_f32(uint32_t(bits) << 16);
}

uint16_t f32_to_bf16(float value) {
    uint32_t x = f32_to_bits(value);
    if ((x & 0x7FFFFFFFu) > 0x7F800000u) {  // nan: keep sign, force quiet
        return uint16_t((x >> 16) | 0x0040u);
    }
    const uint32_t lsb = (x >> 16) & 1u;
    x += 0x7FFFu + lsb;
    return uint16_t(x >> 16);
}

}  // namespace fusionkit
