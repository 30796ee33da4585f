#pragma once

#include <cstdint>
#include <random>

namespace fusionkit {

// mt19937_64 with hand-rolled variate transforms. The standard pins the
// engine's output sequence but not the distributions', so uniform/normal
// are derived here with arithmetic that is identical on every platform.
class PortableRng {
  public:
    explicit PortableRng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

    // Irwin-Hall sum of 12 uniforms, shifted to zero mean and unit variance.
    // Uses additions only, so results match bit-for-bit across libms.
    double next_normal() {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += next_uniform();
        return s - 6.0;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace fusionkit
