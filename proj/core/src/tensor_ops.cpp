#include "fusionkit/tensor_ops.hpp"

#include <cmath>
#include <sstream>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

void check_same_keys(const TensorMap& a, const TensorMap& b) {
    if (a.size() == b.size()) {
        bool equal = true;
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end(); ++ia, ++ib) {
            if (ia->first != ib->first) {
                equal = false;
                break;
            }
        }
        if (equal) return;
    }
    std::ostringstream os;
    os << "tensor maps have differing key sets;";
    os << " only in first:";
    for (const auto& [k, t] : a) {
        if (!b.count(k)) os << " '" << k << "'";
    }
    os << "; only in second:";
    for (const auto& [k, t] : b) {
        if (!a.count(k)) os << " '" << k << "'";
    }
    fail(errc::key_mismatch, os.str());
}

void check_same_shapes(const TensorMap& a, const TensorMap& b) {
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
        if (ia->second.shape != ib->second.shape) {
            fail(errc::shape_mismatch,
                 "shape mismatch for key '" + ia->first + "': " +
                     shape_to_string(ia->second.shape) + " vs " +
                     shape_to_string(ib->second.shape));
        }
    }
}

template <typename Fn>
TensorMap binary_elementwise(const TensorMap& a, const TensorMap& b, Fn&& fn) {
    check_same_keys(a, b);
    check_same_shapes(a, b);
    TensorMap out;
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
        const Tensor& ta = ia->second;
        const Tensor& tb = ib->second;
        Tensor r(ta.dtype, ta.shape);
        const size_t n = ta.numel();
        for (size_t i = 0; i < n; ++i) r.store(i, fn(ta.at(i), tb.at(i)));
        out.emplace_hint(out.end(), ia->first, std::move(r));
    }
    return out;
}

}  // namespace

TensorMap map_add(const TensorMap& a, const TensorMap& b) {
    return binary_elementwise(a, b, [](double x, double y) { return x + y; });
}

TensorMap map_sub(const TensorMap& a, const TensorMap& b) {
    return binary_elementwise(a, b, [](double x, double y) { return x - y; });
}

TensorMap map_scale(const TensorMap& a, double c) {
    if (!std::isfinite(c)) fail(errc::non_finite_scalar, "scale factor is not finite");
    TensorMap out;
    for (const auto& [key, t] : a) {
        Tensor r(t.dtype, t.shape);
        const size_t n = t.numel();
        for (size_t i = 0; i < n; ++i) r.store(i, t.at(i) * c);
        out.emplace_hint(out.end(), key, std::move(r));
    }
    return out;
}

TensorMap map_div_scalar(const TensorMap& a, double n) {
    if (n == 0.0) fail(errc::division_by_zero, "division of tensor map by zero");
    if (!std::isfinite(n)) fail(errc::non_finite_scalar, "divisor is not finite");
    TensorMap out;
    for (const auto& [key, t] : a) {
        Tensor r(t.dtype, t.shape);
        const size_t cnt = t.numel();
        for (size_t i = 0; i < cnt; ++i) r.store(i, t.at(i) / n);
        out.emplace_hint(out.end(), key, std::move(r));
    }
    return out;
}

TensorMap map_linear_combination(const std::vector<TensorMap>& maps,
                                 const std::vector<double>& coeffs) {
    if (maps.empty() || coeffs.empty()) {
        fail(errc::length_mismatch, "linear combination requires at least one map");
    }
    if (maps.size() != coeffs.size()) {
        fail(errc::length_mismatch, "got " + std::to_string(maps.size()) + " maps but " +
                                        std::to_string(coeffs.size()) + " coefficients");
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) fail(errc::non_finite_scalar, "combination coefficient is not finite");
    }
    for (size_t j = 1; j < maps.size(); ++j) {
        check_same_keys(maps[0], maps[j]);
        check_same_shapes(maps[0], maps[j]);
    }
    TensorMap out;
    for (const auto& [key, first] : maps[0]) {
        std::vector<const Tensor*> terms(maps.size());
        for (size_t j = 0; j < maps.size(); ++j) terms[j] = &maps[j].at(key);
        Tensor r(first.dtype, first.shape);
        const size_t n = first.numel();
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t j = 0; j < terms.size(); ++j) acc += coeffs[j] * terms[j]->at(i);
            r.store(i, acc);
        }
        out.emplace_hint(out.end(), key, std::move(r));
    }
    return out;
}

double flat_dot(const TensorMap& a, const TensorMap& b) {
    check_same_keys(a, b);
    check_same_shapes(a, b);
    double acc = 0.0;
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
        const size_t n = ia->second.numel();
        for (size_t i = 0; i < n; ++i) acc += ia->second.at(i) * ib->second.at(i);
    }
    return acc;
}

double flat_norm(const TensorMap& a) { return std::sqrt(flat_dot(a, a)); }

double cosine_similarity(const TensorMap& a, const TensorMap& b) {
    const double dot = flat_dot(a, b);
    const double na = flat_norm(a);
    const double nb = flat_norm(b);
    if (na == 0.0) fail(errc::zero_norm, "cosine similarity of a zero-norm map (first operand)");
    if (nb == 0.0) fail(errc::zero_norm, "cosine similarity of a zero-norm map (second operand)");
    return dot / (na * nb);
}

TensorMap zeros_like(const TensorMap& a) {
    TensorMap out;
    for (const auto& [key, t] : a) {
        out.emplace_hint(out.end(), key, Tensor::zeros(t.dtype, t.shape));
    }
    return out;
}

}  // namespace fusionkit
