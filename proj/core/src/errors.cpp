#include "fusionkit/errors.hpp"

namespace fusionkit {

int exit_code_for(errc code) {
    switch (code) {
        case errc::parse_error:
        case errc::unknown_field:
        case errc::type_error:
        case errc::unknown_algorithm:
        case errc::unexpected_parameter:
        case errc::missing_parameter:
            return 2;

        case errc::key_mismatch:
        case errc::shape_mismatch:
        case errc::dtype_mismatch:
        case errc::length_mismatch:
        case errc::unknown_key:
        case errc::unknown_model:
        case errc::no_base_model:
        case errc::missing_stats:
        case errc::empty_pool:
        case errc::empty_ensemble:
        case errc::invalid_pattern:
        case errc::malformed_architecture:
        case errc::gram_shape_mismatch:
        case errc::pool_not_mergeable:
            return 3;

        case errc::non_finite_scalar:
        case errc::non_finite_input:
        case errc::division_by_zero:
        case errc::zero_norm:
        case errc::not_rank2:
        case errc::no_convergence:
        case errc::negative_weight:
        case errc::zero_weight_sum:
        case errc::invalid_trim_fraction:
        case errc::invalid_sparsity:
        case errc::negative_fisher:
        case errc::singular_system:
        case errc::invalid_parameter:
            return 4;

        case errc::io_error:
        case errc::malformed_header:
        case errc::unsupported_dtype:
            return 5;
    }
    return 1;
}

const char* errc_name(errc code) {
    switch (code) {
        case errc::parse_error: return "parse_error";
        case errc::unknown_field: return "unknown_field";
        case errc::type_error: return "type_error";
        case errc::unknown_algorithm: return "unknown_algorithm";
        case errc::unexpected_parameter: return "unexpected_parameter";
        case errc::missing_parameter: return "missing_parameter";
        case errc::key_mismatch: return "key_mismatch";
        case errc::shape_mismatch: return "shape_mismatch";
        case errc::dtype_mismatch: return "dtype_mismatch";
        case errc::length_mismatch: return "length_mismatch";
        case errc::unknown_key: return "unknown_key";
        case errc::unknown_model: return "unknown_model";
        case errc::no_base_model: return "no_base_model";
        case errc::missing_stats: return "missing_stats";
        case errc::empty_pool: return "empty_pool";
        case errc::empty_ensemble: return "empty_ensemble";
        case errc::invalid_pattern: return "invalid_pattern";
        case errc::malformed_architecture: return "malformed_architecture";
        case errc::gram_shape_mismatch: return "gram_shape_mismatch";
        case errc::pool_not_mergeable: return "pool_not_mergeable";
        case errc::non_finite_scalar: return "non_finite_scalar";
        case errc::non_finite_input: return "non_finite_input";
        case errc::division_by_zero: return "division_by_zero";
        case errc::zero_norm: return "zero_norm";
        case errc::not_rank2: return "not_rank2";
        case errc::no_convergence: return "no_convergence";
        case errc::negative_weight: return "negative_weight";
        case errc::zero_weight_sum: return "zero_weight_sum";
        case errc::invalid_trim_fraction: return "invalid_trim_fraction";
        case errc::invalid_sparsity: return "invalid_sparsity";
        case errc::negative_fisher: return "negative_fisher";
        case errc::singular_system: return "singular_system";
        case errc::invalid_parameter: return "invalid_parameter";
        case errc::io_error: return "io_error";
        case errc::malformed_header: return "malformed_header";
        case errc::unsupported_dtype: return "unsupported_dtype";
    }
    return "error";
}

}  // namespace fusionkit
