#pragma once

#include <stdexcept>
#include <string>

namespace fusionkit {

// Every failure the library reports, grouped so the CLI can map them to
// stable process exit codes.
enum class errc {
    // configuration / dispatch
    parse_error,
    unknown_field,
    type_error,
    unknown_algorithm,
    unexpected_parameter,
    missing_parameter,

    // structural validation
    key_mismatch,
    shape_mismatch,
    dtype_mismatch,
    length_mismatch,
    unknown_key,
    unknown_model,
    no_base_model,
    missing_stats,
    empty_pool,
    empty_ensemble,
    invalid_pattern,
    malformed_architecture,
    gram_shape_mismatch,
    pool_not_mergeable,

    // numeric / algorithmic
    non_finite_scalar,
    non_finite_input,
    division_by_zero,
    zero_norm,
    not_rank2,
    no_convergence,
    negative_weight,
    zero_weight_sum,
    invalid_trim_fraction,
    invalid_sparsity,
    negative_fisher,
    singular_system,
    invalid_parameter,

    // i/o
    io_error,
    malformed_header,
    unsupported_dtype,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

// Process exit codes: 0 success, 2 config error, 3 validation error,
// 4 numeric/algorithm error, 5 I/O error.
int exit_code_for(errc code);

const char* errc_name(errc code);

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace fusionkit
