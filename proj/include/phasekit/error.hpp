#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasekit {

// Error codes shared by every module. The string names are part of the CLI
// error record and stay stable across releases.
enum class Errc {
    invalid_argument,
    invalid_grid,
    grid_too_coarse,
    packet_out_of_bounds,
    boundary_not_decayed,
    basis_mismatch,
    bad_weights,
    grid_mismatch,
    lambda_range_exceeds_grid,
    chi_not_decayed,
    non_hermitian_characteristic,
    cfl_violation,
    degree_too_high,
    boundary_contamination,
    degenerate_ray,
    nu_range_too_small,
    incompatible_grids,
    insufficient_angular_coverage,
    non_unit_rays,
    non_unit_vector,
    invalid_state,
    dimension_mismatch,
    invalid_projector,
    non_exhaustive_family,
    invalid_model,
    window_empty,
    nonpositive_probability,
    times_not_sampled,
    pole_proximity,
    no_convergence,
    pole_outside_continuation_strip,
    unsupported_profile,
    unreadable_file,
    parse_error,
    schema_violation,
    io_failure,
};

std::string_view name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, Errc code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace phasekit
