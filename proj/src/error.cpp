#include "phasekit/error.hpp"

namespace phasekit {

std::string_view name(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_grid: return "invalid-grid";
    case Errc::grid_too_coarse: return "grid-too-coarse";
    case Errc::packet_out_of_bounds: return "packet-out-of-bounds";
    case Errc::boundary_not_decayed: return "boundary-not-decayed";
    case Errc::basis_mismatch: return "basis-mismatch";
    case Errc::bad_weights: return "bad-weights";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::lambda_range_exceeds_grid: return "lambda-range-exceeds-grid";
    case Errc::chi_not_decayed: return "chi-not-decayed";
    case Errc::non_hermitian_characteristic: return "non-hermitian-characteristic";
    case Errc::cfl_violation: return "cfl-violation";
    case Errc::degree_too_high: return "degree-too-high";
    case Errc::boundary_contamination: return "boundary-contamination";
    case Errc::degenerate_ray: return "degenerate-ray";
    case Errc::nu_range_too_small: return "nu-range-too-small";
    case Errc::incompatible_grids: return "incompatible-grids";
    case Errc::insufficient_angular_coverage: return "insufficient-angular-coverage";
    case Errc::non_unit_rays: return "non-unit-rays";
    case Errc::non_unit_vector: return "non-unit-vector";
    case Errc::invalid_state: return "invalid-state";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::invalid_projector: return "invalid-projector";
    case Errc::non_exhaustive_family: return "non-exhaustive-family";
    case Errc::invalid_model: return "invalid-model";
    case Errc::window_empty: return "window-empty";
    case Errc::nonpositive_probability: return "nonpositive-probability";
    case Errc::times_not_sampled: return "times-not-sampled";
    case Errc::pole_proximity: return "pole-proximity";
    case Errc::no_convergence: return "no-convergence";
    case Errc::pole_outside_continuation_strip: return "pole-outside-continuation-strip";
    case Errc::unsupported_profile: return "unsupported-profile";
    case Errc::unreadable_file: return "unreadable-file";
    case Errc::parse_error: return "parse-error";
    case Errc::schema_violation: return "schema-violation";
    case Errc::io_failure: return "io-failure";
    }
    return "unknown";
}

} // namespace phasekit
