// error.hpp: error codes shared by every qwire module.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwire {

enum class ErrorCode {
    invalid_params,
    singular_coupling,
    pole_evaluation,
    root_count_mismatch,
    normalization_failure,
    convergence_failure,
    dimension_mismatch,
    domain_error,
    no_positive_eigenvalue,
    not_applicable,
    no_transfer,
    insufficient_points,
    degenerate_fit,
    unknown_figure,
    config_parse,
    regime,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::singular_coupling: return "singular-coupling";
    case ErrorCode::pole_evaluation: return "pole-evaluation";
    case ErrorCode::root_count_mismatch: return "root-count-mismatch";
    case ErrorCode::normalization_failure: return "normalization-failure";
    case ErrorCode::convergence_failure: return "convergence-failure";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::no_positive_eigenvalue: return "no-positive-eigenvalue";
    case ErrorCode::not_applicable: return "not-applicable";
    case ErrorCode::no_transfer: return "no-transfer";
    case ErrorCode::insufficient_points: return "insufficient-points";
    case ErrorCode::degenerate_fit: return "degenerate-fit";
    case ErrorCode::unknown_figure: return "unknown-figure";
    case ErrorCode::config_parse: return "config-parse";
    case ErrorCode::regime: return "regime";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qwire
