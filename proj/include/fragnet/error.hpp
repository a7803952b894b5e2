#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fragnet {

enum class ErrorKind {
    io,
    invalid_argument,
    invalid_record,
    non_positive_weight,
    empty_network,
    unknown_bank,
    dimension_mismatch,
    convergence_failure,
    matching_exhausted,
    rank_mismatch,
    length_mismatch,
    degenerate_input,
    non_positive_value,
    empty_input,
    insufficient_rank,
};

// Single exception type for the whole library. `kind` drives the CLI exit
// code mapping; `year` is set when an error is rethrown from a panel load.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    Error(ErrorKind kind, int year, const std::string& msg)
        : std::runtime_error("year " + std::to_string(year) + ": " + msg),
          kind_(kind),
          year_(year) {}

    ErrorKind kind() const { return kind_; }
    std::optional<int> year() const { return year_; }

    // Solver and matching failures are operational; everything else is a
    // validation problem with the input or the configuration.
    bool is_operational() const {
        return kind_ == ErrorKind::convergence_failure ||
               kind_ == ErrorKind::matching_exhausted;
    }

  private:
    ErrorKind kind_;
    std::optional<int> year_;
};

}  // namespace fragnet
