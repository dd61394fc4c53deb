#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratapprox {

/// Precondition violated by the caller (bad sizes, out-of-range parameters).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iteration failed to converge or a structural numerical assumption broke.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RankDeficientError : public NumericalFailure {
public:
    RankDeficientError(std::size_t rank, std::size_t cols)
        : NumericalFailure("rank-deficient matrix: numerical rank " + std::to_string(rank) +
                           " < " + std::to_string(cols) + " columns"),
          rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

}  // namespace ratapprox
