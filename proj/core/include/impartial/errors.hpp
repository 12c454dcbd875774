#pragma once

#include <stdexcept>
#include <string>

namespace impartial {

/// Input data failed structural validation (malformed JSON, duplicate
/// agents in a ranking, dimension mismatch, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A mechanism descriptor or check request is internally inconsistent
/// (wrong n for a kind, missing seed, infeasible verification mode).
class DescriptorError : public std::runtime_error {
public:
    explicit DescriptorError(const std::string& what) : std::runtime_error(what) {}
};

/// Randomized search gave up after the configured number of attempts.
class SearchExhaustedError : public std::runtime_error {
public:
    SearchExhaustedError(const std::string& what, int attempts)
        : std::runtime_error(what), attempts(attempts) {}
    int attempts;
};

/// Request needs factorial-sized index arithmetic beyond 64-bit range.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace impartial
