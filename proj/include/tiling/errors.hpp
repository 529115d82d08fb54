#pragma once

#include <stdexcept>
#include <string>

namespace tiling {

/// Malformed input: bad file, out-of-range vertex, bad fraction string.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Construction parameters that do not produce integral part sizes.
class SpecError : public InputError {
public:
    SpecError(const std::string & what, std::string suggestion = {}) :
        InputError(what), suggestion_(std::move(suggestion))
    {
    }

    const std::string & suggestion() const { return suggestion_; }

private:
    std::string suggestion_;
};

/// A configured cap (columns, nodes, iterations, time) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked mathematical invariant failed. Always a bug or a refutation.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tiling
