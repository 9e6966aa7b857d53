// Error categories that callers (in particular the CLI) need to tell apart.
#pragma once

#include <stdexcept>
#include <string>

namespace waring {

/// The requested algorithm is sound but does not apply to this input
/// (e.g. the catalecticant method on a form whose kernel scheme is not
/// reduced).  Mapped to a dedicated process exit code by the CLI.
struct MethodInapplicable : std::runtime_error {
    explicit MethodInapplicable(const std::string& what)
        : std::runtime_error(what) {}
};

/// A floating-point stage failed to converge.
struct NumericFailure : std::runtime_error {
    explicit NumericFailure(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace waring
