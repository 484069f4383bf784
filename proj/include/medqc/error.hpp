#pragma once

#include <stdexcept>

namespace medqc {

// Unusable input: missing files, malformed formats, violated preconditions.
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace medqc
