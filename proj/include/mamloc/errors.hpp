#pragma once

#include <stdexcept>
#include <string>

namespace mamloc {

// Error taxonomy mirrors the CLI exit codes (tools/mamloc_main.cpp):
//   validation_error -> 2   bad or missing input
//   numeric_error    -> 3   rank deficiency / solver failure
//   geometry_error   -> 4   point outside the model's geometric domain
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mamloc
