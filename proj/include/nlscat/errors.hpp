#pragma once
#include <stdexcept>
#include <string>

namespace nlscat {

// Configuration / input validation failures (CLI exit code 2).
// API misuse throws std::invalid_argument / std::domain_error (also logic errors);
// numeric failures at run time throw std::runtime_error (CLI exit code 3).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace nlscat
