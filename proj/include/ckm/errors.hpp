#pragma once

#include <stdexcept>
#include <string>

namespace ckm {

// Error categories. The CLI maps validation_error to exit code 2 and the
// runtime family (pole, instability, blow-up) to exit code 3.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class validation_error : public error {
public:
    using error::error;
};

class pole_error : public error {
public:
    using error::error;
};

class instability_error : public error {
public:
    using error::error;
};

class blowup_error : public error {
public:
    explicit blowup_error(const std::string& what, double t_fail)
        : error(what), t_failure(t_fail) {}
    double t_failure;
};

}  // namespace ckm
