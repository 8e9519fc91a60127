#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

// Value is not a discriminant at all (>= 0, or not 0/1 mod 4).
class invalid_discriminant : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A valid order discriminant where a fundamental one is required.
class not_fundamental : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class not_prime : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exhaustive scan was asked to exceed its configured size cap.
class cap_exceeded : public std::length_error {
public:
    cap_exceeded(const std::string& cap_name, long long cap, long long requested)
        : std::length_error(cap_name + " exceeded: requested " + std::to_string(requested) +
                            ", cap is " + std::to_string(cap)),
          cap_name_(cap_name), cap_(cap), requested_(requested) {}

    const std::string& cap_name() const noexcept { return cap_name_; }
    long long cap() const noexcept { return cap_; }
    long long requested() const noexcept { return requested_; }

private:
    std::string cap_name_;
    long long cap_;
    long long requested_;
};

}  // namespace tcm
