#pragma once

#include <stdexcept>

namespace apomet {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PointOutsideDomain : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnboundedDomain : std::domain_error {
    using std::domain_error::domain_error;
};

struct IneligibleDomain : std::domain_error {
    using std::domain_error::domain_error;
};

struct SearchFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace apomet
