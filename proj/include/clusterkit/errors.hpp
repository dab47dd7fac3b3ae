#pragma once

#include <stdexcept>
#include <string>

namespace clusterkit {

// Size or budget limit exceeded (n_max, tuple budgets, enumeration caps).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite values, failed quadrature, stability certificate violations.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace clusterkit
