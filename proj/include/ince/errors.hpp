#pragma once

#include <stdexcept>
#include <string>

namespace ince {

// Bad argument to a construction or evaluation routine.
class invalid_argument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A bracket handed to the refiner does not isolate exactly one eigenvalue.
class invalid_bracket : public invalid_argument {
  public:
    using invalid_argument::invalid_argument;
};

// Two polynomials that cannot share an inner product (different n, parity or a).
class invalid_pairing : public invalid_argument {
  public:
    using invalid_argument::invalid_argument;
};

// Physical inputs that do not describe an admissible medium.
class invalid_config : public invalid_argument {
  public:
    using invalid_argument::invalid_argument;
};

class not_underdense : public invalid_config {
  public:
    using invalid_config::invalid_config;
};

class ambiguous_input : public invalid_config {
  public:
    using invalid_config::invalid_config;
};

// Iterative method ran out of budget.
class numerical_failure : public std::runtime_error {
  public:
    numerical_failure(const std::string& what, int label) : std::runtime_error(what), label_(label) {}
    int label() const noexcept { return label_; }

  private:
    int label_;
};

// Imaginary p-hat requested without opting in to growing solutions.
class evanescent_solution_rejected : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// The characteristic-polynomial scan did not find every root.
class oracle_failure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ince
