// cvhss: error types shared across the library.

#ifndef CVHSS_ERRORS_HPP
#define CVHSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvhss {

// Square system whose pivoted factorization broke down (zero pivot or
// condition estimate at working precision).
struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

// Requested Cauchy entry 1/(s_i - t_j) with coinciding knots.
struct SingularEntry : std::runtime_error {
    explicit SingularEntry(const std::string& what) : std::runtime_error(what) {}
};

// Row knots are not separated from the column arc: measured ratio
// max|t - c| / min|s - c| reached 1, so the geometric tail bound is void.
struct NotSeparated : std::runtime_error {
    explicit NotSeparated(const std::string& what) : std::runtime_error(what) {}
};

// Every scan candidate for the auxiliary unit scalar f collided with a
// power-sum image of the knots; no usable f exists for this input.
struct ChooseFFailed : std::runtime_error {
    explicit ChooseFFailed(const std::string& what) : std::runtime_error(what) {}
};

// A leaf or capacitance system inside the hierarchical solver is singular to
// working precision, or the solver could not certify its residual.
struct HierarchicalRegularityViolation : std::runtime_error {
    explicit HierarchicalRegularityViolation(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace cvhss

#endif
