#ifndef DSCM_SCALAR_MATH_HPP
#define DSCM_SCALAR_MATH_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace dscm {

// Tolerances and subdivision budget for adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const;
};

class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when the subdivision budget runs out before the requested
// tolerance is met; carries the best estimate and its error bound.
class ConvergenceFailure : public std::runtime_error {
  public:
    ConvergenceFailure(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

class BracketingError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Upper tail of the standard normal, Q(x) = P(X > x).
double q_function(double x);

// Zero-mean Gaussian density with the given variance.
double gaussian_pdf(double x, double variance);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Adaptive Gauss-Kronrod integration of f over [lower, upper].
// Semi-infinite and doubly infinite limits are handled by rational
// variable transforms, so the integrand must decay at infinity.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

// Bisection root finding; f(lo) and f(hi) must have opposite signs.
double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol);

}  // namespace dscm

#endif
