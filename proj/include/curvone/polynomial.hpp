#pragma once

#include <vector>

#include "curvone/complex_sphere.hpp"

namespace curvone {

// Dense univariate polynomial with complex coefficients, ascending order:
// coeffs[k] multiplies z^k.  Invariant: either coeffs is empty (the zero
// polynomial) or coeffs.back() != 0.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);
    explicit Polynomial(Complex constant);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial(Complex(1.0)); }
    // The monomial c * z^k.
    static Polynomial monomial(Complex c, int k);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const;
    Complex leading() const;

    Complex eval(Complex z) const;
    // Evaluates p and p' in one Horner sweep.
    void eval_with_derivative(Complex z, Complex& p, Complex& dp) const;

    Polynomial derivative() const;
    // k-th derivative.
    Polynomial derivative(int k) const;

    // Sum of |coeffs[k]| * s^k; the natural backward-error scale at |z| = s.
    double scaled_norm(double s) const;
    double max_coeff() const;

    // Divides by the linear factor (z - r), returning the quotient and the
    // remainder p(r).  Synthetic (Horner) division.
    Polynomial deflate(Complex r, Complex& remainder) const;

    // Reversed coefficients padded to length k+1: z^k * p(1/z).  Requires
    // k >= degree().
    Polynomial reversed(int k) const;

    // Taylor shift: returns q with q(x) = p(c + x).
    Polynomial shifted(Complex c) const;

    // Strips leading (highest-order) coefficients with modulus <= tol; used
    // after arithmetic that is known to cancel the top terms.
    Polynomial trimmed_leading(double tol) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Complex s, const Polynomial& p);
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    void divrem(const Polynomial& d, Polynomial& q, Polynomial& r) const;

  private:
    void normalize();
    std::vector<Complex> coeffs_;
};

}  // namespace curvone
