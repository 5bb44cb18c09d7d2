#include "curvone/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace curvone {

namespace {
// Exact zeros and denormal dust are dropped when normalizing; anything a
// caller wants trimmed more aggressively goes through trimmed_leading().
constexpr double kHardZero = 1e-300;
}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(Complex constant) {
    if (std::abs(constant) > kHardZero) coeffs_ = {constant};
}

Polynomial Polynomial::monomial(Complex c, int k) {
    if (std::abs(c) <= kHardZero) return Polynomial();
    std::vector<Complex> v(static_cast<size_t>(k) + 1, Complex(0.0));
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kHardZero) coeffs_.pop_back();
}

Complex Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
    return coeffs_[static_cast<size_t>(k)];
}

Complex Polynomial::leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

Complex Polynomial::eval(Complex z) const {
    Complex p(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) p = p * z + *it;
    return p;
}

void Polynomial::eval_with_derivative(Complex z, Complex& p, Complex& dp) const {
    p = Complex(0.0);
    dp = Complex(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = double(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::derivative(int k) const {
    Polynomial p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p;
}

double Polynomial::scaled_norm(double s) const {
    double acc = 0.0, pw = 1.0;
    for (const Complex& c : coeffs_) {
        acc += std::abs(c) * pw;
        pw *= s;
    }
    return acc;
}

double Polynomial::max_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::deflate(Complex r, Complex& remainder) const {
    if (coeffs_.empty()) {
        remainder = Complex(0.0);
        return Polynomial();
    }
    std::vector<Complex> q(coeffs_.size() - 1);
    Complex acc = coeffs_.back();
    for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
        q[static_cast<size_t>(k)] = acc;
        acc = acc * r + coeffs_[static_cast<size_t>(k)];
    }
    remainder = acc;
    return Polynomial(std::move(q));
}

Polynomial Polynomial::reversed(int k) const {
    std::vector<Complex> v(static_cast<size_t>(k) + 1, Complex(0.0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[static_cast<size_t>(k) - i] = coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(Complex c) const {
    // Repeated synthetic division at c leaves the Taylor coefficients of p
    // about c in the successive remainders.
    std::vector<Complex> out(coeffs_.size(), Complex(0.0));
    Polynomial p = *this;
    for (size_t j = 0; j < out.size(); ++j) {
        Complex rem;
        p = p.deflate(c, rem);
        out[j] = rem;
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed_leading(double tol) const {
    std::vector<Complex> v = coeffs_;
    while (!v.empty() && std::abs(v.back()) <= tol) v.pop_back();
    return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(Complex s, const Polynomial& p) {
    std::vector<Complex> v = p.coeffs_;
    for (Complex& c : v) c *= s;
    return Polynomial(std::move(v));
}

void Polynomial::divrem(const Polynomial& d, Polynomial& q, Polynomial& r) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Complex> rem = coeffs_;
    int dd = d.degree();
    int dn = degree();
    if (dn < dd) {
        q = Polynomial();
        r = *this;
        return;
    }
    std::vector<Complex> quot(static_cast<size_t>(dn - dd) + 1, Complex(0.0));
    for (int k = dn; k >= dd; --k) {
        Complex f = rem[static_cast<size_t>(k)] / d.leading();
        quot[static_cast<size_t>(k - dd)] = f;
        for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(k - dd + j)] -= f * d.coeff(j);
    }
    rem.resize(static_cast<size_t>(dd));
    q = Polynomial(std::move(quot));
    r = Polynomial(std::move(rem));
}

}  // namespace curvone
