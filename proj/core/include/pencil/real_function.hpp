#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pencil {

/// Closed family of coefficient functions on [0, pi]: finite trigonometric
/// sums plus a polynomial in x.  Derivatives of every order are exact, which
/// keeps high-order difference-quotient experiments free of finite-difference
/// noise.
///
///     f(x) = sum a_k cos(kx) + sum b_k sin(kx) + sum c_d x^d
class RealFunction {
public:
    using Term = std::pair<int, double>;  // (frequency or degree, coefficient)

    RealFunction() = default;

    static RealFunction zero() { return {}; }
    static RealFunction constant(double c);
    static RealFunction cosine(int k, double a);
    static RealFunction sine(int k, double b);
    static RealFunction monomial(int degree, double c);

    /// Value of the m-th derivative at x.  m = 0 is the function itself.
    /// Throws std::domain_error for x outside [0, pi] (small roundoff slack)
    /// or m < 0.
    double eval(double x, int m = 0) const;
    double operator()(double x) const { return eval(x, 0); }

    /// Termwise exact derivative as a new RealFunction.
    RealFunction derivative(int m = 1) const;

    bool is_zero() const;

    RealFunction& add_cos(int k, double a);
    RealFunction& add_sin(int k, double b);
    RealFunction& add_poly(int degree, double c);

    const std::vector<Term>& cos_terms() const { return cos_; }
    const std::vector<Term>& sin_terms() const { return sin_; }
    const std::vector<Term>& poly_terms() const { return poly_; }

    friend RealFunction operator+(const RealFunction& f, const RealFunction& g);
    friend RealFunction operator-(const RealFunction& f, const RealFunction& g);
    friend RealFunction operator*(double s, const RealFunction& f);

    friend bool operator==(const RealFunction&, const RealFunction&) = default;

    /// Text form used by config files and caches, e.g.
    ///     cos = [[0, 1.2], [3, 0.5]]
    ///     sin = [[1, 0.2]]
    ///     poly = [[2, 0.1]]
    /// Coefficients round-trip exactly (printed with %.17g).
    std::string to_text(std::string_view name) const;

    /// Parses one "name.cos/sin/poly = [[k, c], ...]" list body; helper for
    /// the config reader.  `kind` is "cos", "sin" or "poly".
    void add_terms_from_list(std::string_view kind, std::string_view list_body);

private:
    std::vector<Term> cos_;   // k >= 0
    std::vector<Term> sin_;   // k >= 1
    std::vector<Term> poly_;  // degree >= 0

    void normalize();
};

}  // namespace pencil
