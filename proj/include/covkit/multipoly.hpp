#pragma once

#include "covkit/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covkit {

using Exponent = std::vector<int>;
using Vars = std::vector<std::string>;

// Graded reverse lexicographic order, first variable largest.  Used for
// storage, printing and leading terms.
struct GrevlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

// Sparse polynomial over Q in an ordered list of named variables.  Zero
// coefficients are never stored.  A polynomial without variables is a
// constant and mixes freely with any context.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Rational, GrevlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(Vars vars);
    MultiPoly(Vars vars, const Rational& c);

    static MultiPoly variable(const Vars& vars, std::size_t index);
    static MultiPoly variable(const Vars& vars, std::string_view name);
    static MultiPoly term(const Vars& vars, Exponent e, const Rational& c);

    const Vars& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t index_of(std::string_view name) const;

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coeff(const Exponent& e) const;

    // -1 for the zero polynomial.
    int total_degree() const;
    int degree(std::size_t var) const;
    // Lowest total degree of a term; -1 for zero.
    int order() const;
    bool is_homogeneous() const;

    const Exponent& leading_exponent() const;
    const Rational& leading_coeff() const;

    void add_term(const Exponent& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly operator-() const;

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const;
    MultiPoly homogeneous_part(int degree) const;
    // Sum of the terms of lowest total degree.
    MultiPoly lowest_part() const;

    MultiPoly derivative(std::size_t var) const;
    MultiPoly derivative(std::string_view name) const;

    // Replace variable i by images[i]; all images share one target context.
    MultiPoly compose(const std::vector<MultiPoly>& images) const;
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
    Rational evaluate(const std::vector<Rational>& point) const;

    // Coefficients as a polynomial in `var`, index = power of var.  Each
    // coefficient keeps the full context with var's exponent zero.
    std::vector<MultiPoly> coefficients_in(std::size_t var) const;
    static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, const Vars& vars,
                                       std::size_t var);

    // Re-express in another context containing every variable that occurs.
    MultiPoly in_context(const Vars& target) const;

    // Largest rational c with this = c * (integer primitive polynomial whose
    // leading coefficient is positive).
    Rational content() const;
    MultiPoly primitive() const;

private:
    void check_context(const MultiPoly& o) const;
    void adopt_context(const MultiPoly& o);

    Vars vars_;
    TermMap terms_;
};

// Throws DivisionError unless b divides a exactly.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);
bool divides(const MultiPoly& b, const MultiPoly& a);

// Canonical form: integer primitive, leading coefficient positive (grevlex).
MultiPoly canonical(const MultiPoly& f);
bool equal_up_to_scalar(const MultiPoly& a, const MultiPoly& b);

// Terms in grevlex order, e.g. "289*x^6+754326*x^4*y^2-2013848*x^4*y*z".
std::string to_string(const MultiPoly& f);
MultiPoly parse_poly(std::string_view text, const Vars& vars);

} // namespace covkit
