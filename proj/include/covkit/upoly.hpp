#pragma once

#include "covkit/multipoly.hpp"
#include "covkit/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace covkit {

// Dense univariate polynomial over Q; coeffs()[k] multiplies t^k.  The
// trailing coefficient is nonzero unless the polynomial is zero (empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    explicit UPoly(const Rational& c);

    static UPoly monomial(int degree, const Rational& c = 1);
    static UPoly x() { return monomial(1); }

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& lc() const;
    Rational operator[](int k) const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    UPoly& operator*=(const Rational& s);
    UPoly operator-() const;
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    UPoly derivative() const;
    UPoly monic() const;
    Rational evaluate(const Rational& t) const;
    UPoly compose(const UPoly& inner) const;

    // Integer primitive with positive leading coefficient, and its scale.
    Rational content() const;
    UPoly primitive() const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// s*a + t*b = gcd(a, b), gcd monic.
struct ExtendedGcd {
    UPoly g, s, t;
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);
bool is_squarefree(const UPoly& f);
UPoly squarefree_part(const UPoly& f);

// Conversions to and from a MultiPoly in a single variable.
UPoly to_upoly(const MultiPoly& f, std::size_t var);
MultiPoly to_multipoly(const UPoly& f, const Vars& vars, std::size_t var);

std::string to_string(const UPoly& f, const std::string& var = "t");

} // namespace covkit
