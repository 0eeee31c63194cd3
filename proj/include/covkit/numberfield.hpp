#pragma once

#include "covkit/upoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace covkit {

// Q[t]/(m) for a monic irreducible m.
class NumberField {
public:
    // Throws InvalidModulusError for zero, constant or reducible moduli.
    explicit NumberField(const UPoly& modulus);

    const UPoly& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }

    friend bool operator==(const NumberField& a, const NumberField& b) { return a.modulus_ == b.modulus_; }

private:
    UPoly modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class QuotientElement {
public:
    QuotientElement(FieldPtr field, const UPoly& rep);
    QuotientElement(FieldPtr field, const Rational& c);

    static QuotientElement generator(FieldPtr field);

    const UPoly& representative() const { return rep_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }

    QuotientElement& operator+=(const QuotientElement& o);
    QuotientElement& operator-=(const QuotientElement& o);
    QuotientElement& operator*=(const QuotientElement& o);
    QuotientElement operator-() const;
    friend QuotientElement operator+(QuotientElement a, const QuotientElement& b) { return a += b; }
    friend QuotientElement operator-(QuotientElement a, const QuotientElement& b) { return a -= b; }
    friend QuotientElement operator*(QuotientElement a, const QuotientElement& b) { return a *= b; }
    friend bool operator==(const QuotientElement& a, const QuotientElement& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const QuotientElement& a, const QuotientElement& b) { return !(a == b); }

    QuotientElement inverse() const;

private:
    void check_field(const QuotientElement& o) const;

    FieldPtr field_;
    UPoly rep_;
};

std::string to_string(const QuotientElement& e, const std::string& var = "t");

// Univariate polynomial over a number field; index = power.
using FieldPoly = std::vector<QuotientElement>;

void trim(FieldPoly& f);
FieldPoly field_poly(FieldPtr field, const UPoly& rational_coeffs);
// Evaluate a polynomial with rational coefficients in Q[a][y] at a = generator;
// coeffs_in_y[k] is the coefficient of y^k as a polynomial in a.
FieldPoly field_poly_from(FieldPtr field, const std::vector<UPoly>& coeffs_in_y);
QuotientElement evaluate(const FieldPoly& f, const QuotientElement& at);

// Monic gcd in K[y], K = Q[t]/(modulus).  The modulus is validated.
FieldPoly quotient_gcd(const FieldPoly& f, const FieldPoly& g, const UPoly& modulus);
FieldPoly quotient_gcd(const FieldPoly& f, const FieldPoly& g, const FieldPtr& field);

} // namespace covkit
