#include "covkit/numberfield.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/factor.hpp"

#include <sstream>

namespace covkit {

NumberField::NumberField(const UPoly& modulus)
{
    if (modulus.degree() < 1)
        throw InvalidModulusError("modulus must have positive degree");
    modulus_ = modulus.monic();
    if (!is_irreducible(modulus_))
        throw InvalidModulusError("modulus " + to_string(modulus_) + " is reducible over Q");
}

QuotientElement::QuotientElement(FieldPtr field, const UPoly& rep) : field_(std::move(field))
{
    if (!field_)
        throw InvalidModulusError("quotient element without a field");
    rep_ = rep % field_->modulus();
}

QuotientElement::QuotientElement(FieldPtr field, const Rational& c) : field_(std::move(field)), rep_(c)
{
    if (!field_)
        throw InvalidModulusError("quotient element without a field");
}

QuotientElement QuotientElement::generator(FieldPtr field) { return QuotientElement(std::move(field), UPoly::x()); }

void QuotientElement::check_field(const QuotientElement& o) const
{
    if (field_ != o.field_ && !(*field_ == *o.field_))
        throw ContextError("quotient elements from different fields");
}

QuotientElement& QuotientElement::operator+=(const QuotientElement& o)
{
    check_field(o);
    rep_ += o.rep_;
    return *this;
}

QuotientElement& QuotientElement::operator-=(const QuotientElement& o)
{
    check_field(o);
    rep_ -= o.rep_;
    return *this;
}

QuotientElement& QuotientElement::operator*=(const QuotientElement& o)
{
    check_field(o);
    rep_ = (rep_ * o.rep_) % field_->modulus();
    return *this;
}

QuotientElement QuotientElement::operator-() const { return QuotientElement(field_, -rep_); }

QuotientElement QuotientElement::inverse() const
{
    if (rep_.is_zero())
        throw DivisionError("inverse of zero in a number field");
    auto eg = extended_gcd(rep_, field_->modulus());
    // eg.g is 1 because the modulus is irreducible
    return QuotientElement(field_, eg.s);
}

std::string to_string(const QuotientElement& e, const std::string& var) { return to_string(e.representative(), var); }

void trim(FieldPoly& f)
{
    while (!f.empty() && f.back().is_zero())
        f.pop_back();
}

FieldPoly field_poly(FieldPtr field, const UPoly& rational_coeffs)
{
    FieldPoly out;
    for (const auto& c : rational_coeffs.coeffs())
        out.emplace_back(field, c);
    trim(out);
    return out;
}

FieldPoly field_poly_from(FieldPtr field, const std::vector<UPoly>& coeffs_in_y)
{
    FieldPoly out;
    for (const auto& c : coeffs_in_y)
        out.emplace_back(field, c);
    trim(out);
    return out;
}

QuotientElement evaluate(const FieldPoly& f, const QuotientElement& at)
{
    QuotientElement acc(at.field(), Rational(0));
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * at + f[i];
    return acc;
}

namespace {

FieldPoly field_rem(FieldPoly a, const FieldPoly& b)
{
    QuotientElement inv = b.back().inverse();
    while (a.size() >= b.size()) {
        QuotientElement f = a.back() * inv;
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= f * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

} // namespace

FieldPoly quotient_gcd(const FieldPoly& f, const FieldPoly& g, const FieldPtr& field)
{
    note(Op::quotient_gcd);
    if (!field)
        throw InvalidModulusError("missing field");
    FieldPoly a = f, b = g;
    trim(a);
    trim(b);
    if (a.empty() && b.empty())
        throw DegenerateInputError("quotient_gcd: both inputs are zero");
    while (!b.empty()) {
        FieldPoly r = field_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    QuotientElement inv = a.back().inverse();
    for (auto& c : a)
        c *= inv;
    return a;
}

FieldPoly quotient_gcd(const FieldPoly& f, const FieldPoly& g, const UPoly& modulus)
{
    auto field = std::make_shared<const NumberField>(modulus);
    auto rebase = [&](const FieldPoly& p) {
        FieldPoly out;
        for (const auto& c : p)
            out.emplace_back(field, c.representative());
        return out;
    };
    return quotient_gcd(rebase(f), rebase(g), field);
}

} // namespace covkit
