#include "covkit/multipoly.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace covkit {

bool GrevlexGreater::operator()(const Exponent& a, const Exponent& b) const
{
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db)
        return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return false;
}

MultiPoly::MultiPoly(Vars vars) : vars_(std::move(vars)) {}

MultiPoly::MultiPoly(Vars vars, const Rational& c) : vars_(std::move(vars))
{
    if (c != 0)
        terms_.emplace(Exponent(vars_.size(), 0), c);
}

MultiPoly MultiPoly::variable(const Vars& vars, std::size_t index)
{
    if (index >= vars.size())
        throw ContextError("variable index out of range");
    Exponent e(vars.size(), 0);
    e[index] = 1;
    return term(vars, std::move(e), 1);
}

MultiPoly MultiPoly::variable(const Vars& vars, std::string_view name)
{
    MultiPoly p(vars);
    return variable(vars, p.index_of(name));
}

MultiPoly MultiPoly::term(const Vars& vars, Exponent e, const Rational& c)
{
    if (e.size() != vars.size())
        throw ContextError("exponent length does not match variable count");
    MultiPoly p(vars);
    if (c != 0)
        p.terms_.emplace(std::move(e), c);
    return p;
}

std::size_t MultiPoly::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return i;
    throw ContextError("unknown variable '" + std::string(name) + "'");
}

bool MultiPoly::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational MultiPoly::constant_term() const { return coeff(Exponent(vars_.size(), 0)); }

Rational MultiPoly::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const
{
    if (terms_.empty())
        return -1;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int MultiPoly::degree(std::size_t var) const
{
    if (var >= vars_.size())
        throw ContextError("variable index out of range");
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[var]);
    return d;
}

int MultiPoly::order() const
{
    if (terms_.empty())
        return -1;
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

bool MultiPoly::is_homogeneous() const { return total_degree() == order(); }

const Exponent& MultiPoly::leading_exponent() const
{
    if (terms_.empty())
        throw DegenerateInputError("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coeff() const
{
    if (terms_.empty())
        throw DegenerateInputError("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c)
{
    if (e.size() != vars_.size())
        throw ContextError("exponent length does not match variable count");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void MultiPoly::check_context(const MultiPoly& o) const
{
    if (vars_ != o.vars_ && !vars_.empty() && !o.vars_.empty())
        throw ContextError("mismatched variable contexts");
}

void MultiPoly::adopt_context(const MultiPoly& o)
{
    check_context(o);
    if (vars_.empty() && !o.vars_.empty()) {
        // promote a constant
        Rational c = constant_term();
        vars_ = o.vars_;
        terms_.clear();
        if (c != 0)
            terms_.emplace(Exponent(vars_.size(), 0), c);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    note(Op::poly_arith);
    adopt_context(o);
    if (o.vars_.empty() && !vars_.empty()) {
        add_term(Exponent(vars_.size(), 0), o.constant_term());
        return *this;
    }
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    note(Op::poly_arith);
    adopt_context(o);
    if (o.vars_.empty() && !vars_.empty()) {
        add_term(Exponent(vars_.size(), 0), -o.constant_term());
        return *this;
    }
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    a.check_context(b);
    if (a.vars_.empty())
        return b * a.constant_term();
    if (b.vars_.empty())
        return a * b.constant_term();
    MultiPoly r(a.vars_);
    Exponent e(a.vars_.size());
    Rational prod;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            prod = ca * cb;
            r.add_term(e, prod);
        }
    }
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o)
{
    note(Op::poly_arith);
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r(*this);
    for (auto& [e, v] : r.terms_)
        v = -v;
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    if (a.vars_ == b.vars_)
        return a.terms_ == b.terms_;
    if (a.is_constant() && b.is_constant())
        return a.constant_term() == b.constant_term();
    return false;
}

MultiPoly MultiPoly::pow(unsigned e) const
{
    MultiPoly result(vars_, 1);
    MultiPoly base(*this);
    while (e) {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e)
            base *= base;
    }
    return result;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const
{
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == degree)
            r.terms_.emplace(e, c);
    return r;
}

MultiPoly MultiPoly::lowest_part() const { return homogeneous_part(order()); }

MultiPoly MultiPoly::derivative(std::size_t var) const
{
    note(Op::derivative);
    if (var >= vars_.size())
        throw ContextError("variable index out of range");
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0)
            continue;
        Exponent d = e;
        d[var] -= 1;
        r.add_term(d, c * e[var]);
    }
    return r;
}

MultiPoly MultiPoly::derivative(std::string_view name) const { return derivative(index_of(name)); }

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const
{
    if (images.size() != vars_.size())
        throw ContextError("compose: wrong number of images");
    Vars target;
    for (const auto& im : images)
        if (!im.vars().empty()) {
            if (!target.empty() && im.vars() != target)
                throw ContextError("compose: images live in different contexts");
            target = im.vars();
        }
    // cache of powers per variable
    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power = [&](std::size_t i, int k) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty())
            cache.emplace_back(target, 1);
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
        MultiPoly t(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                t *= power(i, e[i]);
        r += t;
    }
    return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const
{
    std::vector<MultiPoly> images;
    images.reserve(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
        images.push_back(i == var ? value.in_context(vars_) : variable(vars_, i));
    return compose(images);
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const
{
    if (point.size() != vars_.size())
        throw ContextError("evaluate: wrong number of coordinates");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                t *= covkit::pow(point[i], e[i]);
        sum += t;
    }
    return sum;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const
{
    int d = degree(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        f[var] = 0;
        out[static_cast<std::size_t>(e[var])].terms_.emplace(std::move(f), c);
    }
    return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, const Vars& vars,
                                       std::size_t var)
{
    MultiPoly r(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        MultiPoly c = coeffs[k].in_context(vars);
        for (const auto& [e, v] : c.terms_) {
            if (e[var] != 0)
                throw ContextError("from_coefficients: coefficient involves the main variable");
            Exponent f = e;
            f[var] = static_cast<int>(k);
            r.add_term(f, v);
        }
    }
    return r;
}

MultiPoly MultiPoly::in_context(const Vars& target) const
{
    if (vars_ == target)
        return *this;
    std::vector<std::size_t> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(target.begin(), target.end(), vars_[i]);
        if (it == target.end()) {
            if (degree(i) > 0)
                throw ContextError("variable '" + vars_[i] + "' missing from target context");
            map[i] = target.size();
        } else {
            map[i] = static_cast<std::size_t>(it - target.begin());
        }
    }
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
        Exponent f(target.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (map[i] < target.size())
                f[map[i]] = e[i];
        r.add_term(f, c);
    }
    return r;
}

Rational MultiPoly::content() const
{
    if (terms_.empty())
        return 0;
    Integer g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        g = gcd(g, c.get_num());
        l = lcm(l, c.get_den());
    }
    Rational r(g, l);
    r.canonicalize();
    if (leading_coeff() < 0)
        r = -r;
    return r;
}

MultiPoly MultiPoly::primitive() const
{
    if (terms_.empty())
        return *this;
    MultiPoly r(*this);
    r *= Rational(1) / content();
    return r;
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b)
{
    if (b.is_zero())
        throw DivisionError("division by zero polynomial");
    if (b.is_constant())
        return a * (Rational(1) / b.constant_term());
    Vars vars = a.vars().empty() ? b.vars() : a.vars();
    MultiPoly r = a.in_context(vars);
    MultiPoly bb = b.in_context(vars);
    MultiPoly q(vars);
    const Exponent& lb = bb.leading_exponent();
    Rational lcb_inv = Rational(1) / bb.leading_coeff();
    Exponent t(vars.size());
    while (!r.is_zero()) {
        const Exponent& lr = r.leading_exponent();
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = lr[i] - lb[i];
            if (t[i] < 0)
                throw DivisionError("polynomial division is not exact");
        }
        MultiPoly m = MultiPoly::term(vars, t, r.leading_coeff() * lcb_inv);
        q += m;
        r -= m * bb;
    }
    return q;
}

bool divides(const MultiPoly& b, const MultiPoly& a)
{
    try {
        exact_divide(a, b);
        return true;
    } catch (const DivisionError&) {
        return false;
    }
}

MultiPoly canonical(const MultiPoly& f) { return f.primitive(); }

bool equal_up_to_scalar(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return a.is_zero() && b.is_zero();
    return canonical(a) == canonical(b);
}

std::string to_string(const MultiPoly& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        bool unit_monomial = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
        Rational mag = abs(c);
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        bool need_star = false;
        if (mag != 1 || unit_monomial) {
            os << to_string(mag);
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (need_star)
                os << '*';
            os << f.vars()[i];
            if (e[i] > 1)
                os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const Vars& vars) : s_(text), vars_(vars) {}

    MultiPoly parse()
    {
        MultiPoly r = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r.in_context(vars_);
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " +
                         what);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr()
    {
        MultiPoly r = term();
        for (;;) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                return r;
        }
    }

    MultiPoly term()
    {
        MultiPoly r = unary();
        for (;;) {
            if (accept('*')) {
                r *= unary();
            } else if (accept('/')) {
                MultiPoly d = unary();
                if (!d.is_constant() || d.is_zero())
                    fail("division only by nonzero constants");
                r *= Rational(1) / d.constant_term();
            } else {
                return r;
            }
        }
    }

    MultiPoly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    MultiPoly power()
    {
        MultiPoly base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MultiPoly atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly r = expr();
            if (!accept(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return MultiPoly(vars_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end())
                fail("unknown variable '" + name + "'");
            return MultiPoly::variable(vars_, name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const Vars& vars_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPoly parse_poly(std::string_view text, const Vars& vars) { return PolyParser(text, vars).parse(); }

} // namespace covkit
