#include "covkit/upoly.hpp"

#include "covkit/errors.hpp"
#include "zp.hpp"

#include <algorithm>

namespace covkit {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rational& c)
{
    if (c != 0)
        c_.push_back(c);
}

UPoly UPoly::monomial(int degree, const Rational& c)
{
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return UPoly(std::move(v));
}

void UPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

const Rational& UPoly::lc() const
{
    if (c_.empty())
        throw DegenerateInputError("leading coefficient of zero polynomial");
    return c_.back();
}

Rational UPoly::operator[](int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size()))
        return 0;
    return c_[static_cast<std::size_t>(k)];
}

UPoly& UPoly::operator+=(const UPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_)
        v *= s;
    return *this;
}

UPoly UPoly::operator-() const
{
    UPoly r(*this);
    for (auto& v : r.c_)
        v = -v;
    return r;
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
}

UPoly UPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(r));
}

UPoly UPoly::monic() const
{
    if (is_zero())
        return {};
    return *this * (Rational(1) / lc());
}

Rational UPoly::evaluate(const Rational& t) const
{
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * t + c_[i];
    return acc;
}

UPoly UPoly::compose(const UPoly& inner) const
{
    UPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * inner + UPoly(c_[i]);
    return acc;
}

Rational UPoly::content() const
{
    if (is_zero())
        return 0;
    Integer g = 0, l = 1;
    for (const auto& v : c_) {
        g = gcd(g, v.get_num());
        l = lcm(l, v.get_den());
    }
    Rational r(g, l);
    r.canonicalize();
    return lc() < 0 ? Rational(-r) : r;
}

UPoly UPoly::primitive() const
{
    if (is_zero())
        return {};
    return *this * (Rational(1) / content());
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    if (b.is_zero())
        throw DivisionError("division by zero polynomial");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db)
        return {UPoly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(da - db) + 1, Rational(0));
    Rational inv = Rational(1) / b.lc();
    for (int k = da; k >= db; --k) {
        Rational f = r[static_cast<std::size_t>(k)] * inv;
        if (f == 0)
            continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly exact_quotient(const UPoly& a, const UPoly& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        throw DivisionError("univariate division is not exact");
    return q;
}

namespace {

// Small-primes modular gcd of integer primitive polynomials: images modulo
// primes near 2^31 are combined by CRT until the primitive part of the
// symmetric lift divides both inputs.
UPoly modular_gcd(const UPoly& a, const UPoly& b)
{
    auto ints = [](const UPoly& f) {
        std::vector<Integer> r;
        for (const auto& c : f.coeffs())
            r.push_back(c.get_num());
        return r;
    };
    std::vector<Integer> A = ints(a), B = ints(b);
    Integer g = gcd(A.back(), B.back());
    int bound = std::min(a.degree(), b.degree()) + 1;
    std::vector<Integer> H;
    Integer M = 1, p = 2147000000;
    int d = bound;
    for (int round = 0; round < 10000; ++round) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (g % p == 0)
            continue;
        detail::Zp F{p.get_ui()};
        detail::ZpPoly ap = F.from(A), bp = F.from(B);
        if (static_cast<int>(ap.size()) != a.degree() + 1 || static_cast<int>(bp.size()) != b.degree() + 1)
            continue;
        detail::ZpPoly gp = F.gcd(ap, bp);
        int dg = static_cast<int>(gp.size()) - 1;
        if (dg == 0)
            return UPoly(Rational(1));
        if (dg > d)
            continue;
        gp = F.scale(gp, F.reduce(g));
        bool changed = true;
        if (dg < d) {
            d = dg;
            M = p;
            H.assign(gp.begin(), gp.end());
        } else {
            // x = H mod M, x = gp mod p
            Integer inv;
            mpz_invert(inv.get_mpz_t(), M.get_mpz_t(), p.get_mpz_t());
            Integer MP = M * p;
            changed = false;
            for (std::size_t i = 0; i < H.size(); ++i) {
                Integer t = (Integer(static_cast<unsigned long>(gp[i])) - H[i]) * inv % p;
                if (t < 0)
                    t += p;
                Integer x = H[i] + M * t;
                if (x > MP / 2)
                    x -= MP;
                if (x != H[i])
                    changed = true;
                H[i] = x;
            }
            M = MP;
        }
        if (changed)
            continue;
        std::vector<Rational> hc(H.begin(), H.end());
        UPoly cand = UPoly(hc).primitive();
        if ((a % cand).is_zero() && (b % cand).is_zero())
            return cand.monic();
    }
    throw Error("modular gcd did not converge");
}

} // namespace

UPoly gcd(const UPoly& a, const UPoly& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.degree() == 0 || b.degree() == 0)
        return UPoly(Rational(1));
    return modular_gcd(a.primitive(), b.primitive());
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b)
{
    UPoly r0 = a, r1 = b;
    UPoly s0(Rational(1)), s1, t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UPoly s2 = s0 - q * s1;
        UPoly t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Rational inv = Rational(1) / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

bool is_squarefree(const UPoly& f)
{
    if (f.degree() <= 1)
        return true;
    return gcd(f, f.derivative()).degree() == 0;
}

UPoly squarefree_part(const UPoly& f)
{
    if (f.degree() <= 0)
        return f;
    return exact_quotient(f, gcd(f, f.derivative())).monic();
}

UPoly to_upoly(const MultiPoly& f, std::size_t var)
{
    std::vector<Rational> c(static_cast<std::size_t>(std::max(f.total_degree() + 1, 0)), Rational(0));
    for (const auto& [e, v] : f.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0)
                throw ContextError("to_upoly: polynomial is not univariate");
        c[static_cast<std::size_t>(e.empty() ? 0 : e[var])] = v;
    }
    return UPoly(std::move(c));
}

MultiPoly to_multipoly(const UPoly& f, const Vars& vars, std::size_t var)
{
    MultiPoly r(vars);
    for (int k = 0; k <= f.degree(); ++k) {
        Exponent e(vars.size(), 0);
        e[var] = k;
        r.add_term(e, f[k]);
    }
    return r;
}

std::string to_string(const UPoly& f, const std::string& var)
{
    return to_string(to_multipoly(f, Vars{var}, 0));
}

} // namespace covkit
