#include "covkit/factor.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "zp.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace covkit {

namespace {

using detail::u64;
using detail::Zp;
using detail::ZpPoly;

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
// monic squarefree polynomial.
std::vector<ZpPoly> factor_mod_p(const Zp& F, ZpPoly f, std::mt19937_64& rng)
{
    std::vector<ZpPoly> out;
    ZpPoly x{0, 1};
    ZpPoly h = x;
    std::vector<std::pair<ZpPoly, int>> blocks;
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), f);
        ZpPoly g = F.gcd(F.sub(h, x), f);
        if (g.size() > 1) {
            blocks.emplace_back(g, d);
            f = F.quo(f, g);
            h = F.rem(h, f);
        }
    }
    if (f.size() > 1)
        blocks.emplace_back(f, static_cast<int>(f.size()) - 1);

    for (auto& [g, d] : blocks) {
        std::vector<ZpPoly> stack{g};
        while (!stack.empty()) {
            ZpPoly cur = std::move(stack.back());
            stack.pop_back();
            if (static_cast<int>(cur.size()) - 1 == d) {
                out.push_back(cur);
                continue;
            }
            Integer e = (pow(Integer(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
            for (;;) {
                ZpPoly a(cur.size() - 1);
                for (auto& c : a)
                    c = rng() % F.p;
                Zp::trim(a);
                if (a.size() <= 1)
                    continue;
                ZpPoly b = F.sub(F.powmod(a, e, cur), ZpPoly{1});
                ZpPoly s = F.gcd(b, cur);
                if (s.size() > 1 && s.size() < cur.size()) {
                    stack.push_back(F.quo(cur, s));
                    stack.push_back(s);
                    break;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials (dense, low to high).

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly to_zpoly(const UPoly& f)
{
    ZPoly r;
    for (const auto& c : f.coeffs()) {
        if (!is_integer(c))
            throw Error("to_zpoly: non-integer coefficient");
        r.push_back(c.get_num());
    }
    return r;
}

UPoly from_zpoly(const ZPoly& f)
{
    std::vector<Rational> c;
    for (const auto& v : f)
        c.emplace_back(v);
    return UPoly(std::move(c));
}

ZPoly lift_zp(const ZpPoly& a)
{
    ZPoly r;
    for (u64 c : a)
        r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

Integer smod(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    if (2 * r > m)
        r -= m;
    return r;
}

void reduce_mod(ZPoly& a, const Integer& m)
{
    for (auto& c : a) {
        c %= m;
        if (c < 0)
            c += m;
    }
    ztrim(a);
}

// Exact division over Z; returns false if b does not divide a.
bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& q)
{
    ZPoly r = a;
    ztrim(r);
    if (r.size() < b.size()) {
        q.clear();
        return r.empty();
    }
    q.assign(r.size() - b.size() + 1, Integer(0));
    const Integer& lb = b.back();
    const long nb = static_cast<long>(b.size());
    for (long k = static_cast<long>(r.size()) - 1; k >= nb - 1; --k) {
        Integer& rk = r[static_cast<std::size_t>(k)];
        if (rk == 0)
            continue;
        if (!mpz_divisible_p(rk.get_mpz_t(), lb.get_mpz_t()))
            return false;
        Integer f = rk / lb;
        std::size_t base = static_cast<std::size_t>(k - nb + 1);
        q[base] = f;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[base + j] -= f * b[j];
    }
    ztrim(r);
    ztrim(q);
    return r.empty();
}

// Advance idx to the next s-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n)
{
    std::size_t s = idx.size();
    for (std::size_t i = s; i-- > 0;) {
        if (idx[i] < n - s + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<u64> small_primes(u64 limit)
{
    std::vector<bool> sieve(limit + 1, true);
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (!sieve[i])
            continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i)
            sieve[j] = false;
    }
    return primes;
}

// Lift f = lc * g * h (mod p) to f = g * h (mod p^k); g monic.
void hensel_lift_pair(const ZPoly& f, ZPoly& g, ZPoly& h, const Zp& F, int k)
{
    ZpPoly gp = F.from(g), hp = F.from(h);
    ZpPoly s, t;
    F.bezout(gp, hp, s, t);
    Integer p(static_cast<unsigned long>(F.p));
    Integer pj = p;
    for (int j = 1; j < k; ++j) {
        ZPoly gh = zmul(g, h);
        ZPoly e(std::max(f.size(), gh.size()), Integer(0));
        for (std::size_t i = 0; i < e.size(); ++i) {
            Integer d = (i < f.size() ? f[i] : Integer(0)) - (i < gh.size() ? gh[i] : Integer(0));
            e[i] = d / pj; // exact: f = gh mod p^j
        }
        ztrim(e);
        ZpPoly ep = F.from(e);
        if (!ep.empty()) {
            ZpPoly te = F.mul(t, ep);
            ZpPoly q, dg;
            F.divmod(te, gp, q, dg);
            ZpPoly dh = F.add(F.mul(s, ep), F.mul(q, hp));
            ZPoly dgz = lift_zp(dg), dhz = lift_zp(dh);
            if (g.size() < dgz.size())
                g.resize(dgz.size(), Integer(0));
            for (std::size_t i = 0; i < dgz.size(); ++i)
                g[i] += pj * dgz[i];
            if (h.size() < dhz.size())
                h.resize(dhz.size(), Integer(0));
            for (std::size_t i = 0; i < dhz.size(); ++i)
                h[i] += pj * dhz[i];
        }
        pj *= p;
        reduce_mod(g, pj);
        reduce_mod(h, pj);
    }
}

// Zassenhaus factorization of a squarefree primitive integer polynomial
// with positive leading coefficient.
std::vector<ZPoly> factor_squarefree(const ZPoly& f)
{
    std::size_t n = f.size() - 1;
    if (n <= 1)
        return {f};

    static const std::vector<u64> primes = small_primes(20000);
    std::mt19937_64 rng(0x5eed1234abcdULL);
    const Integer& lc = f.back();

    // Try a handful of good primes, keep the one with the fewest factors.
    u64 best_p = 0;
    std::vector<ZpPoly> best;
    int tried = 0;
    for (u64 p : primes) {
        if (p < 3)
            continue;
        Zp F{p};
        if (F.reduce(lc) == 0)
            continue;
        ZpPoly fp = F.from(f);
        if (F.gcd(fp, F.derivative(fp)).size() != 1)
            continue;
        auto facs = factor_mod_p(F, F.monic(fp), rng);
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1 || ++tried >= 5)
            break;
    }
    if (best_p == 0)
        throw Error("uni_factor: no suitable prime found");
    if (best.size() == 1)
        return {f};

    // Mignotte-style bound on coefficients of lc * (any factor).
    Integer norm2 = 0;
    for (const auto& c : f)
        norm2 += c * c;
    Integer root = sqrt(norm2) + 1;
    Integer bound = 2 * abs(lc) * pow(Integer(2), n) * root + 1;
    Zp F{best_p};
    Integer p(static_cast<unsigned long>(best_p));
    int k = 1;
    Integer pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }

    // Sequential two-factor lifting.
    std::vector<ZPoly> lifted;
    ZPoly target = f;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ZPoly g = lift_zp(best[i]);
        ZpPoly rest{F.reduce(target.back())};
        for (std::size_t j = i + 1; j < best.size(); ++j)
            rest = F.mul(rest, best[j]);
        ZPoly h = lift_zp(rest);
        hensel_lift_pair(target, g, h, F, k);
        lifted.push_back(g);
        target = h;
        // target now lc * prod(remaining) mod p^k
    }
    {
        // last factor: monic version of target
        ZPoly l = target;
        Integer inv_lc;
        mpz_invert(inv_lc.get_mpz_t(), Integer(target.back()).get_mpz_t(), pk.get_mpz_t());
        for (auto& c : l)
            c *= inv_lc;
        reduce_mod(l, pk);
        lifted.push_back(l);
    }

    // Recombination over subsets of increasing size.
    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t s = 1;
    while (2 * s <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        for (;;) {
            const Integer& rlc = rest.back();
            Integer c0 = rlc;
            for (auto i : idx)
                c0 = smod(c0 * pool[i][0], pk);
            bool plausible = (c0 == 0) ? rest[0] == 0
                                        : mpz_divisible_p(Integer(rlc * rest[0]).get_mpz_t(),
                                                          c0.get_mpz_t()) != 0;
            if (plausible) {
                ZPoly cand{rlc};
                for (auto i : idx) {
                    cand = zmul(cand, pool[i]);
                    for (auto& c : cand)
                        c = smod(c, pk);
                }
                ztrim(cand);
                UPoly prim = from_zpoly(cand).primitive();
                ZPoly h = to_zpoly(prim);
                ZPoly q;
                if (zdivide(rest, h, q)) {
                    result.push_back(h);
                    rest = q;
                    std::vector<ZPoly> next;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            next.push_back(pool[i]);
                    pool = std::move(next);
                    found = true;
                    break;
                }
            }
            if (!next_combination(idx, pool.size()))
                break;
        }
        if (!found)
            ++s;
    }
    if (rest.size() > 1)
        result.push_back(to_zpoly(from_zpoly(rest).primitive()));
    return result;
}

bool factor_less(const std::pair<UPoly, int>& a, const std::pair<UPoly, int>& b)
{
    if (a.first.degree() != b.first.degree())
        return a.first.degree() < b.first.degree();
    const auto& ca = a.first.coeffs();
    const auto& cb = b.first.coeffs();
    for (std::size_t i = ca.size(); i-- > 0;)
        if (ca[i] != cb[i])
            return ca[i] < cb[i];
    return a.second < b.second;
}

} // namespace

UPoly Factorization::expand() const
{
    UPoly r(content);
    for (const auto& [g, e] : factors)
        for (int i = 0; i < e; ++i)
            r = r * g;
    return r;
}

Factorization uni_factor(const UPoly& f)
{
    note(Op::uni_factor);
    if (f.is_zero())
        throw DegenerateInputError("uni_factor: zero polynomial");
    Factorization out;
    out.content = f.content();
    if (f.degree() == 0)
        return out;
    UPoly prim = f.primitive();

    // Yun's squarefree decomposition.
    UPoly d1 = prim.derivative();
    UPoly b = gcd(prim, d1);
    UPoly c = exact_quotient(prim, b);
    UPoly d = exact_quotient(d1, b) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        UPoly a = gcd(c, d);
        if (a.degree() > 0) {
            for (auto& h : factor_squarefree(to_zpoly(a.primitive())))
                out.factors.emplace_back(from_zpoly(h), i);
        }
        c = exact_quotient(c, a);
        d = exact_quotient(d, a) - c.derivative();
        ++i;
    }
    std::sort(out.factors.begin(), out.factors.end(), factor_less);
    return out;
}

Factorization uni_factor(const MultiPoly& f)
{
    std::size_t var = 0;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (f.degree(i) > 0)
            var = i;
    return uni_factor(to_upoly(f, var));
}

bool is_irreducible(const UPoly& f)
{
    if (f.degree() <= 0)
        return false;
    auto fac = uni_factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

} // namespace covkit
