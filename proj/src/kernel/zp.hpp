#pragma once

#include "covkit/errors.hpp"
#include "covkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace covkit::detail {

using u64 = std::uint64_t;
using ZpPoly = std::vector<u64>; // low to high, trimmed

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p an odd prime below 2^31.

struct Zp {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    u64 reduce(const Integer& z) const
    {
        Integer r = z % static_cast<unsigned long>(p);
        if (r < 0)
            r += static_cast<unsigned long>(p);
        return r.get_ui();
    }

    static void trim(ZpPoly& a)
    {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }

    ZpPoly from(const std::vector<Integer>& f) const
    {
        ZpPoly r(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            r[i] = reduce(f[i]);
        trim(r);
        return r;
    }

    ZpPoly add(const ZpPoly& a, const ZpPoly& b) const
    {
        ZpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        trim(r);
        return r;
    }

    ZpPoly sub(const ZpPoly& a, const ZpPoly& b) const
    {
        ZpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        trim(r);
        return r;
    }

    ZpPoly mul(const ZpPoly& a, const ZpPoly& b) const
    {
        if (a.empty() || b.empty())
            return {};
        ZpPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i])
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
        trim(r);
        return r;
    }

    ZpPoly scale(const ZpPoly& a, u64 s) const
    {
        ZpPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = mul(a[i], s);
        trim(r);
        return r;
    }

    void divmod(const ZpPoly& a, const ZpPoly& b, ZpPoly& q, ZpPoly& r) const
    {
        if (b.empty())
            throw DivisionError("division by zero in F_p[x]");
        r = a;
        if (a.size() < b.size()) {
            q.clear();
            return;
        }
        q.assign(a.size() - b.size() + 1, 0);
        u64 inv_lc = inv(b.back());
        const long nb = static_cast<long>(b.size());
        for (long k = static_cast<long>(a.size()) - 1; k >= nb - 1; --k) {
            u64 f = mul(r[static_cast<std::size_t>(k)], inv_lc);
            if (!f)
                continue;
            std::size_t base = static_cast<std::size_t>(k - nb + 1);
            q[base] = f;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[base + j] = sub(r[base + j], mul(f, b[j]));
        }
        trim(q);
        r.resize(b.size() - 1);
        trim(r);
    }

    ZpPoly rem(const ZpPoly& a, const ZpPoly& b) const
    {
        ZpPoly q, r;
        divmod(a, b, q, r);
        return r;
    }

    ZpPoly quo(const ZpPoly& a, const ZpPoly& b) const
    {
        ZpPoly q, r;
        divmod(a, b, q, r);
        return q;
    }

    ZpPoly monic(const ZpPoly& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

    ZpPoly gcd(ZpPoly a, ZpPoly b) const
    {
        while (!b.empty()) {
            ZpPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s*a + t*b = 1 for coprime a, b.
    void bezout(const ZpPoly& a, const ZpPoly& b, ZpPoly& s, ZpPoly& t) const
    {
        ZpPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
        while (!r1.empty()) {
            ZpPoly q, r;
            divmod(r0, r1, q, r);
            r0 = std::move(r1);
            r1 = std::move(r);
            ZpPoly s2 = sub(s0, mul(q, s1));
            ZpPoly t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.size() != 1)
            throw Error("bezout: inputs are not coprime modulo p");
        u64 inv0 = inv(r0[0]);
        s = scale(s0, inv0);
        t = scale(t0, inv0);
    }

    ZpPoly derivative(const ZpPoly& a) const
    {
        if (a.size() <= 1)
            return {};
        ZpPoly r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i)
            r[i - 1] = mul(a[i], i % p);
        trim(r);
        return r;
    }

    ZpPoly powmod(ZpPoly base, const Integer& e, const ZpPoly& m) const
    {
        ZpPoly result{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), m);
            if (mpz_tstbit(e.get_mpz_t(), i))
                result = rem(mul(result, base), m);
        }
        return result;
    }
};

} // namespace covkit::detail
