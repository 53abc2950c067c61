#include "bianchi/classforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bianchi {

std::vector<QuadForm> reduced_forms(Order const& O)
{
    long D = O.discriminant();
    long absD = -D;
    std::vector<QuadForm> out;
    for (long a = 1; 3 * a * a <= absD; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2) != 0) continue;
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](QuadForm const& x, QuadForm const& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

long class_number(Order const& O) { return static_cast<long>(reduced_forms(O).size()); }

long genus_rank(Order const& O)
{
    long n = O.abs_discriminant();
    long primes = 0;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        ++primes;
        while (n % p == 0) n /= p;
    }
    if (n > 1) ++primes;
    return primes - 1;
}

long ambiguous_two_rank(Order const& O)
{
    long count = 0;
    for (auto const& f : reduced_forms(O)) {
        if (f.is_ambiguous()) ++count;
    }
    long rank = 0;
    while ((1L << rank) < count) ++rank;
    if ((1L << rank) != count) throw std::logic_error("ambiguous form count is not a power of two");
    return rank;
}

std::vector<QuadInt> form_ideal(Order const& O, QuadForm const& f)
{
    // (-b + sqrt D)/2 = omega - (b + T)/2
    return {QuadInt(f.a), QuadInt(-(f.b + O.trace()) / 2, 1)};
}

std::vector<CuspRep> cusp_representatives(Order const& O)
{
    std::vector<CuspRep> out;
    auto forms = reduced_forms(O);
    for (size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].a == 1) {
            out.push_back({QuadInt(1), QuadInt(0), i});
        } else {
            auto gens = form_ideal(O, forms[i]);
            out.push_back({gens[1], gens[0], i});
        }
    }
    return out;
}

bool is_principal(Order const& O, std::vector<QuadInt> const& gens)
{
    LatticeHnf I = O.ideal(gens);
    Integer n = I.index();
    // norm(a + b w) = (a + bT/2)^2 + b^2 |D| / 4
    long absD = O.abs_discriminant();
    Integer bmax = sqrt(Integer(4 * n / absD)) + 1;
    Integer root = sqrt(n) + 1;
    for (Integer b = -bmax; b <= bmax; ++b) {
        Integer center = -(b * O.trace()) / 2;
        for (Integer a = center - root - 1; a <= center + root + 1; ++a) {
            QuadInt x(a, b);
            if (O.norm(x) == n && O.ideal_contains(I, x)) return true;
        }
    }
    return false;
}

bool same_ideal_class(Order const& O, QuadInt const& p1, QuadInt const& q1, QuadInt const& p2, QuadInt const& q2)
{
    std::vector<QuadInt> gens;
    for (auto const* x : {&p1, &q1}) {
        for (auto const* y : {&p2, &q2}) {
            QuadInt g = O.mul(*x, O.conj(*y));
            if (!g.is_zero()) gens.push_back(g);
        }
    }
    if (gens.empty()) throw std::invalid_argument("same_ideal_class: zero ideal");
    return is_principal(O, gens);
}

std::pair<QuadInt, QuadInt> cusp_of_point(Order const& O, ExactPoint const& z)
{
    auto [s, u] = O.omega_coords(z);
    Integer m = lcm(s.get_den(), u.get_den());
    Rational sm = s * m;
    Rational um = u * m;
    return {O.from_omega_coords(sm, um), QuadInt(m, 0)};
}

size_t ideal_class_of(Order const& O, std::vector<CuspRep> const& reps, QuadInt const& p, QuadInt const& q)
{
    for (size_t i = 0; i < reps.size(); ++i) {
        if (same_ideal_class(O, p, q, reps[i].p, reps[i].q)) return i;
    }
    throw std::logic_error("cusp matches no ideal class");
}

}  // namespace bianchi
