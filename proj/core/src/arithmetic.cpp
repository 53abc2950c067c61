#include "bianchi/arithmetic.hpp"

#include <stdexcept>
#include <tuple>

namespace bianchi {

namespace {

Integer floor_of(Rational const& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Row of a lattice reduction: a vector of Z^2 and its coefficients in terms
// of the original generators.
struct HnfRow {
    Integer x;
    Integer y;
    std::vector<Integer> coeff;
};

void axpy(HnfRow& dst, Integer const& k, HnfRow const& src)
{
    dst.x -= k * src.x;
    dst.y -= k * src.y;
    for (size_t i = 0; i < dst.coeff.size(); ++i) {
        dst.coeff[i] -= k * src.coeff[i];
    }
}

void negate(HnfRow& r)
{
    r.x = -r.x;
    r.y = -r.y;
    for (auto& c : r.coeff) c = -c;
}

// Euclid on one coordinate: afterwards rows[first] carries the gcd and every
// later row has zero in that coordinate.
void eliminate(std::vector<HnfRow>& rows, size_t first, bool use_x)
{
    auto key = [use_x](HnfRow const& r) -> Integer const& { return use_x ? r.x : r.y; };
    for (;;) {
        size_t pivot = rows.size();
        for (size_t i = first; i < rows.size(); ++i) {
            if (key(rows[i]) == 0) continue;
            if (pivot == rows.size() || abs(key(rows[i])) < abs(key(rows[pivot]))) pivot = i;
        }
        if (pivot == rows.size()) return;
        std::swap(rows[first], rows[pivot]);
        bool done = true;
        for (size_t i = first + 1; i < rows.size(); ++i) {
            if (key(rows[i]) == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), key(rows[i]).get_mpz_t(), key(rows[first]).get_mpz_t());
            axpy(rows[i], q, rows[first]);
            if (key(rows[i]) != 0) done = false;
        }
        if (done) return;
    }
}

// Returns the two HNF rows (h11, h21) and (0, h22) with their coefficients.
std::pair<HnfRow, HnfRow> hnf_rows(std::vector<std::array<Integer, 2>> const& vecs)
{
    std::vector<HnfRow> rows;
    rows.reserve(vecs.size());
    for (size_t i = 0; i < vecs.size(); ++i) {
        HnfRow r{vecs[i][0], vecs[i][1], std::vector<Integer>(vecs.size(), 0)};
        r.coeff[i] = 1;
        rows.push_back(std::move(r));
    }
    eliminate(rows, 0, true);
    if (rows.size() < 2) throw std::invalid_argument("lattice of rank < 2");
    eliminate(rows, 1, false);
    HnfRow r1 = rows[0];
    HnfRow r2 = rows[1];
    if (r1.x == 0 || r2.y == 0) throw std::invalid_argument("lattice of rank < 2");
    if (r1.x < 0) negate(r1);
    if (r2.y < 0) negate(r2);
    axpy(r1, floor_of(Rational(r1.y, r2.y)), r2);
    return {r1, r2};
}

std::vector<std::array<Integer, 2>> coords(std::vector<QuadInt> const& gens)
{
    std::vector<std::array<Integer, 2>> v;
    v.reserve(gens.size());
    for (auto const& g : gens) v.push_back({g.a, g.b});
    return v;
}

}  // namespace

std::string to_string(Integer const& v) { return v.get_str(); }

std::string to_string(Rational const& v)
{
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, QuadInt const& x)
{
    return os << "(" << x.a.get_str() << (x.b < 0 ? "" : "+") << x.b.get_str() << "w)";
}

std::ostream& operator<<(std::ostream& os, ExactPoint const& p)
{
    return os << "(" << to_string(p.x) << ", " << to_string(p.y) << ")";
}

FieldElem::FieldElem(QuadInt num, Integer den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_ == 0) throw std::invalid_argument("FieldElem: zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    Integer g = gcd(gcd(num_.a, num_.b), den_);
    if (g > 1) {
        num_.a /= g;
        num_.b /= g;
        den_ /= g;
    }
}

namespace {

bool squarefree(long n)
{
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return n != 0;
}

}  // namespace

bool is_fundamental_discriminant(long D)
{
    if (D == 1 || D == 0) return false;
    long m = ((D % 4) + 4) % 4;
    if (m == 1) return squarefree(D);
    if (m != 0) return false;
    long q = ((D / 4 % 4) + 4) % 4;
    return (q == 2 || q == 3) && squarefree(D / 4);
}

Order Order::make(long D)
{
    if (D >= 0) throw std::invalid_argument("discriminant must be negative: " + std::to_string(D));
    long m = ((D % 4) + 4) % 4;
    if (m == 0) return Order(D, 0, -D / 4);
    if (m == 1) return Order(D, 1, (1 - D) / 4);
    throw std::invalid_argument("not a discriminant (D must be 0 or 1 mod 4): " + std::to_string(D));
}

QuadInt Order::mul(QuadInt const& x, QuadInt const& y) const
{
    Integer bb = x.b * y.b;
    return {x.a * y.a - bb * N_, x.a * y.b + x.b * y.a + bb * T_};
}

Integer Order::norm(QuadInt const& x) const { return x.a * x.a + x.a * x.b * T_ + x.b * x.b * N_; }

std::optional<QuadInt> Order::divide_exact(QuadInt const& x, QuadInt const& y) const
{
    Integer n = norm(y);
    if (n == 0) return std::nullopt;
    QuadInt p = mul(x, conj(y));
    if (!mpz_divisible_p(p.a.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(p.b.get_mpz_t(), n.get_mpz_t())) {
        return std::nullopt;
    }
    return QuadInt{p.a / n, p.b / n};
}

std::vector<QuadInt> Order::units() const
{
    QuadInt gen = -1;
    if (D_ == -4 || D_ == -3) gen = omega();
    std::vector<QuadInt> out{1};
    for (QuadInt u = gen; u != QuadInt(1); u = mul(u, gen)) out.push_back(u);
    return out;
}

std::optional<QuadInt> Order::unit_inverse(QuadInt const& u) const
{
    if (!is_unit(u)) return std::nullopt;
    return conj(u);
}

ExactPoint Order::to_point(QuadInt const& x) const
{
    Rational half_b(x.b, 2);
    half_b.canonicalize();
    return {Rational(x.a) + half_b * T_, half_b};
}

ExactPoint Order::to_point(FieldElem const& x) const
{
    ExactPoint p = to_point(x.numerator());
    Rational den(x.denominator());
    return {p.x / den, p.y / den};
}

std::pair<Rational, Rational> Order::omega_coords(ExactPoint const& p) const
{
    Rational u = 2 * p.y;
    return {p.x - p.y * T_, u};
}

QuadInt Order::from_omega_coords(Rational const& s, Rational const& u) const
{
    if (s.get_den() != 1 || u.get_den() != 1) throw std::invalid_argument("point is not in O_D");
    return {s.get_num(), u.get_num()};
}

ExactPoint Order::mul(ExactPoint const& p, ExactPoint const& q) const
{
    return {p.x * q.x + p.y * q.y * D_, p.x * q.y + p.y * q.x};
}

ExactPoint Order::inverse(ExactPoint const& p) const
{
    Rational n = norm(p);
    if (n == 0) throw std::domain_error("division by zero in Q(sqrt D)");
    return {p.x / n, -p.y / n};
}

LatticeHnf Order::lattice_hnf(std::vector<QuadInt> const& gens) const
{
    auto [r1, r2] = hnf_rows(coords(gens));
    return {r1.x, r1.y, r2.y};
}

LatticeHnf Order::ideal(std::vector<QuadInt> const& gens) const
{
    std::vector<QuadInt> z;
    for (auto const& g : gens) {
        z.push_back(g);
        z.push_back(mul(g, omega()));
    }
    return lattice_hnf(z);
}

bool Order::ideal_contains(LatticeHnf const& I, QuadInt const& x) const
{
    if (!mpz_divisible_p(x.a.get_mpz_t(), I.h11.get_mpz_t())) return false;
    Integer m = x.a / I.h11;
    Integer rest = x.b - m * I.h21;
    return mpz_divisible_p(rest.get_mpz_t(), I.h22.get_mpz_t()) != 0;
}

Integer Order::ideal_index(QuadInt const& c, QuadInt const& d) const
{
    if (c.is_zero() && d.is_zero()) throw std::invalid_argument("ideal_index: (0, 0) generates the zero ideal");
    return ideal({c, d}).index();
}

std::optional<std::pair<QuadInt, QuadInt>> Order::bezout(QuadInt const& c, QuadInt const& d) const
{
    if (c.is_zero() && d.is_zero()) return std::nullopt;
    QuadInt w = omega();
    auto [r1, r2] = hnf_rows(coords({c, mul(c, w), d, mul(d, w)}));
    if (r1.x != 1 || r2.y != 1) return std::nullopt;
    // r1 = (1, 0) once h21 has been reduced modulo h22 = 1.
    return std::make_pair(QuadInt{r1.coeff[0], r1.coeff[1]}, QuadInt{r1.coeff[2], r1.coeff[3]});
}

std::pair<ExactPoint, QuadInt> Order::reduce_mod_lattice(ExactPoint const& p) const
{
    auto [s, u] = omega_coords(p);
    Rational half(1, 2);
    QuadInt lambda{floor_of(s + half), floor_of(u + half)};
    return {p - to_point(lambda), lambda};
}

std::vector<QuadInt> Order::residues(QuadInt const& c) const
{
    LatticeHnf L = ideal({c});
    std::vector<QuadInt> out;
    for (Integer i = 0; i < L.h11; ++i) {
        for (Integer j = 0; j < L.h22; ++j) out.emplace_back(i, j);
    }
    return out;
}

Mat2 Order::mul(Mat2 const& x, Mat2 const& y) const
{
    return {mul(x.a, y.a) + mul(x.b, y.c), mul(x.a, y.b) + mul(x.b, y.d), mul(x.c, y.a) + mul(x.d, y.c),
            mul(x.c, y.b) + mul(x.d, y.d)};
}

Mat2 Order::normalize(Mat2 const& m) const
{
    auto key = [](Mat2 const& x) { return std::tie(x.a.a, x.a.b, x.b.a, x.b.b, x.c.a, x.c.b, x.d.a, x.d.b); };
    Mat2 best = m;
    for (auto const& u : units()) {
        Mat2 cand{mul(u, m.a), mul(u, m.b), mul(u, m.c), mul(u, m.d)};
        if (key(cand) > key(best)) best = cand;
    }
    return best;
}

bool Order::is_scalar(Mat2 const& m) const { return m.b.is_zero() && m.c.is_zero() && m.a == m.d && !m.a.is_zero(); }

bool Order::projectively_equal(Mat2 const& x, Mat2 const& y) const { return normalize(x) == normalize(y); }

std::optional<ExactPoint> Order::apply(Mat2 const& m, ExactPoint const& z) const
{
    ExactPoint den = mul(to_point(m.c), z) + to_point(m.d);
    if (den.x == 0 && den.y == 0) return std::nullopt;
    ExactPoint num = mul(to_point(m.a), z) + to_point(m.b);
    return divide(num, den);
}

}  // namespace bianchi
