#ifndef BIANCHI_ARITHMETIC_HPP
#define BIANCHI_ARITHMETIC_HPP

#include <gmpxx.h>

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bianchi {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(Integer const& v);
std::string to_string(Rational const& v);

/// An element a + b*omega of the maximal order O_D, in the basis {1, omega}.
struct QuadInt {
    Integer a;
    Integer b;

    QuadInt() = default;
    QuadInt(Integer a_, Integer b_) : a(std::move(a_)), b(std::move(b_)) {}
    QuadInt(long a_) : a(a_), b(0) {}  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return a == 0 && b == 0; }

    friend QuadInt operator+(QuadInt const& x, QuadInt const& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadInt operator-(QuadInt const& x, QuadInt const& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadInt operator-(QuadInt const& x) { return {-x.a, -x.b}; }
    friend bool operator==(QuadInt const& x, QuadInt const& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(QuadInt const& x, QuadInt const& y) { return !(x == y); }
    friend bool operator<(QuadInt const& x, QuadInt const& y)
    {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
    friend std::ostream& operator<<(std::ostream& os, QuadInt const& x);
};

/// A point x + y*sqrt(|D|)*i of the complex plane with rational coordinates.
/// Every element of Q(sqrt D) is such a point.
struct ExactPoint {
    Rational x;
    Rational y;

    friend bool operator==(ExactPoint const& p, ExactPoint const& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator!=(ExactPoint const& p, ExactPoint const& q) { return !(p == q); }
    friend bool operator<(ExactPoint const& p, ExactPoint const& q)
    {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    }
    friend ExactPoint operator+(ExactPoint const& p, ExactPoint const& q) { return {p.x + q.x, p.y + q.y}; }
    friend ExactPoint operator-(ExactPoint const& p, ExactPoint const& q) { return {p.x - q.x, p.y - q.y}; }
    friend ExactPoint operator-(ExactPoint const& p) { return {-p.x, -p.y}; }
    friend std::ostream& operator<<(std::ostream& os, ExactPoint const& p);
};

/// Z-lattice basis {h11 + h21*omega, h22*omega} in Hermite normal form
/// (h11, h22 > 0, 0 <= h21 < h22).  Used for ideals of O_D.
struct LatticeHnf {
    Integer h11;
    Integer h21;
    Integer h22;

    Integer index() const { return h11 * h22; }
    friend bool operator==(LatticeHnf const&, LatticeHnf const&) = default;
};

/// True for field discriminants: D = 1 mod 4 squarefree, or D = 4m with
/// m = 2, 3 mod 4 squarefree.  Only these give maximal orders.
bool is_fundamental_discriminant(long D);

class Order;

/// Element of Q(sqrt D): numerator / denominator in lowest terms.
class FieldElem {
public:
    FieldElem(QuadInt num, Integer den);
    explicit FieldElem(QuadInt num) : FieldElem(std::move(num), 1) {}

    QuadInt const& numerator() const { return num_; }
    Integer const& denominator() const { return den_; }

    friend bool operator==(FieldElem const&, FieldElem const&) = default;

private:
    QuadInt num_;
    Integer den_;
};

/// 2x2 matrix over O_D.  Group elements are stored projectively.
struct Mat2 {
    QuadInt a, b, c, d;
    friend bool operator==(Mat2 const&, Mat2 const&) = default;
};

/// Field data of the maximal order O_D of Q(sqrt D): omega satisfies
/// omega^2 = T*omega - N.
class Order {
public:
    /// Throws std::invalid_argument unless D < 0 and D = 0, 1 mod 4.
    static Order make(long D);

    long discriminant() const { return D_; }
    long abs_discriminant() const { return -D_; }
    long trace() const { return T_; }
    long norm_omega() const { return N_; }

    QuadInt omega() const { return {0, 1}; }

    QuadInt mul(QuadInt const& x, QuadInt const& y) const;
    QuadInt conj(QuadInt const& x) const { return {x.a + x.b * T_, -x.b}; }
    Integer norm(QuadInt const& x) const;
    Integer trace_of(QuadInt const& x) const { return 2 * x.a + x.b * T_; }

    /// Exact quotient x / y when it lies in O_D.
    std::optional<QuadInt> divide_exact(QuadInt const& x, QuadInt const& y) const;

    /// Units of O_D in a fixed order; units()[1] generates the unit group.
    std::vector<QuadInt> units() const;
    std::optional<QuadInt> unit_inverse(QuadInt const& u) const;
    bool is_unit(QuadInt const& x) const { return norm(x) == 1; }

    ExactPoint to_point(QuadInt const& x) const;
    ExactPoint to_point(FieldElem const& x) const;
    /// Inverse of to_point: coordinates (s, u) with p = s + u*omega.
    std::pair<Rational, Rational> omega_coords(ExactPoint const& p) const;
    /// The lattice element at coordinates (s, u); both must be integers.
    QuadInt from_omega_coords(Rational const& s, Rational const& u) const;

    ExactPoint mul(ExactPoint const& p, ExactPoint const& q) const;
    ExactPoint conj(ExactPoint const& p) const { return {p.x, -p.y}; }
    Rational norm(ExactPoint const& p) const { return p.x * p.x + p.y * p.y * abs_discriminant(); }
    ExactPoint inverse(ExactPoint const& p) const;
    ExactPoint divide(ExactPoint const& p, ExactPoint const& q) const { return mul(p, inverse(q)); }
    Rational dist2(ExactPoint const& p, ExactPoint const& q) const { return norm(p - q); }
    /// Euclidean inner product of two plane vectors.
    Rational dot(ExactPoint const& p, ExactPoint const& q) const
    {
        return p.x * q.x + p.y * q.y * abs_discriminant();
    }

    /// Hermite normal form of the Z-lattice spanned by the given elements.
    LatticeHnf lattice_hnf(std::vector<QuadInt> const& gens) const;
    /// The ideal generated by the given elements (not all zero).
    LatticeHnf ideal(std::vector<QuadInt> const& gens) const;
    bool ideal_contains(LatticeHnf const& I, QuadInt const& x) const;

    /// Index [O_D : (c, d)]; 1 exactly when c and d generate the unit ideal.
    Integer ideal_index(QuadInt const& c, QuadInt const& d) const;
    /// For coprime (c, d), returns (x, y) with x*c + y*d = 1.
    std::optional<std::pair<QuadInt, QuadInt>> bezout(QuadInt const& c, QuadInt const& d) const;

    /// p' = p - lambda in the half-open parallelogram {s + u*omega : s, u in [-1/2, 1/2)}.
    std::pair<ExactPoint, QuadInt> reduce_mod_lattice(ExactPoint const& p) const;

    /// Representatives of O_D / cO_D.
    std::vector<QuadInt> residues(QuadInt const& c) const;

    Mat2 mul(Mat2 const& x, Mat2 const& y) const;
    QuadInt det(Mat2 const& m) const { return mul(m.a, m.d) - mul(m.b, m.c); }
    /// Inverse up to a unit scalar (the adjugate).
    Mat2 adjugate(Mat2 const& m) const { return {m.d, -m.b, -m.c, m.a}; }
    /// Projective normal form: the unit multiple whose entries are
    /// lexicographically largest.
    Mat2 normalize(Mat2 const& m) const;
    bool is_scalar(Mat2 const& m) const;
    bool projectively_equal(Mat2 const& x, Mat2 const& y) const;
    Mat2 identity() const { return {1, 0, 0, 1}; }
    /// Action on a boundary point; nullopt when the point maps to infinity.
    std::optional<ExactPoint> apply(Mat2 const& m, ExactPoint const& z) const;

    friend bool operator==(Order const& x, Order const& y) { return x.D_ == y.D_; }

private:
    Order(long D, long T, long N) : D_(D), T_(T), N_(N) {}
    long D_;
    long T_;
    long N_;
};

}  // namespace bianchi

#endif
