#ifndef BIANCHI_CLASSFORMS_HPP
#define BIANCHI_CLASSFORMS_HPP

#include "bianchi/arithmetic.hpp"

#include <vector>

namespace bianchi {

/// The binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long a;
    long b;
    long c;

    long discriminant() const { return b * b - 4 * a * c; }
    /// Fixed by the inversion (a, b, c) -> (a, -b, c) on classes.
    bool is_ambiguous() const { return b == 0 || b == a || a == c; }
    friend bool operator==(QuadForm const&, QuadForm const&) = default;
};

/// A cusp p/q of P^1(Q(sqrt D)); (1, 0) is infinity.
struct CuspRep {
    QuadInt p;
    QuadInt q;
    size_t ideal_class_tag = 0;
};

/// All reduced primitive forms of discriminant D, sorted by (a, b).
std::vector<QuadForm> reduced_forms(Order const& O);

long class_number(Order const& O);

/// (number of distinct primes dividing D) - 1.
long genus_rank(Order const& O);

/// log2 of the number of ambiguous reduced forms: the 2-rank of the class group.
long ambiguous_two_rank(Order const& O);

/// The ideal of O_D attached to a reduced form: (a, (-b + sqrt D)/2).
std::vector<QuadInt> form_ideal(Order const& O, QuadForm const& f);

/// One cusp per ideal class; the first is infinity.
std::vector<CuspRep> cusp_representatives(Order const& O);

/// True when the ideals (p1, q1) and (p2, q2) lie in the same class.
bool same_ideal_class(Order const& O, QuadInt const& p1, QuadInt const& q1, QuadInt const& p2, QuadInt const& q2);

/// True when the ideal spanned by the given generators is principal.
bool is_principal(Order const& O, std::vector<QuadInt> const& gens);

/// Cusp coordinates (p, q) with z = p/q for a point of Q(sqrt D).
std::pair<QuadInt, QuadInt> cusp_of_point(Order const& O, ExactPoint const& z);

/// Index into cusp_representatives of the class of the cusp (p, q).
size_t ideal_class_of(Order const& O, std::vector<CuspRep> const& reps, QuadInt const& p, QuadInt const& q);

}  // namespace bianchi

#endif
