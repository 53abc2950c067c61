#ifndef BIANCHI_HOMOLOGY_HPP
#define BIANCHI_HOMOLOGY_HPP

#include "bianchi/arithmetic.hpp"
#include "bianchi/poincare.hpp"

#include <string>
#include <vector>

namespace bianchi {

/// Dense integer matrix, row major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Integer& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    Integer const& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    friend IntMatrix operator*(IntMatrix const& x, IntMatrix const& y);
    friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Exact determinant of a square matrix (Bareiss).
Integer determinant(IntMatrix const& m);

struct SmithForm {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
};

/// S = U A V with U, V unimodular and S diagonal with d1 | d2 | ...,
/// all di >= 0.
SmithForm smith_normal_form(IntMatrix const& A);

struct AbelianInvariants {
    long free_rank = 0;
    /// Invariant factors >= 2, each dividing the next.
    std::vector<Integer> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(AbelianInvariants const&, AbelianInvariants const&) = default;
};

/// Z^k, Z/2, (Z/2)^2 + Z/3 ... ; "0" for the trivial group.
std::string to_string(AbelianInvariants const& inv);

/// Invariants of the cokernel of the map Z^rows -> Z^cols given by the rows of A.
AbelianInvariants cokernel_invariants(IntMatrix const& A);

/// Exponent-sum rows, one per relator (scaled by its power).
IntMatrix relation_matrix(Presentation const& p);

AbelianInvariants abelianization(Presentation const& p);

/// H_1 of the group modulo torsion: every cycle word with n >= 2, every
/// finite-order generator and every recorded torsion word is killed.
AbelianInvariants torsion_free_h1(Presentation const& p);

/// free_rank - (number of torus cusps): the cusps are spheres for D = -3, -4
/// and tori otherwise.  Throws std::logic_error when negative.
long cuspidal_defect(long D, AbelianInvariants const& psl, long cusp_count);

/// {"D": .., "mode": .., "rank": .., "torsion": [..]}
std::string invariants_json(long D, GroupMode mode, AbelianInvariants const& inv);

}  // namespace bianchi

#endif
