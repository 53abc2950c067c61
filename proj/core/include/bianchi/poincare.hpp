#ifndef BIANCHI_POINCARE_HPP
#define BIANCHI_POINCARE_HPP

#include "bianchi/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

/// generator^exp; generators are indexed from 0.
struct Letter {
    int gen;
    int exp;
    friend bool operator==(Letter const&, Letter const&) = default;
};
using Word = std::vector<Letter>;

enum class RelatorKind { Stabilizer, Pairing, FaceStabilizer, Cycle };
std::string to_string(RelatorKind kind);

/// word^power = 1
struct Relator {
    Word word;
    int power = 1;
    RelatorKind kind = RelatorKind::Cycle;
};

enum class GeneratorKind { Translation, Rotation, Face };

struct Generator {
    std::string name;
    GeneratorKind kind = GeneratorKind::Face;
    Mat2 matrix;
    long face = -1;
    /// Projective order when finite.
    std::optional<int> order;
};

struct Presentation {
    long discriminant = 0;
    GroupMode mode = GroupMode::PSL;
    std::vector<Generator> generators;
    std::vector<Relator> relators;
    /// Elements of finite order (besides cycle roots and finite-order
    /// generators) found among the stabilizer and pairing cosets.
    std::vector<Word> torsion_words;
};

/// Identification of face orbit `source` with face orbit `target`:
/// element(F_source) = F_target.  correction = target pairing composed
/// with this one, an element of the stabilizer of infinity fixing F_source.
struct FacePairing {
    size_t source;
    size_t target;
    Mat2 element;
    StabElem correction;
};

/// A state of the edge traversal: the edge between face orbit `face`
/// (sphere in canonical position) and the sphere centered at other_center.
struct EdgeState {
    size_t face;
    ExactPoint other_center;
    friend bool operator<(EdgeState const& x, EdgeState const& y)
    {
        if (x.face != y.face) return x.face < y.face;
        return x.other_center < y.other_center;
    }
    friend bool operator==(EdgeState const&, EdgeState const&) = default;
};

struct EdgeCycle {
    std::vector<EdgeState> states;
    /// The same edges seen from the faces on their other side.
    std::vector<EdgeState> mirror_states;
    Mat2 transform;
    Word word;
    /// Projective order of transform.
    int order = 1;
    /// Sum of dihedral angles over the states; 2 pi / order for a sound cycle.
    double angle_sum = 0;
    /// The traversal first came back to its edge reversed; root_word is
    /// the element flipping the edge and word = root_word^2.
    bool flips_edge = false;
    Word root_word;
};

/// Projective order n <= 24 of g, or nullopt for infinite order.
std::optional<int> matrix_order(Order const& O, Mat2 const& g);

/// Action on a point (z, t^2) of upper half-space for |det g| = 1.
std::pair<ExactPoint, Rational> apply_upper(Order const& O, Mat2 const& g, ExactPoint const& z, Rational const& t2);

/// Sphere whose center is -dd/c; the isometric sphere of a matrix with bottom row (c, dd).
Hemisphere sphere_of_row(Order const& O, QuadInt const& c, QuadInt const& dd);

/// Matrix [[a, b], [c, -d]] of determinant 1 with isometric sphere
/// h = S(c, d); among the completions, the one minimizing
/// norm(a) + norm(b), ties broken lexicographically.
Mat2 face_element(Order const& O, Hemisphere const& h);

/// Face pairings for every face orbit; throws std::logic_error("unpaired face ...").
std::vector<FacePairing> pair_faces(FordDomain const& ford);

/// Poincare edge cycles, one per orbit of edges.
std::vector<EdgeCycle> edge_cycles(FordDomain const& ford, std::vector<FacePairing> const& pairings);

struct CuspOrbits {
    /// Including infinity.
    size_t count = 0;
    /// One canonical finite ideal vertex per non-principal orbit.
    std::vector<ExactPoint> representatives;
    /// ideal_class_tags[0] is infinity's class; the rest follow representatives.
    std::vector<size_t> ideal_class_tags;
};

CuspOrbits cusp_orbits(FordDomain const& ford, std::vector<FacePairing> const& pairings);

struct SingularSummary {
    /// Number of edge cycles with each torsion order n >= 2.
    std::map<int, size_t> cycle_orders;
    /// Names and orders of finite-order generators.
    std::vector<std::pair<std::string, int>> finite_generators;
    /// Orders of elliptic pairing/stabilizer elements found beyond the cycles.
    std::map<int, size_t> other_torsion_orders;
    /// For each finite vertex incident to a torsion edge: orders of the cycles meeting it.
    std::vector<std::pair<ExactPoint, std::vector<int>>> vertex_hints;

    /// Every torsion order appearing anywhere above.
    std::vector<int> all_orders() const;
};

SingularSummary singular_summary(FordDomain const& ford, std::vector<EdgeCycle> const& cycles,
                                 Presentation const& presentation);

struct PoincareData {
    std::vector<FacePairing> pairings;
    std::vector<EdgeCycle> cycles;
    Presentation presentation;
};

/// Pairings, cycles and the presentation; every relator is checked to be
/// scalar (std::logic_error otherwise).
PoincareData build_presentation(FordDomain const& ford);

/// Product of generator matrices along the word.
Mat2 evaluate(Order const& O, Presentation const& p, Word const& w);
Word power(Word const& w, int n);
Word inverse(Word const& w);

/// Text format, one item per line ('#' starts a comment):
///   group <D> <pgl|psl>
///   gen <name>[:<order>] ...      (order given for finite-order generators)
///   rel <signed 1-based generator indices> ^ <n> <kind>
///   tor <signed 1-based generator indices>
/// A letter g^k is written as |k| copies of the index.
std::string format_presentation(Presentation const& p);
Presentation parse_presentation(std::string const& text);

}  // namespace bianchi

#endif
