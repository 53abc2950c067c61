#ifndef BIANCHI_EXPORT_HPP
#define BIANCHI_EXPORT_HPP

#include "bianchi/poincare.hpp"

#include <string>
#include <vector>

namespace bianchi {

/// Serializable snapshot of a computed domain.  Rationals are written as
/// "num/den" strings and elements of O_D as ["a", "b"] (a + b*omega).
struct DomainRecord {
    struct Face {
        QuadInt c;
        QuadInt d;
        ExactPoint center;
        Rational radius_sq;
        std::vector<ExactPoint> vertices;
        std::vector<Rational> heights;
        Rational area;
    };
    struct Pairing {
        size_t source = 0;
        size_t target = 0;
        Mat2 element;
    };
    struct Cycle {
        std::vector<EdgeState> edges;
        int order = 1;
        Mat2 transform;
        /// Signed 1-based generator indices.
        std::vector<int> word;
    };

    long D = 0;
    GroupMode mode = GroupMode::PSL;
    Rational certified_radius_sq;
    std::vector<ExactPoint> cell;
    std::vector<Face> faces;
    std::vector<EnvelopeVertex> vertices;
    std::vector<ExactPoint> ideal_vertices;
    std::vector<Pairing> pairings;
    std::vector<Cycle> cycles;
    size_t cusp_count = 0;
};

DomainRecord make_record(FordDomain const& ford, PoincareData const& data, CuspOrbits const& cusps);

std::string domain_json(DomainRecord const& record);
/// Throws std::invalid_argument on malformed input.
DomainRecord parse_domain_json(std::string const& text);

/// The envelope over the fundamental cell: faces shaded by norm(c), ideal
/// vertices marked, cell boundary drawn.  400 px per unit, y axis up.
std::string domain_svg(FordDomain const& ford);

}  // namespace bianchi

#endif
