#ifndef BIANCHI_GEOMETRY_HPP
#define BIANCHI_GEOMETRY_HPP

#include "bianchi/arithmetic.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bianchi {

enum class GroupMode { PGL, PSL };

std::string to_string(GroupMode mode);
/// Accepts "pgl" / "psl" (any case).
GroupMode parse_group_mode(std::string const& text);

/// The element z -> zeta^rot * z + shift of the stabilizer of infinity.
struct StabElem {
    int rot = 0;
    QuadInt shift;
    friend bool operator==(StabElem const&, StabElem const&) = default;
};

/// Stabilizer of infinity: translations by O_D and a rotation of order
/// rotation_order about 0, together with a fundamental cell for its action on C.
class InfStabilizer {
public:
    InfStabilizer(Order const& O, GroupMode mode);

    Order const& order() const { return O_; }
    GroupMode mode() const { return mode_; }
    int rotation_order() const { return rotation_order_; }
    /// Multiplier zeta of the generating rotation.
    QuadInt const& zeta() const { return zeta_; }
    QuadInt zeta_pow(int k) const;

    /// Fundamental cell, counter-clockwise, convex.
    std::vector<ExactPoint> const& cell() const { return cell_; }
    Rational cell_area() const;

    ExactPoint apply(StabElem const& g, ExactPoint const& p) const;
    StabElem compose(StabElem const& outer, StabElem const& inner) const;
    StabElem inverse(StabElem const& g) const;
    Mat2 matrix(StabElem const& g) const;
    /// Decodes an upper-triangular group element; nullopt if it is not in the stabilizer.
    std::optional<StabElem> from_matrix(Mat2 const& m) const;

    /// Canonical point of the orbit of p and the element taking p there.
    std::pair<ExactPoint, StabElem> canonical(ExactPoint const& p) const;
    /// Every g with g(p) in the half-open lattice parallelogram (one per rotation).
    std::vector<StabElem> to_parallelogram(ExactPoint const& p) const;
    /// Elements of the stabilizer fixing p.
    std::vector<StabElem> fixing(ExactPoint const& p) const;

private:
    Order O_;
    GroupMode mode_;
    int rotation_order_ = 1;
    QuadInt unit_;  // u with zeta = u (PGL) or u^2 (PSL)
    QuadInt zeta_;
    std::vector<ExactPoint> cell_;
};

/// Isometric sphere S(c, d): center d/c, radius^2 = 1/norm(c).
struct Hemisphere {
    QuadInt c;
    QuadInt d;
    ExactPoint center;
    Rational radius_sq;

    Integer norm_c() const { return radius_sq.get_den(); }
};

/// Builds S(c, d) with (c, d) normalized by a unit; requires c != 0 and
/// coprime (c, d).
Hemisphere make_hemisphere(Order const& O, QuadInt const& c, QuadInt const& d);
Hemisphere apply(InfStabilizer const& stab, StabElem const& g, Hemisphere const& h);

/// Squared height of h above p; negative outside the disk.
Rational height_at(Order const& O, Hemisphere const& h, ExactPoint const& p);

/// Nonzero elements of O_D, one per unit class, with lo < norm <= hi.
std::vector<QuadInt> elements_by_norm(Order const& O, Integer const& lo, Integer const& hi);

/// All isometric spheres with norm(c) <= max_norm, organized by lattice
/// translation class.
class HemisphereCatalog {
public:
    HemisphereCatalog(Order const& O, Integer max_norm);

    Integer const& max_norm() const { return max_norm_; }
    /// One sphere per translation class, center in the half-open parallelogram.
    std::vector<Hemisphere> const& base() const { return base_; }
    /// Every translate whose closed disk meets the box [x0, x1] x [y0, y1]
    /// (plane coordinates).  May contain a few extra spheres.
    std::vector<Hemisphere> meeting_box(double x0, double x1, double y0, double y1) const;

private:
    Order O_;
    Integer max_norm_;
    std::vector<Hemisphere> base_;
    std::vector<double> base_x_;
    std::vector<double> base_y_;
    std::vector<double> base_r_;
};

/// A convex polygon of the upper envelope: the region where one sphere is highest.
struct PowerCell {
    Hemisphere sphere;
    std::vector<ExactPoint> vertices;      // counter-clockwise
    std::vector<Rational> heights;         // height^2 at each vertex
    std::vector<Hemisphere> neighbors;     // across edge vertices[i] -> vertices[i+1]
    Rational area;
};

/// Exact cell of `sphere` in the power diagram of `candidates` (the sphere
/// itself may be among them).  Empty vertices when the sphere is hidden.
PowerCell power_cell(Order const& O, Hemisphere const& sphere, std::span<Hemisphere const> candidates);

Rational polygon_area(Order const& O, std::vector<ExactPoint> const& poly);
std::vector<ExactPoint> clip_convex(std::vector<ExactPoint> const& subject, std::vector<ExactPoint> const& clip);

struct EnvelopeVertex {
    ExactPoint point;
    Rational height_sq;
};

/// Face ids >= 0 index EnvelopeComplex::faces; wall w is encoded as -1 - w.
struct EnvelopeEdge {
    size_t v0;
    size_t v1;
    std::vector<long> faces;
};

struct EnvelopeFace {
    Hemisphere sphere;
    long orbit = -1;               // index into FordDomain::faces, if known
    std::vector<size_t> vertices;  // counter-clockwise
    Rational area;
};

/// The floor of the Ford domain over the fundamental cell.
struct EnvelopeComplex {
    std::vector<ExactPoint> cell;
    std::vector<EnvelopeVertex> vertices;
    std::vector<EnvelopeEdge> edges;
    std::vector<EnvelopeFace> faces;

    Rational cell_area;
    size_t wall_count() const { return cell.size(); }
};

/// Upper envelope of the hemispheres clipped to the convex cell.  Throws
/// std::invalid_argument on empty input.
EnvelopeComplex upper_envelope(Order const& O, std::span<Hemisphere const> hemispheres,
                               std::vector<ExactPoint> const& cell);

struct SwanViolation {
    ExactPoint vertex;
    Rational height_sq;
    /// The sphere strictly covering the vertex; empty for a vertex below the
    /// floor (a gap in the current sphere set).
    std::optional<Hemisphere> cover;
};

struct SwanResult {
    bool pass = true;
    std::vector<SwanViolation> violations;
};

/// Completeness test: no sphere with radius^2 <= next_radius_sq (and
/// norm(c) <= norm_cap) strictly covers a vertex.  Vertices with negative
/// height^2 are reported as uncovered holes.
SwanResult swan_check(Order const& O, std::span<EnvelopeVertex const> vertices, Rational const& next_radius_sq,
                      Integer const& norm_cap);

struct FordOptions {
    /// Largest norm(c) the refinement may reach; defaults to 10 |D|.
    std::optional<Integer> max_norm;
    /// Extra halvings of the radius threshold after certification.
    int extra_refinements = 0;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
};

class ResourceCapError : public std::runtime_error {
public:
    ResourceCapError(std::string const& what, ExactPoint vertex, Rational height_sq)
        : std::runtime_error(what), vertex_(std::move(vertex)), height_sq_(std::move(height_sq))
    {
    }
    ExactPoint const& vertex() const { return vertex_; }
    Rational const& height_sq() const { return height_sq_; }

private:
    ExactPoint vertex_;
    Rational height_sq_;
};

struct FordDomain {
    Order order;
    GroupMode mode;
    InfStabilizer stabilizer;
    HemisphereCatalog catalog;
    /// Every sphere with radius^2 >= certified_radius_sq was used.
    Rational certified_radius_sq;
    /// One cell per orbit of faces under the stabilizer; sphere centers canonical.
    std::vector<PowerCell> faces;
    EnvelopeComplex complex;
    /// Canonical height-0 vertices (finite cusps of the polyhedron).
    std::vector<ExactPoint> ideal_vertices;

    /// Index into faces for a sphere in canonical position, else -1.
    long face_index(ExactPoint const& canonical_center) const;
    std::map<ExactPoint, size_t> face_lookup;
};

InfStabilizer stabilizer_infinity(Order const& O, GroupMode mode);

/// Spheres from the catalog whose disks meet the box around the cell, i.e.
/// every sphere that can appear in the envelope over the cell.
std::vector<Hemisphere> enumerate_hemispheres(Order const& O, Rational const& min_radius_sq,
                                              std::vector<ExactPoint> const& cell);

/// Iterative driver: halves the radius threshold until the Swan check passes.
FordDomain ford_domain(Order const& O, GroupMode mode, FordOptions const& options = {});

}  // namespace bianchi

#endif
