// Structural checks shared by the property tests and the acceptance run.
// Each returns a list of human-readable failures (empty on success).
#ifndef BIANCHI_TESTS_CHECKS_HPP
#define BIANCHI_TESTS_CHECKS_HPP

#include "bianchi/classforms.hpp"
#include "bianchi/homology.hpp"
#include "bianchi/poincare.hpp"
#include "oracles.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace checks {

using namespace bianchi;
using Failures = std::vector<std::string>;

inline std::vector<long> const kSurvey = {-3,  -4,  -7,  -8,  -11, -15, -19, -20, -23, -24, -31,
                                          -35, -39, -40, -43, -47, -51, -52, -55, -56, -59, -67,
                                          -68, -71, -79, -83, -84, -87, -88, -91, -95};

struct Computed {
    FordDomain ford;
    PoincareData data;
};

inline Computed const& get(long D, GroupMode mode)
{
    static std::map<std::pair<long, GroupMode>, Computed> cache;
    auto key = std::pair{D, mode};
    auto it = cache.find(key);
    if (it == cache.end()) {
        FordDomain ford = ford_domain(Order::make(D), mode);
        PoincareData data = build_presentation(ford);
        it = cache.emplace(key, Computed{std::move(ford), std::move(data)}).first;
    }
    return it->second;
}

template <class... T>
std::string str(T const&... parts)
{
    std::ostringstream s;
    (s << ... << parts);
    return s.str();
}

inline ExactPoint centroid(EnvelopeComplex const& env, EnvelopeFace const& f)
{
    ExactPoint s{0, 0};
    for (size_t v : f.vertices) s = s + env.vertices[v].point;
    s.x /= static_cast<long>(f.vertices.size());
    s.y /= static_cast<long>(f.vertices.size());
    return s;
}

// Heights exact and non-negative, faces tile the cell, every edge has two sides.
inline Failures geometry(FordDomain const& ford)
{
    Failures out;
    Order const& O = ford.order;
    auto const& env = ford.complex;
    for (auto const& f : env.faces) {
        for (size_t v : f.vertices) {
            auto const& vx = env.vertices[v];
            if (vx.height_sq < 0) out.push_back(str("negative height at ", vx.point));
            if (height_at(O, f.sphere, vx.point) != vx.height_sq) out.push_back(str("inconsistent height at ", vx.point));
        }
    }
    for (auto const& f : ford.faces) {
        for (size_t k = 0; k < f.vertices.size(); ++k) {
            if (height_at(O, f.sphere, f.vertices[k]) != f.heights[k]) {
                out.push_back(str("face vertex height mismatch at ", f.vertices[k]));
            }
        }
    }
    Rational total = 0;
    for (auto const& f : env.faces) {
        if (f.area <= 0) out.push_back(str("degenerate face at ", f.sphere.center));
        total += f.area;
    }
    if (total != env.cell_area) out.push_back(str("face areas sum to ", total, ", cell area ", env.cell_area));
    if (env.cell_area != ford.stabilizer.cell_area()) out.push_back("cell area differs from stabilizer cell");
    for (auto const& e : env.edges) {
        size_t walls = 0;
        for (long f : e.faces) walls += f < 0;
        if (e.faces.size() != 2 || walls > 1) out.push_back(str("edge ", e.v0, "-", e.v1, " has ", e.faces.size(), " sides"));
    }
    return out;
}

// The face sphere is highest at an interior point of each face.
inline Failures domination(FordDomain const& ford)
{
    Failures out;
    Order const& O = ford.order;
    auto const& env = ford.complex;
    auto spheres = enumerate_hemispheres(O, ford.certified_radius_sq / 2, env.cell);
    for (auto const& f : env.faces) {
        ExactPoint p = centroid(env, f);
        Rational top = height_at(O, f.sphere, p);
        if (top <= 0) out.push_back(str("face at ", f.sphere.center, " is not above the floor"));
        for (auto const& h : spheres) {
            if (height_at(O, h, p) > top) out.push_back(str("sphere ", h.center, " rises above face ", f.sphere.center));
        }
    }
    return out;
}

inline Failures ideal_vertices(FordDomain const& ford)
{
    Failures out;
    Order const& O = ford.order;
    auto reps = cusp_representatives(O);
    for (auto const& p : ford.ideal_vertices) {
        auto [pp, qq] = cusp_of_point(O, p);
        if (qq.is_zero()) out.push_back(str("ideal vertex ", p, " is infinity"));
        if (ideal_class_of(O, reps, pp, qq) >= reps.size()) out.push_back(str("ideal vertex ", p, " has no class"));
    }
    return out;
}

// Pairing then reverse pairing is a stabilizer element fixing the face and
// permuting its vertices.
inline Failures pairings(FordDomain const& ford, std::vector<FacePairing> const& pairings)
{
    Failures out;
    Order const& O = ford.order;
    auto const& stab = ford.stabilizer;
    if (pairings.size() != ford.faces.size()) out.push_back("not every face is paired");
    for (auto const& p : pairings) {
        auto const& back = pairings[p.target];
        if (back.target != p.source) out.push_back(str("pairing ", p.source, " -> ", p.target, " is not involutive"));
        auto const& face = ford.faces[p.source];
        Mat2 round = O.mul(back.element, p.element);
        if (!O.projectively_equal(round, stab.matrix(p.correction))) out.push_back(str("bad correction on ", p.source));
        if (stab.apply(p.correction, face.sphere.center) != face.sphere.center) {
            out.push_back(str("correction moves face ", p.source));
        }
        std::set<std::pair<ExactPoint, Rational>> before, after;
        for (size_t k = 0; k < face.vertices.size(); ++k) {
            before.insert({face.vertices[k], face.heights[k]});
            after.insert(apply_upper(O, round, face.vertices[k], face.heights[k]));
        }
        if (before != after) out.push_back(str("face ", p.source, " vertices not restored"));
        if (!O.is_unit(O.det(p.element))) out.push_back(str("pairing ", p.source, " determinant is not a unit"));
        if (ford.mode == GroupMode::PSL && O.det(p.element) != QuadInt(1)) {
            out.push_back(str("pairing ", p.source, " determinant is not 1"));
        }
    }
    return out;
}

// Every face edge, up to the stabilizer of its face, lies in exactly one
// cycle, seen either directly or from the face on its other side.
inline Failures edge_partition(FordDomain const& ford, std::vector<EdgeCycle> const& cycles)
{
    Failures out;
    auto const& stab = ford.stabilizer;
    std::map<EdgeState, size_t> orbit;
    size_t orbits = 0;
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        auto const& f = ford.faces[i];
        auto fix = stab.fixing(f.sphere.center);
        for (auto const& n : f.neighbors) {
            if (orbit.count(EdgeState{i, n.center})) continue;
            for (auto const& g : fix) orbit.emplace(EdgeState{i, stab.apply(g, n.center)}, orbits);
            ++orbits;
        }
    }
    std::map<size_t, size_t> hits;
    size_t states = 0;
    for (auto const& cyc : cycles) {
        std::vector<EdgeState> all = cyc.states;
        all.insert(all.end(), cyc.mirror_states.begin(), cyc.mirror_states.end());
        for (auto const& s : all) {
            ++states;
            auto it = orbit.find(s);
            if (it == orbit.end()) {
                out.push_back(str("cycle state on face ", s.face, " toward ", s.other_center, " is not an edge"));
                continue;
            }
            ++hits[it->second];
        }
    }
    if (hits.size() != orbits) out.push_back(str(orbits - hits.size(), " edges in no cycle"));
    for (auto const& [id, n] : hits) {
        if (n != 1) out.push_back(str("edge orbit ", id, " lies in ", n, " cycle positions"));
    }
    if (states != orbits) out.push_back(str(states, " cycle states for ", orbits, " edges"));
    return out;
}

inline Failures cycles(Order const& O, std::vector<EdgeCycle> const& cycles)
{
    Failures out;
    for (auto const& cyc : cycles) {
        auto n = matrix_order(O, cyc.transform);
        if (!n || *n != cyc.order) out.push_back("cycle order differs from matrix order");
        double expected = 2 * std::numbers::pi / cyc.order;
        if (std::abs(cyc.angle_sum - expected) > 1e-9) {
            out.push_back(str("angle sum ", cyc.angle_sum, " for order ", cyc.order));
        }
    }
    return out;
}

inline Failures relators(Order const& O, Presentation const& p)
{
    Failures out;
    for (size_t i = 0; i < p.relators.size(); ++i) {
        auto const& r = p.relators[i];
        if (!O.is_scalar(evaluate(O, p, power(r.word, r.power)))) out.push_back(str("relator ", i, " is not scalar"));
    }
    for (size_t i = 0; i < p.generators.size(); ++i) {
        if (auto n = p.generators[i].order) {
            if (!O.is_scalar(evaluate(O, p, Word{{static_cast<int>(i), *n}}))) {
                out.push_back(str("generator ", p.generators[i].name, " does not have order ", *n));
            }
        }
    }
    for (auto const& w : p.torsion_words) {
        if (!matrix_order(O, evaluate(O, p, w))) out.push_back("torsion word of infinite order");
    }
    return out;
}

// One more halving of the radius threshold changes nothing.
inline Failures stability(long D, GroupMode mode, FordDomain const& base)
{
    Failures out;
    FordOptions fo;
    fo.extra_refinements = 1;
    FordDomain deeper = ford_domain(Order::make(D), mode, fo);
    if (deeper.certified_radius_sq != base.certified_radius_sq / 2) out.push_back("threshold was not halved");
    if (deeper.faces.size() != base.faces.size()) {
        out.push_back(str(deeper.faces.size(), " faces after refinement, ", base.faces.size(), " before"));
        return out;
    }
    for (size_t i = 0; i < base.faces.size(); ++i) {
        if (deeper.faces[i].sphere.center != base.faces[i].sphere.center ||
            deeper.faces[i].vertices != base.faces[i].vertices) {
            out.push_back(str("face ", i, " changed"));
        }
    }
    auto const& a = base.complex.vertices;
    auto const& b = deeper.complex.vertices;
    if (a.size() != b.size()) {
        out.push_back("vertex count changed");
        return out;
    }
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].point != b[i].point || a[i].height_sq != b[i].height_sq) out.push_back(str("vertex ", i, " changed"));
    }
    return out;
}

// Random small matrices against the determinantal-divisor oracle.
inline Failures smith_oracle(int trials, unsigned seed)
{
    Failures out;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> entry(-9, 9), dim_r(1, 4), dim_c(1, 5), sparse(0, 3);
    for (int t = 0; t < trials; ++t) {
        size_t r = static_cast<size_t>(dim_r(rng)), c = static_cast<size_t>(dim_c(rng));
        IntMatrix A(r, c);
        oracle::Matrix M(r, std::vector<Integer>(c));
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < c; ++j) {
                A(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
                M[i][j] = A(i, j);
            }
        }
        auto sf = smith_normal_form(A);
        if (sf.U * A * sf.V != sf.S) out.push_back(str("trial ", t, ": U A V != S"));
        auto expected = oracle::invariant_factors(M);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < c; ++j) {
                Integer want = i == j ? expected[i] : Integer(0);
                if (sf.S(i, j) != want) out.push_back(str("trial ", t, ": S(", i, ",", j, ") = ", sf.S(i, j)));
            }
        }
        auto unimodular = [](IntMatrix const& m) {
            oracle::Matrix x(m.rows(), std::vector<Integer>(m.cols()));
            for (size_t i = 0; i < m.rows(); ++i) {
                for (size_t j = 0; j < m.cols(); ++j) x[i][j] = m(i, j);
            }
            return abs(oracle::det(x)) == 1;
        };
        if (!unimodular(sf.U) || !unimodular(sf.V)) out.push_back(str("trial ", t, ": transform not unimodular"));
    }
    return out;
}

}  // namespace checks

#endif
