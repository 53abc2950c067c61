#include "bianchi/poincare.hpp"

#include "bianchi/classforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace bianchi {

namespace {

constexpr int kTranslation1 = 0;
constexpr int kTranslation2 = 1;
constexpr int kRotation = 2;

ExactPoint scale(ExactPoint const& p, Rational const& s) { return {p.x * s, p.y * s}; }

int face_base(InfStabilizer const& stab) { return stab.rotation_order() > 1 ? 3 : 2; }

void push_letter(Word& w, int gen, long exp)
{
    if (exp == 0) return;
    if (!w.empty() && w.back().gen == gen) {
        w.back().exp += static_cast<int>(exp);
        if (w.back().exp == 0) w.pop_back();
        return;
    }
    w.push_back({gen, static_cast<int>(exp)});
}

Word concat(std::initializer_list<Word const*> parts)
{
    Word out;
    for (auto const* p : parts) {
        for (auto const& l : *p) push_letter(out, l.gen, l.exp);
    }
    return out;
}

// z -> zeta^k z + s as t1^a t2^b r^k.
Word stab_word(StabElem const& g)
{
    Word w;
    push_letter(w, kTranslation1, g.shift.a.get_si());
    push_letter(w, kTranslation2, g.shift.b.get_si());
    push_letter(w, kRotation, g.rot);
    return w;
}

Mat2 mat_pow(Order const& O, Mat2 const& g, int n)
{
    Mat2 out = O.identity();
    Mat2 base = n >= 0 ? g : O.adjugate(g);
    for (int i = 0; i < std::abs(n); ++i) out = O.mul(out, base);
    return out;
}

struct Canonical {
    EdgeState state;
    StabElem gamma;
    Hemisphere other;
};

// Moves X to its canonical position, choosing among the elements that do so
// the one putting Y at the smallest center.
Canonical canonicalize(FordDomain const& ford, Hemisphere const& X, Hemisphere const& Y)
{
    InfStabilizer const& stab = ford.stabilizer;
    ExactPoint target = stab.canonical(X.center).first;
    long fi = ford.face_index(target);
    if (fi < 0) {
        std::ostringstream msg;
        msg << "unpaired face: sphere centered at " << target << " is not a face of the domain";
        throw std::logic_error(msg.str());
    }
    std::optional<Canonical> best;
    for (auto const& g : stab.to_parallelogram(X.center)) {
        if (stab.apply(g, X.center) != target) continue;
        Hemisphere y = apply(stab, g, Y);
        if (!best || y.center < best->other.center) best = Canonical{{static_cast<size_t>(fi), y.center}, g, y};
    }
    return *best;
}

// Interior dihedral angle of the region above both spheres along their intersection.
double dihedral(Order const& O, Hemisphere const& A, Hemisphere const& B)
{
    long double a = std::sqrt(static_cast<long double>(A.radius_sq.get_d()));
    long double b = std::sqrt(static_cast<long double>(B.radius_sq.get_d()));
    long double c = std::sqrt(static_cast<long double>(O.dist2(A.center, B.center).get_d()));
    long double s = (a + b + c) / 2;
    // Angle between the radii at an intersection point, opposite side c.
    long double phi = 2 * std::atan(std::sqrt(std::max<long double>(0, (s - a) * (s - b)) /
                                              std::max<long double>(1e-300L, s * (s - c))));
    return static_cast<double>(std::acos(-1.0L) - phi);
}

struct FaceEdges {
    std::map<ExactPoint, size_t> by_neighbor;
};

std::vector<FaceEdges> index_edges(FordDomain const& ford)
{
    std::vector<FaceEdges> out(ford.faces.size());
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        auto const& f = ford.faces[i];
        for (size_t k = 0; k < f.neighbors.size(); ++k) {
            if (f.neighbors[k].c.is_zero()) continue;
            out[i].by_neighbor.emplace(f.neighbors[k].center, k);
        }
    }
    return out;
}

}  // namespace

std::string to_string(RelatorKind kind)
{
    switch (kind) {
    case RelatorKind::Stabilizer: return "stabilizer";
    case RelatorKind::Pairing: return "pairing";
    case RelatorKind::FaceStabilizer: return "face-stabilizer";
    case RelatorKind::Cycle: return "cycle";
    }
    return "cycle";
}

std::optional<int> matrix_order(Order const& O, Mat2 const& g)
{
    Mat2 p = g;
    for (int n = 1; n <= 24; ++n) {
        if (O.is_scalar(p)) return n;
        p = O.mul(p, g);
    }
    return std::nullopt;
}

std::pair<ExactPoint, Rational> apply_upper(Order const& O, Mat2 const& g, ExactPoint const& z, Rational const& t2)
{
    ExactPoint a = O.to_point(g.a), b = O.to_point(g.b), c = O.to_point(g.c), d = O.to_point(g.d);
    ExactPoint czd = O.mul(c, z) + d;
    Rational den = O.norm(czd) + O.norm(c) * t2;
    ExactPoint num = O.mul(O.mul(a, z) + b, O.conj(czd)) + scale(O.mul(a, O.conj(c)), t2);
    return {scale(num, 1 / den), t2 / (den * den)};
}

Hemisphere sphere_of_row(Order const& O, QuadInt const& c, QuadInt const& dd) { return make_hemisphere(O, c, -dd); }

Mat2 face_element(Order const& O, Hemisphere const& h)
{
    auto bz = O.bezout(h.c, h.d);
    if (!bz) throw std::invalid_argument("face_element: (c, d) not coprime");
    QuadInt a0 = -bz->second;
    QuadInt b0 = -bz->first;
    // norm(a0 + l c) + norm(b0 - l d) is smallest near l*.
    ExactPoint pa = O.to_point(a0), pb = O.to_point(b0), pc = O.to_point(h.c), pd = O.to_point(h.d);
    ExactPoint lstar = scale(O.mul(pb, O.conj(pd)) - O.mul(pa, O.conj(pc)), 1 / (O.norm(pc) + O.norm(pd)));
    QuadInt mu = O.reduce_mod_lattice(lstar).second;
    std::optional<Mat2> best;
    Integer best_size;
    for (long i = -2; i <= 2; ++i) {
        for (long j = -2; j <= 2; ++j) {
            QuadInt l = mu + QuadInt(i, j);
            Mat2 m{a0 + O.mul(l, h.c), b0 - O.mul(l, h.d), h.c, -h.d};
            Integer size = O.norm(m.a) + O.norm(m.b);
            if (!best || size < best_size ||
                (size == best_size && std::tie(m.a.a, m.a.b, m.b.a, m.b.b) <
                                          std::tie(best->a.a, best->a.b, best->b.a, best->b.b))) {
                best = m;
                best_size = size;
            }
        }
    }
    return *best;
}

std::vector<FacePairing> pair_faces(FordDomain const& ford)
{
    Order const& O = ford.order;
    InfStabilizer const& stab = ford.stabilizer;
    std::vector<FacePairing> out;
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        auto const& face = ford.faces[i];
        Mat2 g = face_element(O, face.sphere);
        Hemisphere image = sphere_of_row(O, -g.c, g.a);
        auto [center, gamma] = stab.canonical(image.center);
        long j = ford.face_index(center);
        if (j < 0) {
            std::ostringstream msg;
            msg << "unpaired face " << i << ": image sphere centered at " << center << " is not a face";
            throw std::logic_error(msg.str());
        }
        Mat2 element = O.mul(stab.matrix(gamma), g);
        auto const& target = ford.faces[static_cast<size_t>(j)];
        for (size_t k = 0; k < face.vertices.size(); ++k) {
            auto [z, t2] = apply_upper(O, element, face.vertices[k], face.heights[k]);
            bool found = false;
            for (size_t m = 0; m < target.vertices.size() && !found; ++m) {
                found = target.vertices[m] == z && target.heights[m] == t2;
            }
            if (!found) {
                std::ostringstream msg;
                msg << "unpaired face " << i << ": vertex " << face.vertices[k] << " has no image vertex on face "
                    << j;
                throw std::logic_error(msg.str());
            }
        }
        out.push_back({i, static_cast<size_t>(j), O.normalize(element), {}});
    }
    for (auto& p : out) {
        Mat2 back = O.mul(out[p.target].element, p.element);
        auto corr = stab.from_matrix(back);
        if (!corr || stab.apply(*corr, ford.faces[p.source].sphere.center) != ford.faces[p.source].sphere.center) {
            throw std::logic_error("unpaired face " + std::to_string(p.source) + ": reverse pairing is not an inverse");
        }
        p.correction = *corr;
    }
    return out;
}

namespace {

struct Traversal {
    std::vector<EdgeState> states;
    Mat2 transform;
    Word word;
    double angle_sum = 0;
    bool flips = false;
    Word root;
};

Traversal traverse(FordDomain const& ford, std::vector<Mat2> const& gens, std::vector<FaceEdges> const& edges,
                   Canonical const& start, int base, size_t bound)
{
    Order const& O = ford.order;
    InfStabilizer const& stab = ford.stabilizer;
    using Vertex = std::pair<ExactPoint, Rational>;
    auto edge_index = [&](EdgeState const& s) {
        auto it = edges[s.face].by_neighbor.find(s.other_center);
        if (it == edges[s.face].by_neighbor.end()) {
            std::ostringstream msg;
            msg << "edge traversal reached a non-edge between face " << s.face << " and sphere at " << s.other_center;
            throw std::logic_error(msg.str());
        }
        return it->second;
    };
    auto vertex = [&](size_t face, size_t k) {
        auto const& f = ford.faces[face];
        k %= f.vertices.size();
        return Vertex{f.vertices[k], f.heights[k]};
    };
    size_t k0 = edge_index(start.state);
    Vertex p0 = vertex(start.state.face, k0);
    Vertex q0 = vertex(start.state.face, k0 + 1);

    Traversal t;
    t.transform = O.identity();
    Canonical cur = start;
    for (size_t step = 0;; ++step) {
        if (step > bound) throw std::logic_error("edge traversal did not close: corrupted pairing");
        size_t face = cur.state.face;
        size_t k = edge_index(cur.state);
        t.states.push_back(cur.state);
        t.angle_sum += dihedral(O, ford.faces[face].sphere, cur.other);

        // Apply the face's pairing; the edge lands on the image face, whose
        // other neighbor along that edge is the next state.
        Mat2 const& g = gens[face];
        Vertex p = vertex(face, k), q = vertex(face, k + 1);
        auto gp = apply_upper(O, g, p.first, p.second);
        auto gq = apply_upper(O, g, q.first, q.second);
        Hemisphere image = sphere_of_row(O, -g.c, g.a);
        ExactPoint target = stab.canonical(image.center).first;
        long j = ford.face_index(target);
        if (j < 0) throw std::logic_error("unpaired face " + std::to_string(face));
        auto const& f = ford.faces[static_cast<size_t>(j)];
        size_t n = f.vertices.size();
        std::optional<Canonical> next;
        for (auto const& gamma : stab.to_parallelogram(image.center)) {
            if (next) break;
            if (stab.apply(gamma, image.center) != target) continue;
            Mat2 m = stab.matrix(gamma);
            auto a = apply_upper(O, m, gp.first, gp.second);
            auto b = apply_upper(O, m, gq.first, gq.second);
            for (size_t e = 0; e < n; ++e) {
                Vertex u = vertex(static_cast<size_t>(j), e), v = vertex(static_cast<size_t>(j), e + 1);
                if ((u == a && v == b) || (u == b && v == a)) {
                    // The face across the image edge is applied next.
                    Canonical c = canonicalize(ford, f.neighbors[e], f.sphere);
                    c.gamma = stab.compose(c.gamma, gamma);
                    next = c;
                    break;
                }
            }
        }
        if (!next) {
            std::ostringstream msg;
            msg << "edge traversal: image of an edge of face " << face << " is not an edge of face " << j;
            throw std::logic_error(msg.str());
        }
        cur = *next;
        t.transform = O.mul(stab.matrix(cur.gamma), O.mul(g, t.transform));
        Word gw{{base + static_cast<int>(face), 1}};
        Word sw = stab_word(cur.gamma);
        t.word = concat({&sw, &gw, &t.word});

        if (cur.state == start.state) {
            auto z = apply_upper(O, t.transform, p0.first, p0.second);
            if (z == p0) break;
            if (z == q0 && !t.flips) {
                t.flips = true;
                t.root = t.word;
                continue;
            }
            throw std::logic_error("cycle transformation does not preserve its edge");
        }
    }
    if (!t.flips) t.root = t.word;
    t.transform = O.normalize(t.transform);
    return t;
}

}  // namespace

std::vector<EdgeCycle> edge_cycles(FordDomain const& ford, std::vector<FacePairing> const& pairings)
{
    Order const& O = ford.order;
    std::vector<Mat2> gens;
    for (auto const& f : ford.faces) gens.push_back(face_element(O, f.sphere));
    (void)pairings;
    auto edges = index_edges(ford);
    int base = face_base(ford.stabilizer);

    size_t total = 0;
    for (auto const& e : edges) total += e.by_neighbor.size();
    size_t bound = 4 * total + 8;

    std::map<EdgeState, size_t> owner;
    std::vector<EdgeCycle> out;
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        auto const& f = ford.faces[i];
        for (size_t k = 0; k < f.neighbors.size(); ++k) {
            if (f.neighbors[k].c.is_zero()) throw std::logic_error("face edge without a neighbor sphere");
            Canonical s0 = canonicalize(ford, f.sphere, f.neighbors[k]);
            if (owner.count(s0.state)) continue;
            Traversal t = traverse(ford, gens, edges, s0, base, bound);
            size_t id = out.size();
            for (auto const& s : t.states) owner.emplace(s, id);

            // The same edges seen from the other side.
            Canonical r0 = canonicalize(ford, f.neighbors[k], f.sphere);
            std::vector<EdgeState> mirror;
            if (!owner.count(r0.state)) {
                Traversal rt = traverse(ford, gens, edges, r0, base, bound);
                for (auto const& s : rt.states) {
                    auto [it, inserted] = owner.emplace(s, id);
                    if (!inserted && it->second != id) throw std::logic_error("edge lies in two cycles");
                    if (inserted) mirror.push_back(s);
                }
            } else if (owner.at(r0.state) != id) {
                throw std::logic_error("edge lies in two cycles");
            }

            auto n = matrix_order(O, t.transform);
            if (!n) throw std::logic_error("geometry inconsistency: edge cycle transformation has infinite order");
            EdgeCycle c;
            c.states = std::move(t.states);
            c.mirror_states = std::move(mirror);
            c.transform = t.transform;
            c.word = std::move(t.word);
            c.order = *n;
            c.angle_sum = t.angle_sum;
            c.flips_edge = t.flips;
            c.root_word = std::move(t.root);
            out.push_back(std::move(c));
        }
    }
    return out;
}

CuspOrbits cusp_orbits(FordDomain const& ford, std::vector<FacePairing> const& pairings)
{
    Order const& O = ford.order;
    InfStabilizer const& stab = ford.stabilizer;
    std::map<ExactPoint, size_t> id;
    for (auto const& v : ford.ideal_vertices) id.emplace(v, id.size());
    size_t inf = id.size();
    std::vector<size_t> parent(inf + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](size_t x, size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    auto node = [&](ExactPoint const& p) {
        auto it = id.find(stab.canonical(p).first);
        if (it == id.end()) {
            std::ostringstream msg;
            msg << "ideal vertex " << p << " is not a vertex of the domain";
            throw std::logic_error(msg.str());
        }
        return it->second;
    };

    for (auto const& pr : pairings) {
        auto const& f = ford.faces[pr.source];
        for (size_t k = 0; k < f.vertices.size(); ++k) {
            if (f.heights[k] != 0) continue;
            auto img = O.apply(pr.element, f.vertices[k]);
            unite(node(f.vertices[k]), img ? node(*img) : inf);
        }
    }

    auto reps = cusp_representatives(O);
    CuspOrbits out;
    out.ideal_class_tags.push_back(ideal_class_of(O, reps, 1, 0));
    std::vector<ExactPoint> by_id(inf);
    for (auto const& [p, i] : id) by_id[i] = p;
    std::set<size_t> roots;
    for (size_t i = 0; i <= inf; ++i) roots.insert(find(i));
    for (size_t r : roots) {
        if (r == find(inf)) continue;
        // Smallest member as representative.
        ExactPoint const* best = nullptr;
        for (size_t i = 0; i < inf; ++i) {
            if (find(i) == r && (!best || by_id[i] < *best)) best = &by_id[i];
        }
        auto [p, q] = cusp_of_point(O, *best);
        out.representatives.push_back(*best);
        out.ideal_class_tags.push_back(ideal_class_of(O, reps, p, q));
    }
    out.count = roots.size();
    return out;
}

std::vector<int> SingularSummary::all_orders() const
{
    std::set<int> s;
    for (auto const& [n, c] : cycle_orders) s.insert(n);
    for (auto const& [name, n] : finite_generators) s.insert(n);
    for (auto const& [n, c] : other_torsion_orders) s.insert(n);
    return {s.begin(), s.end()};
}

SingularSummary singular_summary(FordDomain const& ford, std::vector<EdgeCycle> const& cycles,
                                 Presentation const& presentation)
{
    Order const& O = ford.order;
    SingularSummary out;
    std::map<ExactPoint, std::set<size_t>> incident;
    auto edges = index_edges(ford);
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        auto const& c = cycles[ci];
        if (c.order < 2) continue;
        ++out.cycle_orders[c.order];
        for (auto const& s : c.states) {
            auto const& f = ford.faces[s.face];
            size_t k = edges[s.face].by_neighbor.at(s.other_center);
            for (size_t m : {k, (k + 1) % f.vertices.size()}) {
                if (f.heights[m] > 0) incident[ford.stabilizer.canonical(f.vertices[m]).first].insert(ci);
            }
        }
    }
    for (auto const& g : presentation.generators) {
        if (g.order && *g.order >= 2) out.finite_generators.emplace_back(g.name, *g.order);
    }
    for (auto const& w : presentation.torsion_words) {
        auto n = matrix_order(O, evaluate(O, presentation, w));
        if (n && *n >= 2) ++out.other_torsion_orders[*n];
    }
    for (auto const& [v, ids] : incident) {
        std::vector<int> orders;
        for (size_t ci : ids) orders.push_back(cycles[ci].order);
        std::sort(orders.begin(), orders.end());
        out.vertex_hints.emplace_back(v, std::move(orders));
    }
    return out;
}

Mat2 evaluate(Order const& O, Presentation const& p, Word const& w)
{
    Mat2 out = O.identity();
    for (auto const& l : w) out = O.mul(out, mat_pow(O, p.generators.at(static_cast<size_t>(l.gen)).matrix, l.exp));
    return out;
}

Word power(Word const& w, int n)
{
    Word out;
    Word base = n >= 0 ? w : inverse(w);
    for (int i = 0; i < std::abs(n); ++i) out = concat({&out, &base});
    return out;
}

Word inverse(Word const& w)
{
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) push_letter(out, it->gen, -it->exp);
    return out;
}

PoincareData build_presentation(FordDomain const& ford)
{
    Order const& O = ford.order;
    InfStabilizer const& stab = ford.stabilizer;
    PoincareData data;
    data.pairings = pair_faces(ford);
    data.cycles = edge_cycles(ford, data.pairings);

    Presentation& pres = data.presentation;
    pres.discriminant = O.discriminant();
    pres.mode = ford.mode;
    int r = stab.rotation_order();
    pres.generators.push_back({"t1", GeneratorKind::Translation, stab.matrix({0, 1}), -1, std::nullopt});
    pres.generators.push_back({"t2", GeneratorKind::Translation, stab.matrix({0, O.omega()}), -1, std::nullopt});
    if (r > 1) pres.generators.push_back({"r", GeneratorKind::Rotation, stab.matrix({1, 0}), -1, r});
    int base = face_base(stab);
    std::vector<Mat2> gens;
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        Mat2 g = face_element(O, ford.faces[i].sphere);
        gens.push_back(g);
        pres.generators.push_back(
            {"g" + std::to_string(i), GeneratorKind::Face, g, static_cast<long>(i), matrix_order(O, g)});
    }
    auto gen = [&](size_t face, int exp) { return Word{{base + static_cast<int>(face), exp}}; };

    // Stabilizer of infinity.
    pres.relators.push_back({{{kTranslation1, 1}, {kTranslation2, 1}, {kTranslation1, -1}, {kTranslation2, -1}},
                             1,
                             RelatorKind::Stabilizer});
    if (r > 1) {
        pres.relators.push_back({{{kRotation, 1}}, r, RelatorKind::Stabilizer});
        for (int j : {kTranslation1, kTranslation2}) {
            QuadInt basis = j == kTranslation1 ? QuadInt(1) : O.omega();
            Word image = stab_word({0, O.mul(stab.zeta(), basis)});
            Word conj{{kRotation, 1}, {j, 1}, {kRotation, -1}};
            Word inv = inverse(image);
            pres.relators.push_back({concat({&conj, &inv}), 1, RelatorKind::Stabilizer});
        }
    }

    // g_i^{-1} = gamma1 g_j gamma0.
    for (size_t i = 0; i < data.pairings.size(); ++i) {
        auto const& pr = data.pairings[i];
        Hemisphere image = sphere_of_row(O, -gens[i].c, gens[i].a);
        StabElem gamma0 = stab.canonical(image.center).second;
        Mat2 g1 = O.mul(O.adjugate(gens[i]), O.mul(stab.matrix(stab.inverse(gamma0)), O.adjugate(gens[pr.target])));
        auto gamma1 = stab.from_matrix(g1);
        if (!gamma1) throw std::logic_error("pairing relation outside the stabilizer of infinity");
        Word gi = gen(i, 1), gj = gen(pr.target, 1);
        Word w0 = stab_word(gamma0), w1 = stab_word(*gamma1);
        pres.relators.push_back({concat({&gi, &w1, &gj, &w0}), 1, RelatorKind::Pairing});
    }

    // g_i gamma g_i^{-1} lies in the stabilizer for gamma fixing the face center.
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        for (auto const& gamma : stab.fixing(ford.faces[i].sphere.center)) {
            if (gamma.rot == 0 && gamma.shift.is_zero()) continue;
            Mat2 m = O.mul(gens[i], O.mul(stab.matrix(gamma), O.adjugate(gens[i])));
            auto image = stab.from_matrix(m);
            if (!image) throw std::logic_error("face stabilizer conjugate outside the stabilizer of infinity");
            Word gi = gen(i, 1), gw = stab_word(gamma), gi_inv = gen(i, -1), iw = inverse(stab_word(*image));
            pres.relators.push_back({concat({&gi, &gw, &gi_inv, &iw}), 1, RelatorKind::FaceStabilizer});
        }
    }

    for (auto const& c : data.cycles) pres.relators.push_back({c.word, c.order, RelatorKind::Cycle});

    for (auto const& rel : pres.relators) {
        if (!O.is_scalar(mat_pow(O, evaluate(O, pres, rel.word), rel.power))) {
            throw std::logic_error("relator of kind " + to_string(rel.kind) + " is not scalar");
        }
    }

    // Torsion beyond cycle roots and generators.
    std::set<std::vector<std::pair<int, int>>> seen;
    auto add_torsion = [&](Word const& w) {
        if (w.empty()) return;
        std::vector<std::pair<int, int>> key;
        for (auto const& l : w) key.emplace_back(l.gen, l.exp);
        if (seen.insert(key).second) pres.torsion_words.push_back(w);
    };
    for (auto const& c : data.cycles) {
        if (c.flips_edge) add_torsion(c.root_word);
    }
    for (int k = 1; k < r; ++k) {
        for (QuadInt s : {QuadInt(0), QuadInt(1), O.omega()}) add_torsion(stab_word({k, s}));
    }
    for (size_t i = 0; i < ford.faces.size(); ++i) {
        Hemisphere image = sphere_of_row(O, -gens[i].c, gens[i].a);
        ExactPoint const& target = ford.faces[i].sphere.center;
        for (int k = 0; k < r; ++k) {
            ExactPoint rotated = O.mul(O.to_point(stab.zeta_pow(k)), image.center);
            QuadInt mu = O.reduce_mod_lattice(target - rotated).second;
            for (long a = -2; a <= 2; ++a) {
                for (long b = -2; b <= 2; ++b) {
                    StabElem gamma{k, mu + QuadInt(a, b)};
                    auto n = matrix_order(O, O.mul(stab.matrix(gamma), gens[i]));
                    if (!n || *n < 2) continue;
                    Word sw = stab_word(gamma), gi = gen(i, 1);
                    add_torsion(concat({&sw, &gi}));
                }
            }
        }
    }
    return data;
}

std::string format_presentation(Presentation const& p)
{
    std::ostringstream out;
    auto write_word = [&](Word const& w) {
        for (auto const& l : w) {
            int idx = l.exp > 0 ? l.gen + 1 : -(l.gen + 1);
            for (int i = 0; i < std::abs(l.exp); ++i) out << ' ' << idx;
        }
    };
    out << "group " << p.discriminant << ' ' << to_string(p.mode) << '\n';
    out << "gen";
    for (auto const& g : p.generators) {
        out << ' ' << g.name;
        if (g.order && *g.order >= 2) out << ':' << *g.order;
    }
    out << '\n';
    for (auto const& r : p.relators) {
        out << "rel";
        write_word(r.word);
        out << " ^ " << r.power << ' ' << to_string(r.kind) << '\n';
    }
    for (auto const& w : p.torsion_words) {
        out << "tor";
        write_word(w);
        out << '\n';
    }
    return out.str();
}

Presentation parse_presentation(std::string const& text)
{
    Presentation p;
    std::istringstream in(text);
    std::string line;
    bool have_gens = false, have_group = false;
    size_t lineno = 0;
    auto fail = [&](std::string const& why) {
        throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": " + why);
    };
    auto read_letter = [&](std::string const& tok, Word& w) {
        long v = 0;
        try {
            size_t used = 0;
            v = std::stol(tok, &used);
            if (used != tok.size()) fail("bad generator index '" + tok + "'");
        } catch (std::logic_error const&) {
            fail("bad generator index '" + tok + "'");
        }
        if (v == 0 || static_cast<size_t>(std::labs(v)) > p.generators.size()) fail("generator index out of range");
        push_letter(w, static_cast<int>(std::labs(v)) - 1, v > 0 ? 1 : -1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "group") {
            std::string mode;
            if (!(ls >> p.discriminant >> mode)) fail("expected 'group <D> <mode>'");
            p.mode = parse_group_mode(mode);
            have_group = true;
        } else if (head == "gen") {
            std::string name;
            while (ls >> name) {
                std::optional<int> order;
                if (auto colon = name.find(':'); colon != std::string::npos) {
                    try {
                        order = std::stoi(name.substr(colon + 1));
                    } catch (std::logic_error const&) {
                        fail("bad generator order in '" + name + "'");
                    }
                    name.erase(colon);
                }
                p.generators.push_back({name, GeneratorKind::Face, {}, -1, order});
            }
            have_gens = true;
        } else if (head == "rel") {
            if (!have_gens) fail("rel before gen");
            Relator r;
            std::string tok;
            bool closed = false;
            while (ls >> tok) {
                if (tok == "^") {
                    closed = true;
                    break;
                }
                read_letter(tok, r.word);
            }
            if (!closed || !(ls >> r.power) || r.power < 1) fail("expected '^ <n>' with n >= 1");
            std::string kind = "cycle";
            ls >> kind;
            if (kind == "stabilizer") r.kind = RelatorKind::Stabilizer;
            else if (kind == "pairing") r.kind = RelatorKind::Pairing;
            else if (kind == "face-stabilizer") r.kind = RelatorKind::FaceStabilizer;
            else if (kind == "cycle") r.kind = RelatorKind::Cycle;
            else fail("unknown relator kind '" + kind + "'");
            p.relators.push_back(std::move(r));
        } else if (head == "tor") {
            if (!have_gens) fail("tor before gen");
            Word w;
            std::string tok;
            while (ls >> tok) read_letter(tok, w);
            p.torsion_words.push_back(std::move(w));
        } else {
            fail("unknown directive '" + head + "'");
        }
    }
    if (!have_group) throw std::invalid_argument("presentation has no group line");
    if (!have_gens) throw std::invalid_argument("presentation has no gen line");
    for (auto& g : p.generators) {
        if (g.name == "t1" || g.name == "t2") g.kind = GeneratorKind::Translation;
        else if (g.name == "r") g.kind = GeneratorKind::Rotation;
    }
    return p;
}

}  // namespace bianchi
