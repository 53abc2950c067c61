#include "bianchi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bianchi {

namespace {

// a x + b y + c >= 0
struct Halfplane {
    Rational a;
    Rational b;
    Rational c;

    Rational eval(ExactPoint const& p) const { return a * p.x + b * p.y + c; }
};

std::vector<ExactPoint> clip(std::vector<ExactPoint> const& poly, Halfplane const& hp)
{
    std::vector<ExactPoint> out;
    size_t n = poly.size();
    if (n == 0) return out;
    std::vector<Rational> f(n);
    bool all_in = true;
    for (size_t i = 0; i < n; ++i) {
        f[i] = hp.eval(poly[i]);
        if (f[i] < 0) all_in = false;
    }
    if (all_in) return poly;
    out.reserve(n + 1);
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        if (f[i] >= 0) out.push_back(poly[i]);
        if ((f[i] > 0 && f[j] < 0) || (f[i] < 0 && f[j] > 0)) {
            Rational t = f[i] / (f[i] - f[j]);
            out.push_back({poly[i].x + t * (poly[j].x - poly[i].x), poly[i].y + t * (poly[j].y - poly[i].y)});
        }
    }
    return out;
}

Rational cross(ExactPoint const& o, ExactPoint const& p, ExactPoint const& q)
{
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
}

// Drops repeated and collinear vertices.
std::vector<ExactPoint> simplify(std::vector<ExactPoint> poly)
{
    bool changed = true;
    while (changed && poly.size() >= 2) {
        changed = false;
        size_t n = poly.size();
        for (size_t i = 0; i < n; ++i) {
            ExactPoint const& prev = poly[(i + n - 1) % n];
            ExactPoint const& next = poly[(i + 1) % n];
            if (poly[i] == next || cross(prev, poly[i], next) == 0) {
                poly.erase(poly.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (poly.size() < 3) poly.clear();
    return poly;
}

Halfplane bisector(Order const& O, Hemisphere const& A, Hemisphere const& T)
{
    Rational absD = O.abs_discriminant();
    return {2 * (A.center.x - T.center.x), 2 * absD * (A.center.y - T.center.y),
            (A.radius_sq - O.norm(A.center)) - (T.radius_sq - O.norm(T.center))};
}

// Rotation so that the lexicographically smallest vertex comes first.
void rotate_to_min(std::vector<ExactPoint>& poly)
{
    if (poly.empty()) return;
    auto it = std::min_element(poly.begin(), poly.end());
    std::rotate(poly.begin(), it, poly.end());
}

}  // namespace

Rational polygon_area(Order const&, std::vector<ExactPoint> const& poly)
{
    Rational twice = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        twice += poly[i].x * poly[j].y - poly[j].x * poly[i].y;
    }
    return twice / 2;
}

std::vector<ExactPoint> clip_convex(std::vector<ExactPoint> const& subject, std::vector<ExactPoint> const& cell)
{
    std::vector<ExactPoint> poly = subject;
    size_t n = cell.size();
    for (size_t i = 0; i < n && !poly.empty(); ++i) {
        ExactPoint const& p = cell[i];
        ExactPoint const& q = cell[(i + 1) % n];
        // left of p -> q
        Halfplane hp{-(q.y - p.y), q.x - p.x, 0};
        hp.c = -(hp.a * p.x + hp.b * p.y);
        poly = clip(poly, hp);
    }
    return simplify(std::move(poly));
}

PowerCell power_cell(Order const& O, Hemisphere const& sphere, std::span<Hemisphere const> candidates)
{
    PowerCell cell;
    cell.sphere = sphere;
    cell.area = 0;

    Rational R = 1;
    while (R * R / 4 >= sphere.radius_sq) R /= 2;
    long root = static_cast<long>(std::floor(std::sqrt(static_cast<double>(O.abs_discriminant()))));
    while ((root + 1) * (root + 1) <= O.abs_discriminant()) ++root;
    while (root * root > O.abs_discriminant()) --root;
    Rational Ry = R / root;
    ExactPoint const& c = sphere.center;
    std::vector<ExactPoint> poly{{c.x - R, c.y - Ry}, {c.x + R, c.y - Ry}, {c.x + R, c.y + Ry}, {c.x - R, c.y + Ry}};

    std::vector<Hemisphere const*> order;
    order.reserve(candidates.size());
    for (auto const& t : candidates) {
        if (t.center != sphere.center) order.push_back(&t);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](Hemisphere const* x, Hemisphere const* y) { return x->radius_sq > y->radius_sq; });
    for (auto const* t : order) {
        poly = clip(poly, bisector(O, sphere, *t));
        if (poly.empty()) return cell;
    }
    poly = simplify(std::move(poly));
    if (poly.empty()) return cell;
    rotate_to_min(poly);

    cell.vertices = poly;
    cell.area = polygon_area(O, poly);
    for (auto const& v : poly) cell.heights.push_back(height_at(O, sphere, v));

    // Neighbor across each edge: among spheres level with this one at the
    // edge midpoint, the one rising fastest across the edge.
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        ExactPoint const& p = poly[i];
        ExactPoint const& q = poly[(i + 1) % n];
        ExactPoint m{(p.x + q.x) / 2, (p.y + q.y) / 2};
        Rational ex = q.x - p.x;
        Rational ey = q.y - p.y;
        Rational level = height_at(O, sphere, m);
        Hemisphere const* best = nullptr;
        Rational best_score;
        for (auto const* t : order) {
            if (height_at(O, *t, m) != level) continue;
            Rational score = (t->center.x - m.x) * ey - (t->center.y - m.y) * ex;
            if (!best || score > best_score) {
                best = t;
                best_score = score;
            }
        }
        if (best) {
            cell.neighbors.push_back(*best);
        } else {
            Hemisphere none;
            none.c = 0;
            cell.neighbors.push_back(none);
        }
    }
    return cell;
}

EnvelopeComplex upper_envelope(Order const& O, std::span<Hemisphere const> hemispheres,
                               std::vector<ExactPoint> const& cell)
{
    if (hemispheres.empty()) throw std::invalid_argument("upper_envelope: no hemispheres");
    EnvelopeComplex env;
    env.cell = cell;
    env.cell_area = polygon_area(O, cell);

    double sqrtD = std::sqrt(static_cast<double>(O.abs_discriminant()));
    std::vector<double> cx, cy, rr;
    for (auto const& h : hemispheres) {
        cx.push_back(h.center.x.get_d());
        cy.push_back(h.center.y.get_d());
        rr.push_back(std::sqrt(h.radius_sq.get_d()));
    }

    std::vector<std::pair<Hemisphere, std::vector<ExactPoint>>> pieces;
    for (size_t i = 0; i < hemispheres.size(); ++i) {
        std::vector<Hemisphere> cand;
        for (size_t j = 0; j < hemispheres.size(); ++j) {
            double dx = cx[i] - cx[j];
            double dy = (cy[i] - cy[j]) * sqrtD;
            double reach = 2 * rr[i] + rr[j] + 1e-9;
            if (dx * dx + dy * dy <= reach * reach) cand.push_back(hemispheres[j]);
        }
        PowerCell pc = power_cell(O, hemispheres[i], cand);
        if (pc.vertices.empty()) continue;
        auto piece = clip_convex(pc.vertices, cell);
        if (piece.empty() || polygon_area(O, piece) == 0) continue;
        rotate_to_min(piece);
        pieces.emplace_back(hemispheres[i], std::move(piece));
    }
    std::sort(pieces.begin(), pieces.end(),
              [](auto const& x, auto const& y) { return x.second.front() < y.second.front(); });

    std::map<ExactPoint, size_t> vindex;
    auto vertex_id = [&](ExactPoint const& p, Hemisphere const& h) {
        auto [it, inserted] = vindex.emplace(p, env.vertices.size());
        if (inserted) env.vertices.push_back({p, height_at(O, h, p)});
        return it->second;
    };
    auto wall_of = [&](ExactPoint const& p, ExactPoint const& q) -> long {
        for (size_t w = 0; w < cell.size(); ++w) {
            ExactPoint const& a = cell[w];
            ExactPoint const& b = cell[(w + 1) % cell.size()];
            if (cross(a, b, p) == 0 && cross(a, b, q) == 0) return static_cast<long>(w);
        }
        return -1;
    };

    std::map<std::pair<size_t, size_t>, size_t> eindex;
    for (size_t f = 0; f < pieces.size(); ++f) {
        auto const& [h, poly] = pieces[f];
        EnvelopeFace face;
        face.sphere = h;
        face.area = polygon_area(O, poly);
        for (auto const& p : poly) face.vertices.push_back(vertex_id(p, h));
        size_t n = poly.size();
        for (size_t k = 0; k < n; ++k) {
            size_t a = face.vertices[k];
            size_t b = face.vertices[(k + 1) % n];
            auto key = std::minmax(a, b);
            auto [it, inserted] = eindex.emplace(key, env.edges.size());
            if (inserted) env.edges.push_back({key.first, key.second, {}});
            env.edges[it->second].faces.push_back(static_cast<long>(f));
            if (inserted) {
                long w = wall_of(poly[k], poly[(k + 1) % n]);
                if (w >= 0) env.edges[it->second].faces.push_back(-1 - w);
            }
        }
        env.faces.push_back(std::move(face));
    }
    return env;
}

}  // namespace bianchi
