#include "bianchi/geometry.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

namespace bianchi {

namespace {

double to_double(Rational const& q) { return q.get_d(); }

bool lex_greater(QuadInt const& x, QuadInt const& y) { return std::tie(x.a, x.b) > std::tie(y.a, y.b); }

QuadInt unit_normal(Order const& O, QuadInt const& x)
{
    QuadInt best = x;
    for (auto const& u : O.units()) {
        QuadInt cand = O.mul(u, x);
        if (lex_greater(cand, best)) best = cand;
    }
    return best;
}

}  // namespace

std::string to_string(GroupMode mode) { return mode == GroupMode::PGL ? "pgl" : "psl"; }

GroupMode parse_group_mode(std::string const& text)
{
    std::string t;
    for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (t == "pgl") return GroupMode::PGL;
    if (t == "psl") return GroupMode::PSL;
    throw std::invalid_argument("unknown group mode: " + text);
}

InfStabilizer::InfStabilizer(Order const& O, GroupMode mode) : O_(O), mode_(mode), unit_(1), zeta_(1)
{
    long D = O.discriminant();
    bool special = D == -3 || D == -4;
    if (mode == GroupMode::PGL) {
        unit_ = special ? O.omega() : QuadInt(-1);
        zeta_ = unit_;
        rotation_order_ = D == -3 ? 6 : (D == -4 ? 4 : 2);
    } else if (special) {
        unit_ = O.omega();
        zeta_ = O.mul(unit_, unit_);
        rotation_order_ = D == -3 ? 3 : 2;
    }

    // Cells in omega coordinates (s, u), p = s + u*omega.
    std::vector<std::pair<Rational, Rational>> su;
    Rational h(1, 2);
    Rational t(1, 3);
    switch (rotation_order_) {
    case 1: su = {{-h, -h}, {h, -h}, {h, h}, {-h, h}}; break;
    case 2: su = {{-h, 0}, {h, 0}, {h, h}, {-h, h}}; break;
    case 3: su = {{0, 0}, {t, t}, {0, 1}, {-t, 2 * t}}; break;
    case 4: su = {{0, 0}, {h, 0}, {h, h}, {0, h}}; break;
    case 6: su = {{0, 0}, {1, 0}, {t, t}}; break;
    default: throw std::logic_error("unexpected rotation order");
    }
    ExactPoint w = O.to_point(O.omega());
    for (auto const& [s, u] : su) cell_.push_back({s + u * w.x, u * w.y});
}

QuadInt InfStabilizer::zeta_pow(int k) const
{
    k = ((k % rotation_order_) + rotation_order_) % rotation_order_;
    QuadInt z = 1;
    for (int i = 0; i < k; ++i) z = O_.mul(z, zeta_);
    return z;
}

Rational InfStabilizer::cell_area() const { return polygon_area(O_, cell_); }

ExactPoint InfStabilizer::apply(StabElem const& g, ExactPoint const& p) const
{
    return O_.mul(O_.to_point(zeta_pow(g.rot)), p) + O_.to_point(g.shift);
}

StabElem InfStabilizer::compose(StabElem const& outer, StabElem const& inner) const
{
    int rot = (outer.rot + inner.rot) % rotation_order_;
    return {rot, O_.mul(zeta_pow(outer.rot), inner.shift) + outer.shift};
}

StabElem InfStabilizer::inverse(StabElem const& g) const
{
    int rot = (rotation_order_ - g.rot) % rotation_order_;
    return {rot, -O_.mul(zeta_pow(rot), g.shift)};
}

Mat2 InfStabilizer::matrix(StabElem const& g) const
{
    if (mode_ == GroupMode::PGL) return {zeta_pow(g.rot), g.shift, 0, 1};
    QuadInt uk = 1;
    for (int i = 0; i < g.rot; ++i) uk = O_.mul(uk, unit_);
    QuadInt uinv = O_.conj(uk);
    return {uk, O_.mul(g.shift, uinv), 0, uinv};
}

std::optional<StabElem> InfStabilizer::from_matrix(Mat2 const& m) const
{
    if (!m.c.is_zero() || !O_.is_unit(m.d) || !O_.is_unit(m.a)) return std::nullopt;
    QuadInt dinv = O_.conj(m.d);
    QuadInt mult = O_.mul(m.a, dinv);
    for (int k = 0; k < rotation_order_; ++k) {
        if (zeta_pow(k) == mult) return StabElem{k, O_.mul(m.b, dinv)};
    }
    return std::nullopt;
}

std::vector<StabElem> InfStabilizer::to_parallelogram(ExactPoint const& p) const
{
    std::vector<StabElem> out;
    for (int k = 0; k < rotation_order_; ++k) {
        ExactPoint q = O_.mul(O_.to_point(zeta_pow(k)), p);
        auto [reduced, lambda] = O_.reduce_mod_lattice(q);
        out.push_back({k, -lambda});
    }
    return out;
}

std::pair<ExactPoint, StabElem> InfStabilizer::canonical(ExactPoint const& p) const
{
    std::optional<std::pair<ExactPoint, StabElem>> best;
    for (auto const& g : to_parallelogram(p)) {
        ExactPoint q = apply(g, p);
        if (!best || q < best->first) best = std::make_pair(q, g);
    }
    return *best;
}

std::vector<StabElem> InfStabilizer::fixing(ExactPoint const& p) const
{
    std::vector<StabElem> out;
    for (int k = 0; k < rotation_order_; ++k) {
        ExactPoint shift = p - O_.mul(O_.to_point(zeta_pow(k)), p);
        auto [s, u] = O_.omega_coords(shift);
        if (s.get_den() == 1 && u.get_den() == 1) out.push_back({k, O_.from_omega_coords(s, u)});
    }
    return out;
}

InfStabilizer stabilizer_infinity(Order const& O, GroupMode mode) { return InfStabilizer(O, mode); }

Hemisphere make_hemisphere(Order const& O, QuadInt const& c, QuadInt const& d)
{
    if (c.is_zero()) throw std::invalid_argument("isometric sphere needs c != 0");
    QuadInt bc = c;
    QuadInt bd = d;
    for (auto const& u : O.units()) {
        QuadInt uc = O.mul(u, c);
        if (lex_greater(uc, bc)) {
            bc = uc;
            bd = O.mul(u, d);
        }
    }
    Hemisphere h;
    h.center = O.divide(O.to_point(bd), O.to_point(bc));
    h.radius_sq = Rational(Integer(1), O.norm(bc));
    h.c = std::move(bc);
    h.d = std::move(bd);
    return h;
}

Hemisphere apply(InfStabilizer const& stab, StabElem const& g, Hemisphere const& h)
{
    Order const& O = stab.order();
    return make_hemisphere(O, h.c, O.mul(stab.zeta_pow(g.rot), h.d) + O.mul(g.shift, h.c));
}

Rational height_at(Order const& O, Hemisphere const& h, ExactPoint const& p) { return h.radius_sq - O.dist2(p, h.center); }

std::vector<QuadInt> elements_by_norm(Order const& O, Integer const& lo, Integer const& hi)
{
    std::vector<QuadInt> out;
    if (hi <= 0) return out;
    long absD = O.abs_discriminant();
    // norm(a + b w) = (a + bT/2)^2 + b^2 |D|/4
    Integer bmax = sqrt(Integer(4 * hi / absD)) + 1;
    Integer root = sqrt(hi) + 2;
    for (Integer b = -bmax; b <= bmax; ++b) {
        Integer center = -(b * O.trace()) / 2;
        for (Integer a = center - root; a <= center + root; ++a) {
            QuadInt x(a, b);
            Integer n = O.norm(x);
            if (n <= lo || n > hi) continue;
            if (unit_normal(O, x) != x) continue;
            out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end(), [&O](QuadInt const& x, QuadInt const& y) {
        Integer nx = O.norm(x);
        Integer ny = O.norm(y);
        if (nx != ny) return nx < ny;
        return x < y;
    });
    return out;
}

HemisphereCatalog::HemisphereCatalog(Order const& O, Integer max_norm) : O_(O), max_norm_(std::move(max_norm))
{
    for (auto const& c : elements_by_norm(O, 0, max_norm_)) {
        for (auto const& d : O.residues(c)) {
            if (O.ideal_index(c, d) != 1) continue;
            Hemisphere h = make_hemisphere(O, c, d);
            auto [reduced, lambda] = O.reduce_mod_lattice(h.center);
            if (!lambda.is_zero()) h = make_hemisphere(O, h.c, h.d - O.mul(lambda, h.c));
            base_.push_back(std::move(h));
        }
    }
    std::sort(base_.begin(), base_.end(), [](Hemisphere const& x, Hemisphere const& y) {
        if (x.radius_sq != y.radius_sq) return x.radius_sq > y.radius_sq;
        return x.center < y.center;
    });
    for (auto const& h : base_) {
        base_x_.push_back(to_double(h.center.x));
        base_y_.push_back(to_double(h.center.y));
        base_r_.push_back(std::sqrt(to_double(h.radius_sq)));
    }
}

std::vector<Hemisphere> HemisphereCatalog::meeting_box(double x0, double x1, double y0, double y1) const
{
    constexpr double eps = 1e-9;
    double sqrtD = std::sqrt(static_cast<double>(O_.abs_discriminant()));
    double halfT = O_.trace() / 2.0;
    std::vector<Hemisphere> out;
    for (size_t i = 0; i < base_.size(); ++i) {
        double px = base_x_[i];
        double py = base_y_[i];
        double r = base_r_[i];
        double ry = r / sqrtD;
        long n0 = static_cast<long>(std::ceil(2 * (y0 - ry - eps - py)));
        long n1 = static_cast<long>(std::floor(2 * (y1 + ry + eps - py)));
        for (long n = n0; n <= n1; ++n) {
            double cy = py + n / 2.0;
            double bx = px + n * halfT;
            long m0 = static_cast<long>(std::ceil(x0 - r - eps - bx));
            long m1 = static_cast<long>(std::floor(x1 + r + eps - bx));
            for (long m = m0; m <= m1; ++m) {
                double cx = bx + m;
                double dx = std::max({x0 - cx, 0.0, cx - x1});
                double dy = std::max({y0 - cy, 0.0, cy - y1}) * sqrtD;
                if (dx * dx + dy * dy > r * r + eps) continue;
                QuadInt lambda(m, n);
                Hemisphere const& b = base_[i];
                if (lambda.is_zero()) {
                    out.push_back(b);
                } else {
                    Hemisphere h = b;
                    h.d = b.d + O_.mul(lambda, b.c);
                    h.center = b.center + O_.to_point(lambda);
                    out.push_back(std::move(h));
                }
            }
        }
    }
    return out;
}

std::vector<Hemisphere> enumerate_hemispheres(Order const& O, Rational const& min_radius_sq,
                                              std::vector<ExactPoint> const& cell)
{
    if (min_radius_sq <= 0) throw std::invalid_argument("min_radius_sq must be positive");
    Integer max_norm;
    Rational inv = 1 / min_radius_sq;
    mpz_fdiv_q(max_norm.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    HemisphereCatalog cat(O, max_norm);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (auto const& p : cell) {
        x0 = std::min(x0, to_double(p.x));
        x1 = std::max(x1, to_double(p.x));
        y0 = std::min(y0, to_double(p.y));
        y1 = std::max(y1, to_double(p.y));
    }
    return cat.meeting_box(x0, x1, y0, y1);
}

SwanResult swan_check(Order const& O, std::span<EnvelopeVertex const> vertices, Rational const& next_radius_sq,
                      Integer const& norm_cap)
{
    SwanResult res;
    // Absent spheres have norm(c) >= first_norm.
    Rational inv = 1 / next_radius_sq;
    Integer first_norm;
    mpz_cdiv_q(first_norm.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    for (auto const& v : vertices) {
        if (v.height_sq < 0) {
            res.pass = false;
            res.violations.push_back({v.point, v.height_sq, std::nullopt});
            continue;
        }
        if (v.height_sq >= next_radius_sq) continue;
        // Strict cover by S(c, d): |c v - d|^2 < 1 - norm(c) t^2, so norm(c) < 1/t^2.
        Integer hi = norm_cap;
        if (v.height_sq > 0) {
            Rational lim = 1 / v.height_sq;
            Integer below;
            mpz_cdiv_q(below.get_mpz_t(), lim.get_num_mpz_t(), lim.get_den_mpz_t());
            below -= 1;
            if (below < hi) hi = below;
        }
        for (auto const& c : elements_by_norm(O, first_norm - 1, hi)) {
            Rational slack = 1 - Rational(O.norm(c)) * v.height_sq;
            if (slack <= 0) continue;
            ExactPoint cv = O.mul(O.to_point(c), v.point);
            auto [near, lambda] = O.reduce_mod_lattice(cv);
            bool found = false;
            for (int db = -2; db <= 2 && !found; ++db) {
                for (int da = -2; da <= 2 && !found; ++da) {
                    QuadInt d = lambda + QuadInt(da, db);
                    if (O.dist2(cv, O.to_point(d)) >= slack) continue;
                    if (O.ideal_index(c, d) != 1) continue;
                    res.pass = false;
                    res.violations.push_back({v.point, v.height_sq, make_hemisphere(O, c, d)});
                    found = true;
                }
            }
            if (found) break;
        }
    }
    return res;
}

long FordDomain::face_index(ExactPoint const& canonical_center) const
{
    auto it = face_lookup.find(canonical_center);
    return it == face_lookup.end() ? -1 : static_cast<long>(it->second);
}

namespace {

struct Box {
    double x0, x1, y0, y1;
};

Box disk_box(Order const& O, Hemisphere const& h, double margin)
{
    double r = std::sqrt(to_double(h.radius_sq)) + margin;
    double ry = r / std::sqrt(static_cast<double>(O.abs_discriminant()));
    double cx = to_double(h.center.x);
    double cy = to_double(h.center.y);
    return {cx - r, cx + r, cy - ry, cy + ry};
}

Box polygon_box(std::vector<ExactPoint> const& poly, double margin_x, double margin_y)
{
    Box b{1e300, -1e300, 1e300, -1e300};
    for (auto const& p : poly) {
        b.x0 = std::min(b.x0, to_double(p.x));
        b.x1 = std::max(b.x1, to_double(p.x));
        b.y0 = std::min(b.y0, to_double(p.y));
        b.y1 = std::max(b.y1, to_double(p.y));
    }
    b.x0 -= margin_x;
    b.x1 += margin_x;
    b.y0 -= margin_y;
    b.y1 += margin_y;
    return b;
}

struct Attempt {
    std::vector<PowerCell> cells;  // canonical spheres with nonempty cells
    SwanResult swan;
};

Attempt attempt(Order const& O, InfStabilizer const& stab, HemisphereCatalog const& cat, Integer const& cap,
                unsigned threads)
{
    std::vector<Hemisphere> canon;
    for (auto const& h : cat.base()) {
        if (stab.canonical(h.center).first == h.center) canon.push_back(h);
    }
    std::vector<PowerCell> cells(canon.size());
    detail::parallel_for(canon.size(), threads, [&](size_t i) {
        Box b = disk_box(O, canon[i], 0.0);
        auto cand = cat.meeting_box(b.x0, b.x1, b.y0, b.y1);
        cells[i] = power_cell(O, canon[i], cand);
    });
    Attempt out;
    std::vector<EnvelopeVertex> verts;
    std::set<ExactPoint> seen;
    for (auto& cell : cells) {
        if (cell.vertices.empty()) continue;
        for (size_t k = 0; k < cell.vertices.size(); ++k) {
            if (seen.insert(cell.vertices[k]).second) verts.push_back({cell.vertices[k], cell.heights[k]});
        }
        if (cell.area > 0) out.cells.push_back(std::move(cell));
    }
    out.swan = swan_check(O, verts, Rational(Integer(1), cat.max_norm() + 1), cap);
    return out;
}

}  // namespace

FordDomain ford_domain(Order const& O, GroupMode mode, FordOptions const& options)
{
    InfStabilizer stab(O, mode);
    Integer cap = options.max_norm ? *options.max_norm : Integer(10 * O.abs_discriminant());
    Integer N = 1;
    int extra = options.extra_refinements;
    for (;;) {
        HemisphereCatalog cat(O, N);
        Attempt a = attempt(O, stab, cat, cap, options.threads);
        if (!a.swan.pass) {
            if (N >= cap) {
                auto worst = std::min_element(a.swan.violations.begin(), a.swan.violations.end(),
                                              [](SwanViolation const& x, SwanViolation const& y) {
                                                  return x.height_sq < y.height_sq;
                                              });
                std::ostringstream msg;
                msg << "resource cap norm(c) <= " << cap.get_str() << " reached for D = " << O.discriminant()
                    << "; uncertified vertex " << worst->vertex << " with height^2 " << to_string(worst->height_sq);
                throw ResourceCapError(msg.str(), worst->vertex, worst->height_sq);
            }
            N = std::min(Integer(2 * N), cap);
            continue;
        }
        if (extra > 0) {
            --extra;
            N *= 2;
            continue;
        }

        FordDomain fd{O, mode, stab, cat, Rational(Integer(1), N), {}, {}, {}, {}};
        fd.faces = std::move(a.cells);
        for (size_t i = 0; i < fd.faces.size(); ++i) fd.face_lookup.emplace(fd.faces[i].sphere.center, i);

        std::set<ExactPoint> ideal;
        for (auto const& f : fd.faces) {
            for (size_t k = 0; k < f.vertices.size(); ++k) {
                if (f.heights[k] == 0) ideal.insert(stab.canonical(f.vertices[k]).first);
            }
        }
        fd.ideal_vertices.assign(ideal.begin(), ideal.end());

        double sqrtD = std::sqrt(static_cast<double>(O.abs_discriminant()));
        Box b = polygon_box(stab.cell(), 1e-9, 1e-9 / sqrtD);
        auto spheres = cat.meeting_box(b.x0, b.x1, b.y0, b.y1);
        fd.complex = upper_envelope(O, spheres, stab.cell());
        for (auto& face : fd.complex.faces) face.orbit = fd.face_index(stab.canonical(face.sphere.center).first);
        return fd;
    }
}

}  // namespace bianchi
