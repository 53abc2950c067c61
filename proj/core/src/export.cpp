#include "bianchi/export.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bianchi {

using json = nlohmann::ordered_json;

namespace {

std::string rat(Rational const& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational parse_rat(json const& j)
{
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational " + j.dump());
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in " + j.dump());
    q.canonicalize();
    return q;
}

Integer parse_int(json const& j)
{
    if (!j.is_string()) throw std::invalid_argument("expected an integer string");
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer " + j.dump());
    return z;
}

json point(ExactPoint const& p) { return json::array({rat(p.x), rat(p.y)}); }
ExactPoint parse_point(json const& j) { return {parse_rat(j.at(0)), parse_rat(j.at(1))}; }

json quad(QuadInt const& x) { return json::array({x.a.get_str(), x.b.get_str()}); }
QuadInt parse_quad(json const& j) { return {parse_int(j.at(0)), parse_int(j.at(1))}; }

json mat(Mat2 const& m) { return json::array({quad(m.a), quad(m.b), quad(m.c), quad(m.d)}); }
Mat2 parse_mat(json const& j) { return {parse_quad(j.at(0)), parse_quad(j.at(1)), parse_quad(j.at(2)), parse_quad(j.at(3))}; }

}  // namespace

DomainRecord make_record(FordDomain const& ford, PoincareData const& data, CuspOrbits const& cusps)
{
    DomainRecord r;
    r.D = ford.order.discriminant();
    r.mode = ford.mode;
    r.certified_radius_sq = ford.certified_radius_sq;
    r.cell = ford.stabilizer.cell();
    for (auto const& f : ford.faces) {
        r.faces.push_back({f.sphere.c, f.sphere.d, f.sphere.center, f.sphere.radius_sq, f.vertices, f.heights, f.area});
    }
    r.vertices = ford.complex.vertices;
    r.ideal_vertices = ford.ideal_vertices;
    for (auto const& p : data.pairings) r.pairings.push_back({p.source, p.target, p.element});
    for (auto const& c : data.cycles) {
        DomainRecord::Cycle rc;
        rc.edges = c.states;
        rc.order = c.order;
        rc.transform = c.transform;
        for (auto const& l : c.word) {
            for (int i = 0; i < std::abs(l.exp); ++i) rc.word.push_back(l.exp > 0 ? l.gen + 1 : -(l.gen + 1));
        }
        r.cycles.push_back(std::move(rc));
    }
    r.cusp_count = cusps.count;
    return r;
}

std::string domain_json(DomainRecord const& r)
{
    json j;
    j["D"] = r.D;
    j["mode"] = to_string(r.mode);
    j["certified_radius_sq"] = rat(r.certified_radius_sq);
    j["cell"] = json::array();
    for (auto const& p : r.cell) j["cell"].push_back(point(p));
    j["hemispheres"] = json::array();
    for (auto const& f : r.faces) {
        json jf;
        jf["c"] = quad(f.c);
        jf["d"] = quad(f.d);
        jf["center"] = point(f.center);
        jf["radius_sq"] = rat(f.radius_sq);
        jf["vertices"] = json::array();
        for (auto const& v : f.vertices) jf["vertices"].push_back(point(v));
        jf["heights_sq"] = json::array();
        for (auto const& h : f.heights) jf["heights_sq"].push_back(rat(h));
        jf["area"] = rat(f.area);
        j["hemispheres"].push_back(std::move(jf));
    }
    j["vertices"] = json::array();
    for (auto const& v : r.vertices) j["vertices"].push_back({{"point", point(v.point)}, {"height_sq", rat(v.height_sq)}});
    j["ideal_vertices"] = json::array();
    for (auto const& v : r.ideal_vertices) j["ideal_vertices"].push_back(point(v));
    j["pairings"] = json::array();
    for (auto const& p : r.pairings) {
        j["pairings"].push_back({{"source", p.source}, {"target", p.target}, {"element", mat(p.element)}});
    }
    j["cycles"] = json::array();
    for (auto const& c : r.cycles) {
        json jc;
        jc["edges"] = json::array();
        for (auto const& e : c.edges) jc["edges"].push_back({{"face", e.face}, {"other_center", point(e.other_center)}});
        jc["order"] = c.order;
        jc["transform"] = mat(c.transform);
        jc["word"] = c.word;
        j["cycles"].push_back(std::move(jc));
    }
    j["cusp_count"] = r.cusp_count;
    return j.dump(1) + "\n";
}

DomainRecord parse_domain_json(std::string const& text)
{
    DomainRecord r;
    try {
        json j = json::parse(text);
        r.D = j.at("D").get<long>();
        r.mode = parse_group_mode(j.at("mode").get<std::string>());
        r.certified_radius_sq = parse_rat(j.at("certified_radius_sq"));
        for (auto const& p : j.at("cell")) r.cell.push_back(parse_point(p));
        for (auto const& jf : j.at("hemispheres")) {
            DomainRecord::Face f;
            f.c = parse_quad(jf.at("c"));
            f.d = parse_quad(jf.at("d"));
            f.center = parse_point(jf.at("center"));
            f.radius_sq = parse_rat(jf.at("radius_sq"));
            for (auto const& v : jf.at("vertices")) f.vertices.push_back(parse_point(v));
            for (auto const& h : jf.at("heights_sq")) f.heights.push_back(parse_rat(h));
            f.area = parse_rat(jf.at("area"));
            r.faces.push_back(std::move(f));
        }
        for (auto const& v : j.at("vertices")) r.vertices.push_back({parse_point(v.at("point")), parse_rat(v.at("height_sq"))});
        for (auto const& v : j.at("ideal_vertices")) r.ideal_vertices.push_back(parse_point(v));
        for (auto const& p : j.at("pairings")) {
            r.pairings.push_back({p.at("source").get<size_t>(), p.at("target").get<size_t>(), parse_mat(p.at("element"))});
        }
        for (auto const& jc : j.at("cycles")) {
            DomainRecord::Cycle c;
            for (auto const& e : jc.at("edges")) c.edges.push_back({e.at("face").get<size_t>(), parse_point(e.at("other_center"))});
            c.order = jc.at("order").get<int>();
            c.transform = parse_mat(jc.at("transform"));
            c.word = jc.at("word").get<std::vector<int>>();
            r.cycles.push_back(std::move(c));
        }
        r.cusp_count = j.at("cusp_count").get<size_t>();
    } catch (json::exception const& ex) {
        throw std::invalid_argument(std::string("domain JSON: ") + ex.what());
    }
    return r;
}

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
    return buf;
}

// Fill color indexed by norm(c).
std::string color_for(Integer const& norm)
{
    static char const* const palette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                          "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
    unsigned long n = norm.get_ui();
    return palette[(n - 1) % 12];
}

}  // namespace

std::string domain_svg(FordDomain const& ford)
{
    constexpr double scale = 400.0;
    constexpr double margin = 20.0;
    double sqrtD = std::sqrt(static_cast<double>(ford.order.abs_discriminant()));
    auto const& cell = ford.complex.cell;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (auto const& p : cell) {
        double x = p.x.get_d(), y = p.y.get_d() * sqrtD;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    auto sx = [&](ExactPoint const& p) { return margin + scale * (p.x.get_d() - x0); };
    auto sy = [&](ExactPoint const& p) { return margin + scale * (y1 - p.y.get_d() * sqrtD); };
    double width = 2 * margin + scale * (x1 - x0);
    double height = 2 * margin + scale * (y1 - y0);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    out << "<title>D = " << ford.order.discriminant() << ", " << to_string(ford.mode) << "</title>\n";
    auto const& env = ford.complex;
    for (auto const& f : env.faces) {
        out << "<polygon fill=\"" << color_for(f.sphere.norm_c()) << "\" stroke=\"#333\" stroke-width=\"1\" points=\"";
        for (size_t k = 0; k < f.vertices.size(); ++k) {
            auto const& p = env.vertices[f.vertices[k]].point;
            out << (k ? " " : "") << fmt(sx(p)) << ',' << fmt(sy(p));
        }
        out << "\"><title>c = " << f.sphere.c << ", d = " << f.sphere.d << ", norm " << f.sphere.norm_c().get_str()
            << "</title></polygon>\n";
    }
    out << "<polygon fill=\"none\" stroke=\"#000\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < cell.size(); ++k) out << (k ? " " : "") << fmt(sx(cell[k])) << ',' << fmt(sy(cell[k]));
    out << "\"/>\n";
    for (auto const& v : env.vertices) {
        if (v.height_sq != 0) continue;
        out << "<circle cx=\"" << fmt(sx(v.point)) << "\" cy=\"" << fmt(sy(v.point))
            << "\" r=\"4\" fill=\"#c00\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace bianchi
