#include "cli.hpp"

#include "bianchi/classforms.hpp"
#include "bianchi/export.hpp"
#include "bianchi/survey.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace bianchi::cli {

namespace {

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

Order checked_order(long D)
{
    if (D >= 0 || !is_fundamental_discriminant(D)) {
        throw InputError("D = " + std::to_string(D) + " is not a negative fundamental discriminant");
    }
    return Order::make(D);
}

FordOptions ford_options(long max_norm)
{
    FordOptions fo;
    if (max_norm > 0) fo.max_norm = Integer(max_norm);
    return fo;
}

struct Common {
    long D = 0;
    std::string mode = "pgl";
    long max_norm = 0;
};

void add_common(CLI::App* sub, Common& c, bool need_d = true)
{
    auto* d = sub->add_option("-D", c.D, "negative fundamental discriminant");
    if (need_d) d->required();
    sub->add_option("--mode", c.mode, "pgl or psl")
        ->capture_default_str()
        ->check(CLI::IsMember({"pgl", "psl"}, CLI::ignore_case));
    sub->add_option("--max-norm", c.max_norm, "give up past this norm(c)")->check(CLI::PositiveNumber);
}

int cmd_domain(Common const& c, std::string const& json_path, std::string const& svg_path, std::ostream& out)
{
    Order O = checked_order(c.D);
    FordDomain ford = ford_domain(O, parse_group_mode(c.mode), ford_options(c.max_norm));
    PoincareData data = build_presentation(ford);
    CuspOrbits cusps = cusp_orbits(ford, data.pairings);
    out << "D = " << c.D << ", " << to_string(ford.mode) << '\n';
    out << "faces: " << ford.faces.size() << '\n';
    out << "vertices: " << ford.complex.vertices.size() << " (" << ford.ideal_vertices.size() << " ideal)\n";
    out << "certified radius^2: " << ford.certified_radius_sq << '\n';
    out << "edge cycles: " << data.cycles.size() << '\n';
    out << "cusp orbits: " << cusps.count << '\n';
    if (!json_path.empty()) write_file(json_path, domain_json(make_record(ford, data, cusps)));
    if (!svg_path.empty()) write_file(svg_path, domain_svg(ford));
    return Ok;
}

int cmd_presentation(Common const& c, std::ostream& out)
{
    Order O = checked_order(c.D);
    FordDomain ford = ford_domain(O, parse_group_mode(c.mode), ford_options(c.max_norm));
    PoincareData data = build_presentation(ford);
    Presentation const& p = data.presentation;
    out << format_presentation(p);

    size_t bad = 0;
    for (auto const& r : p.relators) {
        if (!O.is_scalar(evaluate(O, p, power(r.word, r.power)))) ++bad;
    }
    SingularSummary s = singular_summary(ford, data.cycles, p);
    out << "# singular summary\n";
    for (auto const& [n, count] : s.cycle_orders) out << "#   edge cycles of order " << n << ": " << count << '\n';
    for (auto const& [name, n] : s.finite_generators) out << "#   generator " << name << " has order " << n << '\n';
    for (auto const& [n, count] : s.other_torsion_orders) {
        out << "#   further torsion of order " << n << ": " << count << '\n';
    }
    for (auto const& [v, orders] : s.vertex_hints) {
        out << "#   vertex " << v << ":";
        for (int n : orders) out << ' ' << n;
        out << '\n';
    }
    out << "#   torsion orders:";
    for (int n : s.all_orders()) out << ' ' << n;
    out << '\n';
    if (bad) {
        out << "# " << bad << " of " << p.relators.size() << " relators are not scalar ✗\n";
        return Mismatch;
    }
    out << "# all " << p.relators.size() << " relators scalar ✓\n";
    return Ok;
}

int cmd_homology(Common const& c, std::string const& input, bool full, std::string const& json_path, std::ostream& out)
{
    Presentation p;
    if (!input.empty()) {
        try {
            p = parse_presentation(read_file(input));
        } catch (std::invalid_argument const& ex) {
            throw InputError(ex.what());
        }
    } else {
        Order O = checked_order(c.D);
        FordDomain ford = ford_domain(O, parse_group_mode(c.mode), ford_options(c.max_norm));
        p = build_presentation(ford).presentation;
    }
    AbelianInvariants inv = full ? abelianization(p) : torsion_free_h1(p);
    std::string line = invariants_json(p.discriminant, p.mode, inv) + "\n";
    out << line;
    if (!json_path.empty()) write_file(json_path, line);
    return Ok;
}

struct SurveyArgs {
    long from = -3;
    long to = -95;
    long max_norm = 0;
    unsigned threads = 0;
    std::string tsv;
    std::string table1, table3, no_cuspidal;
};

int cmd_survey(SurveyArgs const& a, std::ostream& out, std::ostream& err)
{
    if (a.from >= 0 || a.to > a.from) throw InputError("survey range must satisfy to <= from < 0");
    Expectations expect;
    if (a.table1.empty() && a.table3.empty() && a.no_cuspidal.empty()) {
        expect = Expectations::builtin();
    } else {
        if (a.table1.empty() || a.table3.empty() || a.no_cuspidal.empty()) {
            throw InputError("--table1, --table3 and --no-cuspidal go together");
        }
        try {
            expect = Expectations::parse(read_file(a.table1), read_file(a.table3), read_file(a.no_cuspidal));
        } catch (std::invalid_argument const& ex) {
            throw InputError(ex.what());
        }
    }
    SurveyOptions so;
    if (a.max_norm > 0) so.max_norm = Integer(a.max_norm);
    so.threads = a.threads;
    auto rows = run_survey(a.from, a.to, expect, so);
    std::string tsv = survey_tsv(rows);
    if (a.tsv.empty()) {
        out << tsv;
    } else {
        write_file(a.tsv, tsv);
    }
    size_t matched = 0;
    bool capped = false;
    for (auto const& r : rows) {
        if (r.match) ++matched;
        for (auto const& p : r.problems) capped |= p.rfind("resource cap", 0) == 0;
    }
    err << rows.size() << " rows, " << matched << " match\n";
    if (matched == rows.size()) return Ok;
    return capped ? ResourceCap : Mismatch;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ford domains and presentations of Bianchi groups"};
    app.require_subcommand(1);

    Common dc, pc, hc;
    std::string json_path, svg_path, h_json, h_input;
    bool h_full = false;
    SurveyArgs sa;

    auto* domain = app.add_subcommand("domain", "compute and certify a Ford domain");
    add_common(domain, dc);
    domain->add_option("--json", json_path, "write the domain as JSON");
    domain->add_option("--svg", svg_path, "write the projected envelope as SVG");

    auto* pres = app.add_subcommand("presentation", "print the presentation and singular summary");
    add_common(pres, pc);

    auto* hom = app.add_subcommand("homology", "abelian invariants as JSON");
    add_common(hom, hc, false);
    hom->add_option("--input", h_input, "read a presentation file instead of computing one");
    hom->add_flag("--abelianization", h_full, "full H1 instead of the torsion-free quotient");
    hom->add_option("--json", h_json, "also write the record to this path");

    auto* survey = app.add_subcommand("survey", "run all fundamental discriminants in a range");
    survey->add_option("--from", sa.from, "first (largest) D")->capture_default_str();
    survey->add_option("--to", sa.to, "last (smallest) D")->capture_default_str();
    survey->add_option("--tsv", sa.tsv, "write rows here instead of stdout");
    survey->add_option("--max-norm", sa.max_norm, "give up past this norm(c)")->check(CLI::PositiveNumber);
    survey->add_option("--threads", sa.threads, "worker threads (0 = hardware)");
    survey->add_option("--table1", sa.table1, "override the manifold table");
    survey->add_option("--table3", sa.table3, "override the PSL table");
    survey->add_option("--no-cuspidal", sa.no_cuspidal, "override the no-cuspidal list");

    std::vector<std::string> argv_s{"bianchi"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return InvalidInput;
    }

    try {
        if (*domain) return cmd_domain(dc, json_path, svg_path, out);
        if (*pres) return cmd_presentation(pc, out);
        if (*hom) {
            if (h_input.empty() && hom->count("-D") == 0) throw InputError("homology needs -D or --input");
            return cmd_homology(hc, h_input, h_full, h_json, out);
        }
        if (*survey) return cmd_survey(sa, out, err);
    } catch (InputError const& ex) {
        err << "error: " << ex.what() << '\n';
        return InvalidInput;
    } catch (ResourceCapError const& ex) {
        err << ex.what() << '\n';
        return ResourceCap;
    } catch (std::exception const& ex) {
        err << "error: " << ex.what() << '\n';
        return Mismatch;
    }
    return InvalidInput;
}

}  // namespace bianchi::cli
