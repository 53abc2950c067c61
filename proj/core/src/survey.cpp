#include "bianchi/survey.hpp"

#include "bianchi/classforms.hpp"
#include "parallel.hpp"

#include <chrono>
#include <regex>
#include <sstream>

namespace bianchi {

namespace detail {
extern std::string_view const table1_tsv;
extern std::string_view const table3_tsv;
extern std::string_view const no_cuspidal_tsv;
}  // namespace detail

namespace {

std::vector<std::vector<std::string>> read_tsv(std::string const& text, size_t columns, char const* what)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, '\t')) cells.push_back(cell);
        if (cells.size() != columns) {
            throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(columns) +
                                        " columns in '" + line + "'");
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

long parse_long(std::string const& s, char const* what)
{
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (std::logic_error const&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument(std::string(what) + ": bad integer '" + s + "'");
    return v;
}

}  // namespace

AbelianInvariants parse_invariants(std::string const& text)
{
    AbelianInvariants inv;
    static std::regex const free_re(R"(Z(?:\^(\d+))?)");
    static std::regex const tors_re(R"(\(Z/(\d+)\)\^(\d+)|Z/(\d+))");
    std::string s;
    for (char ch : text) {
        if (ch != ' ') s += ch;
    }
    if (s == "0") return inv;
    std::vector<Integer> torsion;
    std::istringstream parts(s);
    std::string part;
    while (std::getline(parts, part, '+')) {
        std::smatch m;
        if (std::regex_match(part, m, free_re)) {
            inv.free_rank += m[1].matched ? std::stol(m[1]) : 1;
        } else if (std::regex_match(part, m, tors_re)) {
            Integer d(m[1].matched ? m[1].str() : m[3].str());
            long k = m[2].matched ? std::stol(m[2]) : 1;
            for (long i = 0; i < k; ++i) torsion.push_back(d);
        } else {
            throw std::invalid_argument("cannot parse abelian group '" + text + "'");
        }
    }
    // Normalize to invariant factors through a diagonal relation matrix.
    IntMatrix m(torsion.size(), torsion.size());
    for (size_t i = 0; i < torsion.size(); ++i) m(i, i) = torsion[i];
    AbelianInvariants t = cokernel_invariants(m);
    inv.torsion = t.torsion;
    return inv;
}

Expectations Expectations::parse(std::string const& table1, std::string const& table3, std::string const& no_cuspidal)
{
    Expectations out;
    for (auto const& r : read_tsv(table1, 3, "manifold table")) {
        Expectation e;
        e.D = parse_long(r[0], "manifold table");
        e.manifold = r[1];
        e.h1 = parse_invariants(r[2]);
        if (!out.by_discriminant.emplace(e.D, e).second) {
            throw std::invalid_argument("manifold table: duplicate D = " + r[0]);
        }
    }
    for (auto const& r : read_tsv(table3, 3, "PSL table")) {
        long D = parse_long(r[0], "PSL table");
        auto it = out.by_discriminant.find(D);
        if (it == out.by_discriminant.end()) throw std::invalid_argument("PSL table: D = " + r[0] + " not in manifold table");
        it->second.psl_manifold = r[1];
        it->second.psl_rank = parse_long(r[2], "PSL table");
        it->second.no_cuspidal = false;
    }
    for (auto const& r : read_tsv(no_cuspidal, 1, "cuspidal list")) {
        long D = parse_long(r[0], "cuspidal list");
        auto it = out.by_discriminant.find(D);
        if (it == out.by_discriminant.end() || !it->second.psl_rank) {
            throw std::invalid_argument("cuspidal list: D = " + r[0] + " has no PSL entry");
        }
        it->second.no_cuspidal = true;
    }
    return out;
}

Expectations Expectations::builtin()
{
    return parse(std::string(detail::table1_tsv), std::string(detail::table3_tsv),
                 std::string(detail::no_cuspidal_tsv));
}

Expectation const* Expectations::find(long D) const
{
    auto it = by_discriminant.find(D);
    return it == by_discriminant.end() ? nullptr : &it->second;
}

std::vector<long> survey_discriminants(long from, long to)
{
    std::vector<long> out;
    for (long D = std::min(from, -1L); D >= to; --D) {
        if (is_fundamental_discriminant(D)) out.push_back(D);
    }
    return out;
}

SurveyRow survey_row(long D, Expectations const& expect, SurveyOptions const& options)
{
    auto start = std::chrono::steady_clock::now();
    SurveyRow row;
    row.D = D;
    Order O = Order::make(D);
    row.class_number = class_number(O);
    row.genus_rank = genus_rank(O);
    row.two_rank = ambiguous_two_rank(O);
    Expectation const* e = expect.find(D);
    if (e) row.expected_manifold = e->manifold;

    auto problem = [&](std::string const& p) { row.problems.push_back(p); };
    if (row.genus_rank != row.two_rank) {
        problem("genus rank " + std::to_string(row.genus_rank) + " != ambiguous 2-rank " + std::to_string(row.two_rank));
    }

    FordOptions fo;
    fo.max_norm = options.max_norm;
    fo.threads = 1;
    try {
        FordDomain pgl = ford_domain(O, GroupMode::PGL, fo);
        PoincareData pd = build_presentation(pgl);
        row.cusp_count = static_cast<long>(cusp_orbits(pgl, pd.pairings).count);
        row.pgl_h1 = torsion_free_h1(pd.presentation);

        FordDomain psl = ford_domain(O, GroupMode::PSL, fo);
        PoincareData ps = build_presentation(psl);
        long psl_cusps = static_cast<long>(cusp_orbits(psl, ps.pairings).count);
        row.psl_rank = abelianization(ps.presentation).free_rank;
        if (psl_cusps != row.cusp_count) problem("PSL cusp count " + std::to_string(psl_cusps));
        try {
            row.defect = cuspidal_defect(D, abelianization(ps.presentation), psl_cusps);
        } catch (std::logic_error const& ex) {
            problem(ex.what());
        }
    } catch (ResourceCapError const& ex) {
        problem(std::string("resource cap: ") + ex.what());
    } catch (std::exception const& ex) {
        problem(std::string("error: ") + ex.what());
    }

    if (row.problems.empty()) {
        if (row.cusp_count != row.class_number) {
            problem("cusp count " + std::to_string(row.cusp_count) + " != class number " +
                    std::to_string(row.class_number));
        }
        if (e) {
            if (row.pgl_h1 != e->h1) problem("H1 " + to_string(row.pgl_h1) + " != expected " + to_string(e->h1));
            if (e->psl_rank && row.psl_rank != *e->psl_rank) {
                problem("PSL rank " + std::to_string(row.psl_rank) + " != expected " + std::to_string(*e->psl_rank));
            }
            if (e->no_cuspidal && row.defect && (*row.defect == 0) != *e->no_cuspidal) {
                problem("cuspidal defect " + std::to_string(*row.defect) +
                        (*e->no_cuspidal ? " but no cuspidal cohomology expected" : " but cuspidal cohomology expected"));
            }
        }
    }
    row.match = row.problems.empty();
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<SurveyRow> run_survey(long from, long to, Expectations const& expect, SurveyOptions const& options)
{
    auto ds = survey_discriminants(from, to);
    std::vector<SurveyRow> rows(ds.size());
    // Largest |D| first so the slow cases start early.
    std::vector<size_t> order(ds.size());
    for (size_t i = 0; i < ds.size(); ++i) order[i] = ds.size() - 1 - i;
    detail::parallel_for(ds.size(), options.threads, [&](size_t k) {
        size_t i = order[k];
        rows[i] = survey_row(ds[i], expect, options);
    });
    return rows;
}

std::string survey_tsv(std::vector<SurveyRow> const& rows)
{
    std::ostringstream out;
    out << "D\th_D\tcusps\tpgl_h1\tpsl_rank\tdefect\tgenus_rank\texpected\tmatch\tproblems\n";
    for (auto const& r : rows) {
        out << r.D << '\t' << r.class_number << '\t' << r.cusp_count << '\t' << to_string(r.pgl_h1) << '\t'
            << r.psl_rank << '\t' << (r.defect ? std::to_string(*r.defect) : "-") << '\t' << r.genus_rank << '\t'
            << (r.expected_manifold.empty() ? "-" : r.expected_manifold) << '\t' << (r.match ? "yes" : "no") << '\t';
        for (size_t i = 0; i < r.problems.size(); ++i) out << (i ? "; " : "") << r.problems[i];
        if (r.problems.empty()) out << '-';
        out << '\n';
    }
    return out.str();
}

}  // namespace bianchi
