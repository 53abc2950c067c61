#include "bianchi/homology.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bianchi {

IntMatrix IntMatrix::identity(size_t n)
{
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix operator*(IntMatrix const& x, IntMatrix const& y)
{
    if (x.cols() != y.rows()) throw std::invalid_argument("matrix shapes do not match");
    IntMatrix out(x.rows(), y.cols());
    for (size_t i = 0; i < x.rows(); ++i) {
        for (size_t k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
        }
    }
    return out;
}

Integer determinant(IntMatrix const& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, size_t i, size_t j)
{
    if (i == j) return;
    for (size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, size_t i, size_t j)
{
    if (i == j) return;
    for (size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

// row i += q * row j
void add_row(IntMatrix& m, size_t i, size_t j, Integer const& q)
{
    for (size_t c = 0; c < m.cols(); ++c) m(i, c) += q * m(j, c);
}

void add_col(IntMatrix& m, size_t i, size_t j, Integer const& q)
{
    for (size_t r = 0; r < m.rows(); ++r) m(r, i) += q * m(r, j);
}

void negate_row(IntMatrix& m, size_t i)
{
    for (size_t c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
}

}  // namespace

SmithForm smith_normal_form(IntMatrix const& A)
{
    size_t rows = A.rows();
    size_t cols = A.cols();
    SmithForm f{IntMatrix::identity(rows), A, IntMatrix::identity(cols)};
    IntMatrix& S = f.S;
    size_t n = std::min(rows, cols);

    for (size_t t = 0; t < n; ++t) {
        bool empty = false;
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block.
            bool found = false;
            size_t pi = t, pj = t;
            for (size_t i = t; i < rows; ++i) {
                for (size_t j = t; j < cols; ++j) {
                    if (S(i, j) == 0) continue;
                    if (!found || abs(S(i, j)) < abs(S(pi, pj))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (!found) {
                empty = true;
                break;
            }
            swap_rows(S, t, pi);
            swap_rows(f.U, t, pi);
            swap_cols(S, t, pj);
            swap_cols(f.V, t, pj);

            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (S(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                add_row(S, i, t, -q);
                add_row(f.U, i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (S(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                add_col(S, j, t, -q);
                add_col(f.V, j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold any entry not divisible by the pivot into row t.
            bool divisible = true;
            for (size_t i = t + 1; i < rows && divisible; ++i) {
                for (size_t j = t + 1; j < cols; ++j) {
                    if (S(i, j) % S(t, t) != 0) {
                        add_row(S, t, i, 1);
                        add_row(f.U, t, i, 1);
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) break;
        }
        if (empty) break;
        if (S(t, t) < 0) {
            negate_row(S, t);
            negate_row(f.U, t);
        }
    }
    return f;
}

AbelianInvariants cokernel_invariants(IntMatrix const& A)
{
    SmithForm f = smith_normal_form(A);
    AbelianInvariants inv;
    size_t n = std::min(A.rows(), A.cols());
    long nonzero = 0;
    for (size_t i = 0; i < n; ++i) {
        Integer const& d = f.S(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) inv.torsion.push_back(d);
    }
    inv.free_rank = static_cast<long>(A.cols()) - nonzero;
    return inv;
}

IntMatrix relation_matrix(Presentation const& p)
{
    IntMatrix m(p.relators.size(), p.generators.size());
    for (size_t i = 0; i < p.relators.size(); ++i) {
        auto const& r = p.relators[i];
        for (auto const& l : r.word) m(i, static_cast<size_t>(l.gen)) += Integer(l.exp) * r.power;
    }
    return m;
}

AbelianInvariants abelianization(Presentation const& p) { return cokernel_invariants(relation_matrix(p)); }

AbelianInvariants torsion_free_h1(Presentation const& p)
{
    Presentation q = p;
    for (auto const& r : p.relators) {
        if (r.power >= 2) q.relators.push_back({r.word, 1, r.kind});
    }
    for (size_t g = 0; g < p.generators.size(); ++g) {
        if (p.generators[g].order && *p.generators[g].order >= 2) {
            q.relators.push_back({{{static_cast<int>(g), 1}}, 1, RelatorKind::Stabilizer});
        }
    }
    for (auto const& w : p.torsion_words) q.relators.push_back({w, 1, RelatorKind::Cycle});
    return abelianization(q);
}

long cuspidal_defect(long D, AbelianInvariants const& psl, long cusp_count)
{
    long tori = (D == -3 || D == -4) ? 0 : cusp_count;
    long s = psl.free_rank - tori;
    if (s < 0) {
        throw std::logic_error("negative cuspidal defect for D = " + std::to_string(D) + ": rank " +
                               std::to_string(psl.free_rank) + " below " + std::to_string(tori) + " torus cusps");
    }
    return s;
}

std::string to_string(AbelianInvariants const& inv)
{
    std::map<Integer, int> counts;
    for (auto const& d : inv.torsion) ++counts[d];
    std::string out;
    auto add = [&](std::string const& part) {
        if (!out.empty()) out += " + ";
        out += part;
    };
    if (inv.free_rank == 1) add("Z");
    if (inv.free_rank > 1) add("Z^" + std::to_string(inv.free_rank));
    for (auto const& [d, k] : counts) add(k == 1 ? "Z/" + d.get_str() : "(Z/" + d.get_str() + ")^" + std::to_string(k));
    return out.empty() ? "0" : out;
}

std::string invariants_json(long D, GroupMode mode, AbelianInvariants const& inv)
{
    nlohmann::ordered_json j;
    j["D"] = D;
    j["mode"] = to_string(mode);
    j["rank"] = inv.free_rank;
    j["torsion"] = nlohmann::ordered_json::array();
    for (auto const& d : inv.torsion) j["torsion"].push_back(d.get_str());
    return j.dump();
}

}  // namespace bianchi
