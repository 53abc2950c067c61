#ifndef BIANCHI_SURVEY_HPP
#define BIANCHI_SURVEY_HPP

#include "bianchi/homology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

/// Parses "0", "Z", "Z^2", "Z/2", "(Z/2)^3", "Z + Z/2" ... (inverse of to_string).
AbelianInvariants parse_invariants(std::string const& text);

struct Expectation {
    long D = 0;
    std::string manifold;
    AbelianInvariants h1;
    std::optional<std::string> psl_manifold;
    std::optional<long> psl_rank;
    /// Known only for discriminants with a PSL entry.
    std::optional<bool> no_cuspidal;
};

struct Expectations {
    std::map<long, Expectation> by_discriminant;

    /// Tab-separated tables; '#' lines are comments.  Throws
    /// std::invalid_argument on malformed rows.
    static Expectations parse(std::string const& table1, std::string const& table3, std::string const& no_cuspidal);
    /// The tables shipped in data/.
    static Expectations builtin();
    Expectation const* find(long D) const;
};

struct SurveyRow {
    long D = 0;
    long class_number = 0;
    long cusp_count = 0;
    AbelianInvariants pgl_h1;
    long psl_rank = 0;
    std::optional<long> defect;
    long genus_rank = 0;
    long two_rank = 0;
    std::string expected_manifold;
    bool match = false;
    std::vector<std::string> problems;
    double seconds = 0;
};

struct SurveyOptions {
    std::optional<Integer> max_norm;
    unsigned threads = 0;
};

/// Fundamental discriminants D with to <= D <= from, in decreasing order.
std::vector<long> survey_discriminants(long from, long to);

/// Both modes for one discriminant, compared against the expectations.
/// Failures (resource cap, inconsistent geometry) are recorded as problems.
SurveyRow survey_row(long D, Expectations const& expect, SurveyOptions const& options = {});

/// Rows in the order of survey_discriminants, computed concurrently.
std::vector<SurveyRow> run_survey(long from, long to, Expectations const& expect, SurveyOptions const& options = {});

std::string survey_tsv(std::vector<SurveyRow> const& rows);

}  // namespace bianchi

#endif
