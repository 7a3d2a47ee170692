#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lagsum/closed_form.hpp"
#include "lagsum/laguerre.hpp"

namespace lagsum {

/// Points closer than this to a SumSpec invariant violation are skipped.
inline constexpr double kGridPoleTolerance = 1e-6;

struct GridConfig {
    std::vector<double> nu_values{0.3, 0.5, 1.7};
    std::vector<double> f_values{0.7, 2.3};
    std::vector<double> x_values{0.1, 0.5, 1.0, 2.0, 5.0};
    unsigned m_max = 3;
    unsigned p_max = 4;
    std::vector<std::pair<Sign, Sign>> signs{
        {Sign::plus, Sign::plus}, {Sign::plus, Sign::minus}, {Sign::minus, Sign::plus}, {Sign::minus, Sign::minus}};
    double tol = 1e-9;
    std::size_t max_terms = 400;
};

/// Throws InvalidSpec if a list is empty or tol is not positive.
void check(const GridConfig& grid);

/// Flat `key = value` text; lists are comma separated, `#` starts a comment.
/// Keys: nu_values, f_values, x_values, m_max, p_max, signs, tol, max_terms.
/// Keys that are absent keep their defaults. Throws InvalidSpec on unknown
/// keys, malformed numbers or an invalid resulting grid.
GridConfig parse_grid(std::istream& in);
GridConfig load_grid(const std::string& path);

/// Parses "+nu+p", "+nu-p", "-nu+p" or "-nu-p".
std::pair<Sign, Sign> parse_variant(const std::string& label);

/// All grid points, in (variant, m, p, nu, f, x) order.
std::vector<SumSpec> expand(const GridConfig& grid);

enum class RecordStatus { pass, fail, skipped_invalid, evaluated };

std::string_view to_string(RecordStatus s);

struct VerifyRecord {
    SumSpec spec;
    std::string dispatch;  // evaluator path, or the violated invariant when skipped
    double closed = 0.0;
    double lemma = 0.0;
    double oracle = 0.0;
    double abs_err_closed = 0.0;
    double rel_err_closed = 0.0;
    double abs_err_lemma = 0.0;
    double rel_err_lemma = 0.0;
    std::size_t terms_oracle = 0;
    RecordStatus status = RecordStatus::pass;
    bool has_oracle = true;
};

/// |value - reference| / max(1, |reference|)
double relative_error(double value, double reference);

/// Three-way comparison at one point. Never throws for an inadmissible spec:
/// those come back as skipped_invalid. Evaluation failures are recorded as fail.
VerifyRecord verify_point(const SumSpec& spec, double tol, std::size_t max_terms);

/// Closed form and lemma only; status is `evaluated` or `skipped_invalid`.
VerifyRecord table_point(const SumSpec& spec, std::size_t max_terms);

/// Evaluates every grid point (in parallel when threads > 1) and returns the
/// records sorted by (variant, m, p, nu, f, x).
std::vector<VerifyRecord> run_verify(const GridConfig& grid, unsigned threads = 1);
std::vector<VerifyRecord> run_table(const GridConfig& grid, unsigned threads = 1);

struct VerifySummary {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

VerifySummary summarize(const std::vector<VerifyRecord>& records);

/// Shortest decimal string that round-trips to the same double.
std::string format_real(double v);

inline constexpr const char* kCsvHeader =
    "variant,m,p,nu,f,x,dispatch,closed,lemma,oracle,rel_err_closed,rel_err_lemma,terms_oracle,status";

void write_csv(std::ostream& out, const std::vector<VerifyRecord>& records);
void write_json(std::ostream& out, const std::vector<VerifyRecord>& records);

}  // namespace lagsum
