// lagsum: evaluate and cross-check the Laguerre series S_m(+-nu, +-p).
//
//   lagsum eval   --m 1 --p 0 --nu 0.5 --f 2 --x 0.7 --method closed
//   lagsum verify --grid grid.cfg --out records.csv
//   lagsum table  --grid grid.cfg --format json --out table.json
//
// Exit codes: 0 success, 1 tolerance failure(s) in verify, 2 bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lagsum/closed_form.hpp"
#include "lagsum/errors.hpp"
#include "lagsum/laguerre.hpp"
#include "lagsum/verify.hpp"

namespace {

using namespace lagsum;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

Sign parse_sign(const std::string& s) { return s == "+" ? Sign::plus : Sign::minus; }

struct EvalOptions {
    unsigned m = 0;
    unsigned p = 0;
    std::string sign_nu = "+";
    std::string sign_p = "+";
    double nu = 0.0;
    double f = 1.0;
    double x = 0.0;
    std::string method = "closed";
    double tol = 1e-14;
    std::size_t max_terms = 400;
};

struct GridOptions {
    std::string grid_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<double> tol;
    std::optional<std::size_t> max_terms;
    unsigned threads = 1;
};

int run_eval(const EvalOptions& o) {
    SumSpec spec{o.m, o.p, parse_sign(o.sign_nu), parse_sign(o.sign_p), o.nu, o.f, o.x};
    if (auto why = find_violation(spec)) {
        std::cerr << "error: invalid spec: " << *why << '\n';
        return kExitConfig;
    }
    const SeriesControl control{o.tol, o.max_terms};
    EvalResult res;
    std::string dispatch;
    if (o.method == "closed") {
        const ClosedResult c = closed_sum(spec, control);
        res.value = c.value;
        res.status = SeriesStatus::converged;
        dispatch = std::string(to_string(c.dispatch));
    } else if (o.method == "lemma") {
        res = lemma_sum(spec, control);
    } else {
        res = oracle_sum(spec, control);
    }
    std::cout << "variant=" << variant_label(spec) << '\n'
              << "method=" << o.method << '\n';
    if (!dispatch.empty()) {
        std::cout << "dispatch=" << dispatch << '\n';
    }
    std::cout << "value=" << format_real(res.value) << '\n'
              << "terms_used=" << res.terms_used << '\n'
              << "trunc_estimate=" << format_real(res.trunc_estimate) << '\n'
              << "status=" << to_string(res.status) << '\n';
    return 0;
}

GridConfig grid_from(const GridOptions& o) {
    GridConfig grid = o.grid_path.empty() ? GridConfig{} : load_grid(o.grid_path);
    if (o.tol) {
        grid.tol = *o.tol;
    }
    if (o.max_terms) {
        grid.max_terms = *o.max_terms;
    }
    check(grid);
    return grid;
}

void emit(const GridOptions& o, const std::vector<VerifyRecord>& records) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out_path.empty()) {
        file.open(o.out_path, std::ios::binary);
        if (!file) {
            throw InvalidSpec("cannot write '" + o.out_path + "'");
        }
        out = &file;
    }
    if (o.format == "json") {
        write_json(*out, records);
    } else {
        write_csv(*out, records);
    }
}

int run_verify_cmd(const GridOptions& o) {
    const GridConfig grid = grid_from(o);
    const auto records = run_verify(grid, o.threads);
    emit(o, records);
    const VerifySummary s = summarize(records);
    std::cerr << s.passed << " passed / " << s.failed << " failed / " << s.skipped << " skipped\n";
    for (const auto& r : records) {
        if (r.status == RecordStatus::skipped_invalid) {
            std::cerr << "skipped-invalid " << variant_label(r.spec) << " m=" << r.spec.m << " p=" << r.spec.p
                      << " nu=" << format_real(r.spec.nu) << " f=" << format_real(r.spec.f)
                      << " x=" << format_real(r.spec.x) << ": " << r.dispatch << '\n';
        }
    }
    return s.failed == 0 ? 0 : kExitFailure;
}

int run_table_cmd(const GridOptions& o) {
    const GridConfig grid = grid_from(o);
    emit(o, run_table(grid, o.threads));
    return 0;
}

void add_grid_options(CLI::App* cmd, GridOptions& o) {
    cmd->add_option("--grid", o.grid_path, "Grid config file (key = value); defaults to the built-in grid")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", o.tol, "Override the grid's relative tolerance");
    cmd->add_option("--max-terms", o.max_terms, "Override the grid's series term cap");
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed forms, Kummer sums and a brute-force oracle for S_m(+-nu, +-p)"};
    app.require_subcommand(1);

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate one S_m(+-nu, +-p)");
    eval_cmd->add_option("--m", eval.m, "Numerator shift m >= 0");
    eval_cmd->add_option("--p", eval.p, "Denominator shift p >= 0");
    eval_cmd->add_option("--sign-nu", eval.sign_nu, "Sign of nu")->check(CLI::IsMember({"+", "-"}));
    eval_cmd->add_option("--sign-p", eval.sign_p, "Sign of p")->check(CLI::IsMember({"+", "-"}));
    eval_cmd->add_option("--nu", eval.nu, "Laguerre order nu")->required();
    eval_cmd->add_option("--f", eval.f, "Parameter f");
    eval_cmd->add_option("--x", eval.x, "Argument x")->required();
    eval_cmd->add_option("--method", eval.method, "Evaluation route")
        ->check(CLI::IsMember({"closed", "lemma", "oracle"}));
    eval_cmd->add_option("--tol", eval.tol, "Series stopping tolerance")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--max-terms", eval.max_terms, "Series term cap");

    GridOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Three-way check (closed, lemma, oracle) over a grid");
    add_grid_options(verify_cmd, verify);

    GridOptions table;
    auto* table_cmd = app.add_subcommand("table", "Closed-form and lemma values over a grid, no oracle");
    add_grid_options(table_cmd, table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (eval_cmd->parsed()) {
            return run_eval(eval);
        }
        if (verify_cmd->parsed()) {
            return run_verify_cmd(verify);
        }
        return run_table_cmd(table);
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
