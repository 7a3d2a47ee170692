#include "lagsum/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "lagsum/errors.hpp"

namespace lagsum {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw InvalidSpec(key + ": '" + text + "' is not a finite number");
    }
    return v;
}

unsigned long parse_count(const std::string& key, const std::string& text) {
    unsigned long v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw InvalidSpec(key + ": '" + text + "' is not a non-negative integer");
    }
    return v;
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        out.push_back(parse_real(key, item));
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

auto sort_key(const VerifyRecord& r) {
    return std::make_tuple(variant_label(r.spec), r.spec.m, r.spec.p, r.spec.nu, r.spec.f, r.spec.x);
}

template <typename Fn>
std::vector<VerifyRecord> run_grid(const GridConfig& grid, unsigned threads, Fn&& point) {
    check(grid);
    const std::vector<SumSpec> specs = expand(grid);
    std::vector<VerifyRecord> records(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            records[i] = point(specs[i]);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const VerifyRecord& a, const VerifyRecord& b) { return sort_key(a) < sort_key(b); });
    return records;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void check(const GridConfig& grid) {
    if (grid.nu_values.empty()) {
        throw InvalidSpec("nu_values must be non-empty");
    }
    if (grid.f_values.empty()) {
        throw InvalidSpec("f_values must be non-empty");
    }
    if (grid.x_values.empty()) {
        throw InvalidSpec("x_values must be non-empty");
    }
    if (grid.signs.empty()) {
        throw InvalidSpec("signs must be non-empty");
    }
    if (!(grid.tol > 0.0)) {
        throw InvalidSpec("tol must be > 0");
    }
    if (grid.max_terms == 0) {
        throw InvalidSpec("max_terms must be > 0");
    }
}

std::pair<Sign, Sign> parse_variant(const std::string& label) {
    if (label.size() == 5 && (label[0] == '+' || label[0] == '-') && label.substr(1, 2) == "nu" &&
        (label[3] == '+' || label[3] == '-') && label[4] == 'p') {
        return {label[0] == '+' ? Sign::plus : Sign::minus, label[3] == '+' ? Sign::plus : Sign::minus};
    }
    throw InvalidSpec("unknown variant '" + label + "' (expected +nu+p, +nu-p, -nu+p or -nu-p)");
}

GridConfig parse_grid(std::istream& in) {
    GridConfig grid;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidSpec("grid line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "nu_values") {
            grid.nu_values = parse_reals(key, value);
        } else if (key == "f_values") {
            grid.f_values = parse_reals(key, value);
        } else if (key == "x_values") {
            grid.x_values = parse_reals(key, value);
        } else if (key == "m_max") {
            grid.m_max = static_cast<unsigned>(parse_count(key, value));
        } else if (key == "p_max") {
            grid.p_max = static_cast<unsigned>(parse_count(key, value));
        } else if (key == "signs") {
            grid.signs.clear();
            for (const auto& label : split_list(value)) {
                grid.signs.push_back(parse_variant(label));
            }
        } else if (key == "tol") {
            grid.tol = parse_real(key, value);
        } else if (key == "max_terms") {
            grid.max_terms = parse_count(key, value);
        } else {
            throw InvalidSpec("grid line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    check(grid);
    return grid;
}

GridConfig load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpec("cannot open grid file '" + path + "'");
    }
    return parse_grid(in);
}

std::vector<SumSpec> expand(const GridConfig& grid) {
    std::vector<SumSpec> out;
    for (const auto& [sign_nu, sign_p] : grid.signs) {
        for (unsigned m = 0; m <= grid.m_max; ++m) {
            for (unsigned p = 0; p <= grid.p_max; ++p) {
                for (double nu : grid.nu_values) {
                    for (double f : grid.f_values) {
                        for (double x : grid.x_values) {
                            out.push_back({m, p, sign_nu, sign_p, nu, f, x});
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::string_view to_string(RecordStatus s) {
    switch (s) {
        case RecordStatus::pass:
            return "pass";
        case RecordStatus::fail:
            return "fail";
        case RecordStatus::skipped_invalid:
            return "skipped-invalid";
        case RecordStatus::evaluated:
            return "evaluated";
    }
    return "unknown";
}

double relative_error(double value, double reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

VerifyRecord verify_point(const SumSpec& spec, double tol, std::size_t max_terms) {
    VerifyRecord rec;
    rec.spec = spec;
    if (auto why = find_violation(spec, kGridPoleTolerance)) {
        rec.status = RecordStatus::skipped_invalid;
        rec.dispatch = *why;
        rec.closed = rec.lemma = rec.oracle = kNaN;
        rec.abs_err_closed = rec.rel_err_closed = rec.abs_err_lemma = rec.rel_err_lemma = kNaN;
        return rec;
    }
    const SeriesControl control{1e-16, max_terms};
    rec.dispatch = std::string(to_string(select_dispatch(spec)));
    try {
        const EvalResult oracle = oracle_sum(spec, control);
        rec.oracle = oracle.value;
        rec.terms_oracle = oracle.terms_used;
        rec.closed = closed_sum(spec, control).value;
        const EvalResult lemma = lemma_sum(spec, control);
        rec.lemma = lemma.value;
        rec.abs_err_closed = std::abs(rec.closed - rec.oracle);
        rec.rel_err_closed = relative_error(rec.closed, rec.oracle);
        rec.abs_err_lemma = std::abs(rec.lemma - rec.oracle);
        rec.rel_err_lemma = relative_error(rec.lemma, rec.oracle);
        const bool converged = oracle.status != SeriesStatus::max_terms_hit && lemma.status != SeriesStatus::max_terms_hit;
        // written so that NaN errors fail
        rec.status = converged && rec.rel_err_closed <= tol && rec.rel_err_lemma <= tol ? RecordStatus::pass
                                                                                          : RecordStatus::fail;
    } catch (const std::exception& e) {
        rec.status = RecordStatus::fail;
        rec.dispatch += std::string(": ") + e.what();
    }
    return rec;
}

VerifyRecord table_point(const SumSpec& spec, std::size_t max_terms) {
    VerifyRecord rec;
    rec.spec = spec;
    rec.has_oracle = false;
    rec.oracle = rec.abs_err_closed = rec.rel_err_closed = rec.abs_err_lemma = rec.rel_err_lemma = kNaN;
    if (auto why = find_violation(spec, kGridPoleTolerance)) {
        rec.status = RecordStatus::skipped_invalid;
        rec.dispatch = *why;
        rec.closed = rec.lemma = kNaN;
        return rec;
    }
    const SeriesControl control{1e-16, max_terms};
    rec.dispatch = std::string(to_string(select_dispatch(spec)));
    rec.status = RecordStatus::evaluated;
    try {
        rec.closed = closed_sum(spec, control).value;
    } catch (const std::exception& e) {
        rec.closed = kNaN;
        rec.dispatch += std::string(": ") + e.what();
    }
    try {
        rec.lemma = lemma_sum(spec, control).value;
    } catch (const std::exception& e) {
        rec.lemma = kNaN;
        rec.dispatch += std::string(": ") + e.what();
    }
    return rec;
}

std::vector<VerifyRecord> run_verify(const GridConfig& grid, unsigned threads) {
    return run_grid(grid, threads,
                    [&](const SumSpec& s) { return verify_point(s, grid.tol, grid.max_terms); });
}

std::vector<VerifyRecord> run_table(const GridConfig& grid, unsigned threads) {
    return run_grid(grid, threads, [&](const SumSpec& s) { return table_point(s, grid.max_terms); });
}

VerifySummary summarize(const std::vector<VerifyRecord>& records) {
    VerifySummary out;
    for (const auto& r : records) {
        switch (r.status) {
            case RecordStatus::pass:
            case RecordStatus::evaluated:
                ++out.passed;
                break;
            case RecordStatus::fail:
                ++out.failed;
                break;
            case RecordStatus::skipped_invalid:
                ++out.skipped;
                break;
        }
    }
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<VerifyRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const bool evaluated = r.status != RecordStatus::skipped_invalid;
        auto real = [&](double v, bool present) { return present ? format_real(v) : std::string(); };
        out << variant_label(r.spec) << ',' << r.spec.m << ',' << r.spec.p << ',' << format_real(r.spec.nu) << ','
            << format_real(r.spec.f) << ',' << format_real(r.spec.x) << ',' << csv_field(r.dispatch) << ','
            << real(r.closed, evaluated) << ',' << real(r.lemma, evaluated) << ','
            << real(r.oracle, evaluated && r.has_oracle) << ',' << real(r.rel_err_closed, evaluated && r.has_oracle)
            << ',' << real(r.rel_err_lemma, evaluated && r.has_oracle) << ','
            << (evaluated && r.has_oracle ? std::to_string(r.terms_oracle) : std::string()) << ','
            << to_string(r.status) << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<VerifyRecord>& records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        const bool evaluated = r.status != RecordStatus::skipped_invalid;
        auto real = [&](double v, bool present) -> nlohmann::ordered_json {
            if (!present || !std::isfinite(v)) {
                return nullptr;
            }
            return v;
        };
        nlohmann::ordered_json o;
        o["variant"] = variant_label(r.spec);
        o["m"] = r.spec.m;
        o["p"] = r.spec.p;
        o["nu"] = r.spec.nu;
        o["f"] = r.spec.f;
        o["x"] = r.spec.x;
        o["dispatch"] = r.dispatch;
        o["closed"] = real(r.closed, evaluated);
        o["lemma"] = real(r.lemma, evaluated);
        o["oracle"] = real(r.oracle, evaluated && r.has_oracle);
        o["rel_err_closed"] = real(r.rel_err_closed, evaluated && r.has_oracle);
        o["rel_err_lemma"] = real(r.rel_err_lemma, evaluated && r.has_oracle);
        o["terms_oracle"] = evaluated && r.has_oracle ? nlohmann::ordered_json(r.terms_oracle) : nullptr;
        o["status"] = std::string(to_string(r.status));
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace lagsum
