// renyiwalk: exact Renyi entropies of random walks on groups.
//
// Subcommands:
//   curve     per-alpha limit estimates over an alpha grid
//   converge  per-n series for one alpha
//   verify    property suites (group/measure/renyi/free/lamplighter/tilt)
//   figure1   closed-form curves + finite-n bounds for the two model walks
//
// Exit codes: 0 ok, 1 internal error, 2 usage/spec error, 3 resource budget.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "renyiwalk/asymptotics.hpp"
#include "renyiwalk/numeric.hpp"
#include "renyiwalk/verify.hpp"
#include "renyiwalk/walkspec.hpp"

namespace rw = renyiwalk;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

unsigned default_threads() {
    if (const char* env = std::getenv("RENYIWALK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

rw::AlphaParam snap_alpha(double a) {
    if (std::abs(a) <= 1e-12) return rw::AlphaParam::zero();
    if (std::abs(a - 1.0) <= 1e-12) return rw::AlphaParam::one();
    return rw::AlphaParam::finite(a);
}

/// "lo:hi:step" inclusive of both endpoints within 1e-12; "1" and "inf"
/// are accepted as single values.
std::vector<rw::AlphaParam> parse_alpha_grid(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return {rw::AlphaParam::parse(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw rw::WalkSpecError("alpha grid must be lo:hi:step");
    double lo = 0, hi = 0, step = 0;
    try {
        lo = std::stod(text.substr(0, c1));
        hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw rw::WalkSpecError("bad alpha grid: '" + text + "'");
    }
    if (!(step > 0) || hi < lo - 1e-12)
        throw rw::WalkSpecError("alpha grid needs step > 0 and hi >= lo");
    std::vector<rw::AlphaParam> grid;
    for (int i = 0;; ++i) {
        const double a = lo + i * step;
        if (a > hi + 1e-12) break;
        grid.push_back(snap_alpha(a));
    }
    return grid;
}

rw::SeriesMethod resolve_method(const std::string& name, const rw::Walk& walk) {
    if (name == "auto") return walk.default_method();
    const rw::SeriesMethod m = rw::parse_method(name);
    return m;
}

struct CurveRow {
    rw::AlphaParam alpha = rw::AlphaParam::zero();
    int n_max = 0;
    double fekete_upper = 0;
    double cesaro_estimate = 0;
    std::optional<double> closed_form;
    rw::SeriesMethod method = rw::SeriesMethod::Generic;
    double runtime_ms = 0;
    bool truncated = false;
};

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows, double unit) {
    os << "alpha,n_max,fekete_upper,cesaro_estimate,closed_form,method,runtime_ms\n";
    for (const auto& r : rows) {
        os << r.alpha.str() << ',' << r.n_max << ',' << num(r.fekete_upper / unit) << ','
           << num(r.cesaro_estimate / unit) << ',';
        if (r.closed_form) os << num(*r.closed_form / unit);
        os << ',' << rw::method_name(r.method) << ',' << num(r.runtime_ms) << '\n';
    }
}

json curve_json(const std::vector<CurveRow>& rows, double unit) {
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["alpha"] = r.alpha.str();
        o["n_max"] = r.n_max;
        o["fekete_upper"] = r.fekete_upper / unit;
        o["cesaro_estimate"] = r.cesaro_estimate / unit;
        if (r.closed_form)
            o["closed_form"] = *r.closed_form / unit;
        else
            o["closed_form"] = nullptr;
        o["method"] = std::string(rw::method_name(r.method));
        o["runtime_ms"] = r.runtime_ms;
        arr.push_back(std::move(o));
    }
    return arr;
}

/// Per-alpha work items on a small pool; results land in grid order.
std::vector<CurveRow> compute_curve(const rw::Walk& walk,
                                    const std::vector<rw::AlphaParam>& grid, int n_max,
                                    rw::SeriesMethod method, unsigned threads) {
    std::vector<CurveRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const rw::EntropySeries s =
                    rw::entropy_series(walk, grid[i], n_max, method);
                const auto t1 = std::chrono::steady_clock::now();
                CurveRow row;
                row.alpha = grid[i];
                row.n_max = n_max;
                row.fekete_upper = s.fekete_upper;
                row.cesaro_estimate = s.cesaro_estimate;
                if (auto cf = walk.closed_form(grid[i])) row.closed_form = cf->value;
                row.method = method;
                row.runtime_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                row.truncated = s.truncated;
                rows[i] = std::move(row);
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                error = e.what();
                failed.store(true);
            }
        }
    };

    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(error);
    return rows;
}

int cmd_curve(const std::string& spec_path, const std::string& alphas, int n_max,
              const std::string& method_name_, const std::string& out_path,
              const std::string& format, bool bits, unsigned threads) {
    const rw::Walk walk = rw::build_walk(rw::parse_walk_spec_file(spec_path));
    const auto grid = parse_alpha_grid(alphas);
    const rw::SeriesMethod method = resolve_method(method_name_, walk);
    const auto rows = compute_curve(walk, grid, n_max, method, threads);
    const double unit = bits ? rw::kLn2 : 1.0;

    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    if (format == "csv")
        write_curve_csv(os, rows, unit);
    else
        os << curve_json(rows, unit).dump(2) << '\n';

    for (const auto& r : rows)
        if (r.truncated) return kExitBudget;
    return kExitOk;
}

int cmd_converge(const std::string& spec_path, const std::string& alpha_text, int n_max,
                 const std::string& method_name_, const std::string& out_path,
                 const std::string& format, bool bits, std::size_t support_cap) {
    const rw::Walk walk = rw::build_walk(rw::parse_walk_spec_file(spec_path));
    const rw::AlphaParam alpha = rw::AlphaParam::parse(alpha_text);
    const rw::SeriesMethod method = resolve_method(method_name_, walk);
    const rw::EntropySeries s =
        rw::entropy_series(walk, alpha, n_max, method, support_cap);
    const double unit = bits ? rw::kLn2 : 1.0;

    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    if (format == "csv") {
        os << "n,H,H_over_n,cesaro\n";
        for (const auto& r : s.records)
            os << r.n << ',' << num(r.H / unit) << ',' << num(r.H_over_n / unit) << ','
               << num(r.cesaro / unit) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : s.records) {
            json o;
            o["n"] = r.n;
            o["H"] = r.H / unit;
            o["H_over_n"] = r.H_over_n / unit;
            o["cesaro"] = r.cesaro / unit;
            arr.push_back(std::move(o));
        }
        os << arr.dump(2) << '\n';
    }
    return s.truncated ? kExitBudget : kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& json_path) {
    std::vector<rw::SuiteResult> results;
    if (suite == "all")
        results = rw::run_all_suites();
    else
        results.push_back(rw::run_suite(suite));

    bool all_pass = true;
    for (const auto& s : results) {
        int passed = 0;
        for (const auto& c : s.checks) passed += c.pass ? 1 : 0;
        std::cout << (s.pass ? "PASS" : "FAIL") << " suite " << s.suite << " (" << passed
                  << '/' << s.checks.size() << " checks)\n";
        if (!s.pass) {
            all_pass = false;
            for (const auto& c : s.checks)
                if (!c.pass)
                    std::cerr << "  FAIL " << s.suite << ": " << c.name
                              << (c.detail.empty() ? "" : " [" + c.detail + "]") << '\n';
        }
    }
    if (!json_path.empty()) {
        json j;
        j["pass"] = all_pass;
        j["seed"] = rw::kVerifySeed;
        j["suites"] = json::array();
        for (const auto& s : results) {
            json js;
            js["name"] = s.suite;
            js["pass"] = s.pass;
            js["checks"] = json::array();
            for (const auto& c : s.checks)
                js["checks"].push_back(
                    {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            j["suites"].push_back(std::move(js));
        }
        std::ofstream os(json_path);
        if (!os) throw std::runtime_error("cannot open output file: " + json_path);
        os << j.dump(2) << '\n';
    }
    return all_pass ? kExitOk : kExitInternal;
}

int cmd_figure1(const std::string& out_dir, unsigned threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<rw::AlphaParam> grid;
    for (int i = 1; i <= 400; ++i) grid.push_back(snap_alpha(0.01 * i));

    {
        const rw::Walk walk = rw::Walk::free_srw(2, rw::WeightMode::LogFloat);
        const int n = 2048;
        const auto bound = rw::entropy_at(walk, grid, n, rw::SeriesMethod::FreeDp, threads);
        std::ofstream os(fs::path(out_dir) / "free_f2.csv");
        if (!os) throw std::runtime_error("cannot write free_f2.csv");
        os << "alpha,closed_form,finite_n_bound,n\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << grid[i].str() << ',' << num(rw::free_h_closed(2, grid[i]).value) << ','
               << num(bound[i] / n) << ',' << n << '\n';
    }
    {
        const rw::Walk walk = rw::Walk::sws(0.0, rw::WeightMode::LogFloat);
        const int n = 128;
        const auto bound = rw::entropy_at(walk, grid, n, rw::SeriesMethod::SwsDp, threads);
        std::ofstream os(fs::path(out_dir) / "sws.csv");
        if (!os) throw std::runtime_error("cannot write sws.csv");
        os << "alpha,closed_form,finite_n_bound,n\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << grid[i].str() << ',' << num(rw::sws_h_closed(grid[i]).value) << ','
               << num(bound[i] / n) << ',' << n << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Renyi entropies of random walks on groups"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads,
                   "worker threads (default: RENYIWALK_THREADS or hardware)");
    std::uint64_t seed = rw::kVerifySeed;
    app.add_option("--seed", seed,
                   "reserved; property suites use the fixed documented seed");

    auto* curve = app.add_subcommand("curve", "limit estimates over an alpha grid");
    std::string c_spec, c_alphas, c_method = "auto", c_out, c_format = "csv";
    int c_n = 0;
    bool c_bits = false;
    curve->add_option("--spec", c_spec, "walk spec file")->required();
    curve->add_option("--alphas", c_alphas, "grid lo:hi:step, or one of 0/1/inf")->required();
    curve->add_option("--n", c_n, "series length per alpha")->required();
    curve->add_option("--method", c_method, "auto|generic|free-dp|sws-dp");
    curve->add_option("--out", c_out, "output file")->required();
    curve->add_option("--format", c_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    curve->add_flag("--bits", c_bits, "report entropies in bits");

    auto* conv = app.add_subcommand("converge", "per-n series for one alpha");
    std::string v_spec, v_alpha, v_method = "auto", v_out, v_format = "csv";
    int v_n = 0;
    bool v_bits = false;
    std::size_t v_cap = rw::kDefaultSupportCap;
    conv->add_option("--spec", v_spec, "walk spec file")->required();
    conv->add_option("--alpha", v_alpha, "alpha value (0, 1, inf, or positive real)")
        ->required();
    conv->add_option("--n-max", v_n, "series length")->required();
    conv->add_option("--method", v_method, "auto|generic|free-dp|sws-dp");
    conv->add_option("--out", v_out, "output file")->required();
    conv->add_option("--format", v_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    conv->add_flag("--bits", v_bits, "report entropies in bits");
    conv->add_option("--support-cap", v_cap, "generic engine atom budget");

    auto* ver = app.add_subcommand("verify", "run property suites");
    std::string s_suite = "all", s_json;
    ver->add_option("--suite", s_suite, "all|group|measure|renyi|free|lamplighter|tilt")
        ->check(CLI::IsMember(
            {"all", "group", "measure", "renyi", "free", "lamplighter", "tilt"}));
    ver->add_option("--json", s_json, "also write a machine-readable report");

    auto* fig = app.add_subcommand("figure1", "model-walk curves as CSV");
    std::string f_out;
    fig->add_option("--out", f_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (curve->parsed())
            return cmd_curve(c_spec, c_alphas, c_n, c_method, c_out, c_format, c_bits,
                             threads);
        if (conv->parsed())
            return cmd_converge(v_spec, v_alpha, v_n, v_method, v_out, v_format, v_bits,
                                v_cap);
        if (ver->parsed()) return cmd_verify(s_suite, s_json);
        if (fig->parsed()) return cmd_figure1(f_out, threads);
    } catch (const rw::WalkSpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rw::SupportCapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
