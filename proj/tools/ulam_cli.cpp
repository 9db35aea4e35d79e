// Command-line front end: generate and cache sequences, classify steps,
// verify the lemma/growth suite, run the word-norm bound search, and emit
// gap and signal reports.
//
// Exit codes: 0 success (or all checks pass), 1 verification failure,
// 2 usage error, 3 resource/integrity failure.

#include <CLI11.hpp>

#include "ulam/errors.hpp"
#include "ulam/gaps.hpp"
#include "ulam/growth.hpp"
#include "ulam/io.hpp"
#include "ulam/sequence.hpp"
#include "ulam/signal.hpp"
#include "ulam/steps.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace ulam;

namespace {

// full round-trip decimal so report runs diff cleanly
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path default_dir() {
    if (const char* d = std::getenv("ULAM_CACHE_DIR")) return fs::path(d);
    return fs::path(".");
}

std::ostream& open_sink(std::optional<std::ofstream>& file, const std::string& out) {
    if (out.empty()) return std::cout;
    file.emplace(out, std::ios::trunc);
    if (!*file) throw ResourceError("cannot open " + out + " for writing");
    return *file;
}

int run_gen(std::uint64_t count, std::uint64_t limit, std::uint64_t first,
            std::uint64_t second, std::string out, const std::string& text_out) {
    const GenerationConfig cfg = count > 0 ? GenerationConfig::by_count(count, first, second)
                                           : GenerationConfig::by_limit(limit, first, second);
    const UlamSequence seq = generate_fast(cfg);
    if (out.empty()) {
        std::ostringstream name;
        name << "ulam_" << first << "_" << second << "_"
             << (count > 0 ? "n" : "v") << (count > 0 ? count : limit) << ".bin";
        out = (default_dir() / name.str()).string();
    }
    write_cache(out, seq);
    if (!text_out.empty()) write_text(text_out, seq);
    std::cout << "wrote " << seq.terms.size() << " terms (last " << seq.terms.back()
              << ") to " << out << "\n";
    return 0;
}

int run_steps(const std::string& in, const std::string& format, const std::string& out) {
    const UlamSequence seq = read_cache(in);
    const StepTrace trace = classify_steps(seq);
    std::size_t tally[4] = {0, 0, 0, 0};
    for (const auto& s : trace.steps) ++tally[static_cast<int>(s.type)];

    std::optional<std::ofstream> file;
    std::ostream& os = open_sink(file, out);
    if (format == "json") {
        os << "{\"first_n\":" << trace.first_n << ",\"tallies\":{\"eggleton\":" << tally[0]
           << ",\"type1\":" << tally[1] << ",\"type2\":" << tally[2]
           << ",\"other\":" << tally[3] << "},\"steps\":[";
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            const auto& s = trace.steps[k];
            if (k) os << ",";
            os << "{\"n\":" << trace.first_n + k << ",\"kind\":\"" << to_string(s.type)
               << "\",\"i\":" << s.i << ",\"j\":" << s.j << "}";
        }
        os << "]}\n";
    } else {
        os << "# eggleton=" << tally[0] << " type1=" << tally[1] << " type2=" << tally[2]
           << " other=" << tally[3] << "\n";
        os << "n,kind,i,j\n";
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            const auto& s = trace.steps[k];
            os << trace.first_n + k << "," << to_string(s.type) << "," << s.i << "," << s.j
               << "\n";
        }
    }
    return 0;
}

int run_verify(const std::string& in) {
    const UlamSequence seq = read_cache(in);
    bool all = true;
    auto line = [&](const std::string& name, bool pass, const std::string& detail = "") {
        std::cout << name << ": " << (pass ? "pass" : "FAIL");
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        all = all && pass;
    };

    const auto mono = first_monotonicity_violation(seq);
    line("monotonicity", !mono, mono ? "first violation at n=" + std::to_string(*mono) : "");
    const auto egg = first_eggleton_violation(seq);
    line("eggleton inequality", !egg, egg ? "first violation at n=" + std::to_string(*egg) : "");

    const LemmaReport rep = verify_lemmas(seq);
    line("lemma: eggleton forces type coincidence", rep.eggleton_forces_coincidence.pass,
         rep.eggleton_forces_coincidence.pass
             ? ""
             : "n=" + std::to_string(rep.eggleton_forces_coincidence.first_violation_n));
    line("lemma: non-eggleton dominated by types", rep.dominated_by_types.pass,
         rep.dominated_by_types.pass
             ? ""
             : "n=" + std::to_string(rep.dominated_by_types.first_violation_n));
    line("lemma: no consecutive eggleton (n >= 4)", rep.no_consecutive_eggleton.pass,
         rep.early_consecutive_eggleton_note ? "n=3,4 pair below window noted" : "");

    bool dom = true;
    std::string detail;
    try {
        const MajorantSequence b = majorant(classify_steps(seq), seq);
        detail = "exact through n=" + std::to_string(b.exact.size());
    } catch (const DataError& e) {
        dom = false;
        detail = e.what();
    }
    line("majorant domination", dom, detail);

    const auto g1454 = growth_check(seq, 1.454, 1);
    line("growth a_n <= 1.454^n", g1454.pass,
         g1454.pass ? "" : "first violation at n=" + std::to_string(g1454.first_violation_n));
    const auto g1466 = growth_check(seq, 1.466, 1);
    line("growth a_n <= 1.466^n", g1466.pass,
         g1466.pass ? "" : "first violation at n=" + std::to_string(g1466.first_violation_n));

    return all ? 0 : 1;
}

int run_bound(int length, const std::string& norm, unsigned threads, int lower_period,
              bool no_prune, const std::string& out) {
    NormKind kind = NormKind::Spectral;
    if (norm == "frobenius") kind = NormKind::Frobenius;
    else if (norm == "rowsum") kind = NormKind::RowSum;
    else if (norm != "spectral") throw CLI::ValidationError("--norm", "unknown norm " + norm);

    const BoundResult r = best_bound(length, kind, threads, !no_prune);
    std::optional<std::ofstream> file;
    std::ostream& os = open_sink(file, out);
    os << "{\"L\":" << r.length << ",\"norm\":\"" << to_string(r.kind) << "\",\"bound\":"
       << fmt(r.bound) << ",\"word\":\"" << r.argmax.digits() << "\",\"words_examined\":"
       << r.words_examined << "}\n";
    if (lower_period > 0) {
        const SpectralEstimate e = periodic_lower_bound(lower_period);
        os << "{\"max_period\":" << lower_period << ",\"value\":" << fmt(e.value)
           << ",\"word\":\"" << e.word.digits() << "\",\"period\":" << e.word.length()
           << ",\"method\":\"" << e.method << "\"}\n";
    }
    return 0;
}

int run_gaps(const std::string& in, double c, const std::string& grid_arg,
             const std::string& out) {
    const UlamSequence seq = read_cache(in);
    std::vector<std::size_t> grid;
    if (grid_arg.empty()) {
        grid = default_gap_grid(seq.size() - 1);
    } else {
        std::stringstream ss(grid_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const std::size_t n = std::stoull(tok);
            if (n < 3 || n >= seq.size())
                throw CLI::ValidationError("--grid", "grid point " + tok +
                                                         " outside [3, count)");
            grid.push_back(n);
        }
    }
    std::optional<std::ofstream> file;
    std::ostream& os = open_sink(file, out);
    os << "n,delta,c_log_n_over_n,verdict,X,candidate_sums,analytic_X_bound\n";
    for (const GapReport& rep : gap_report(seq, grid, c)) {
        os << rep.n << "," << fmt(rep.delta) << "," << fmt(rep.rhs) << ","
           << (rep.small_gap_verdict ? "pass" : "fail") << "," << rep.blocking << ","
           << rep.candidate_sums << "," << fmt(rep.analytic_x_bound) << "\n";
    }
    return 0;
}

int run_signal(const std::string& in, std::size_t n, std::size_t grid_points,
               double alpha_min, double alpha_max, std::size_t bins,
               const std::string& out_dir_arg) {
    const UlamSequence seq = read_cache(in);
    const std::size_t used = n == 0 ? seq.size() : std::min(n, seq.size());
    if (grid_points == 0) {
        // Nyquist-guarded density: spacing <= 1 / (4 a_N)
        const double width = alpha_max - alpha_min;
        grid_points =
            static_cast<std::size_t>(std::ceil(width * 4.0 * static_cast<double>(seq.a(used)))) +
            1;
    }
    const fs::path dir = out_dir_arg.empty() ? default_dir() : fs::path(out_dir_arg);
    fs::create_directories(dir);

    const SignalScanResult res = scan(seq, alpha_min, alpha_max, grid_points, used, 0);
    if (!res.nyquist_ok)
        std::cerr << "warning: grid spacing " << fmt(res.spacing())
                  << " exceeds the 1/(4 a_N) guard; the peak may be missed\n";

    {
        std::ofstream csv(dir / "signal_scan.csv", std::ios::trunc);
        csv << "alpha,S\n";
        for (std::size_t i = 0; i < res.points; ++i)
            csv << fmt(res.alpha_at(i)) << "," << fmt(res.s_values[i]) << "\n";
        if (!csv) throw ResourceError("write failed for signal_scan.csv");
    }
    {
        const ResidueHistogram h = residue_histogram(seq, res.alpha_star, bins, used);
        std::ofstream csv(dir / "signal_histogram.csv", std::ios::trunc);
        csv << "bin_low,bin_high,count\n";
        const double w = 2.0 * std::numbers::pi / static_cast<double>(bins);
        for (std::size_t b = 0; b < bins; ++b)
            csv << fmt(w * static_cast<double>(b)) << "," << fmt(w * static_cast<double>(b + 1))
                << "," << h.counts[b] << "\n";
        if (!csv) throw ResourceError("write failed for signal_histogram.csv");
    }
    const std::string peak = "{\"alpha_star\":" + fmt(res.alpha_star) +
                             ",\"S\":" + fmt(res.s_star) +
                             ",\"N\":" + std::to_string(res.n_used) + "}";
    {
        std::ofstream js(dir / "signal_peak.json", std::ios::trunc);
        js << peak << "\n";
        if (!js) throw ResourceError("write failed for signal_peak.json");
    }
    std::cout << peak << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational laboratory for the Ulam sequence"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a sequence and write the binary cache");
    std::uint64_t count = 0, limit = 0, first = 1, second = 2;
    std::string out, text_out;
    auto* count_opt = gen->add_option("--count", count, "number of terms");
    auto* limit_opt = gen->add_option("--limit", limit, "value limit");
    count_opt->excludes(limit_opt);
    gen->add_option("--first", first, "first seed term");
    gen->add_option("--second", second, "second seed term");
    gen->add_option("--out", out, "output cache path (default under ULAM_CACHE_DIR)");
    gen->add_option("--text-out", text_out, "also write a newline-delimited text export");

    // steps
    auto* steps = app.add_subcommand("steps", "classify steps and tally kinds");
    std::string steps_in, steps_format = "csv", steps_out;
    steps->add_option("--in", steps_in, "cache path")->required();
    steps->add_option("--format", steps_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    steps->add_option("--out", steps_out, "write report here instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "run the lemma, majorant and growth checks");
    std::string verify_in;
    verify->add_option("--in", verify_in, "cache path")->required();

    // bound
    auto* bound = app.add_subcommand("bound", "norm bound over admissible words");
    int length = 15, lower_period = 0;
    unsigned threads = 1;
    std::string norm = "spectral", bound_out;
    bool no_prune = false;
    bound->add_option("--length", length, "word length L")->required();
    bound->add_option("--norm", norm, "spectral, frobenius or rowsum")
        ->check(CLI::IsMember({"spectral", "frobenius", "rowsum"}));
    bound->add_option("--threads", threads, "worker threads (0 = hardware)");
    bound->add_option("--lower-period", lower_period, "also report the periodic lower bound");
    bound->add_flag("--no-prune", no_prune, "disable search pruning");
    bound->add_option("--out", bound_out, "write JSON here instead of stdout");

    // gaps
    auto* gaps = app.add_subcommand("gaps", "small-gap report (delta, X, tail counts)");
    std::string gaps_in, grid_arg, gaps_out;
    double c = 7.0;
    gaps->add_option("--in", gaps_in, "cache path")->required();
    gaps->add_option("--c", c, "constant in c log(n)/n");
    gaps->add_option("--grid", grid_arg, "comma-separated n values (default powers of 2 and 10)");
    gaps->add_option("--out", gaps_out, "write CSV here instead of stdout");

    // signal
    auto* signal = app.add_subcommand("signal", "hidden-frequency scan and histogram");
    std::string signal_in, out_dir;
    std::size_t sig_n = 0, grid_points = 0, bins = 32;
    double alpha_min = 0.1, alpha_max = std::numbers::pi;
    signal->add_option("--in", signal_in, "cache path")->required();
    signal->add_option("--n", sig_n, "use only the first N terms");
    signal->add_option("--grid-points", grid_points, "grid size (default: Nyquist-guarded)");
    signal->add_option("--alpha-min", alpha_min, "scan window start");
    signal->add_option("--alpha-max", alpha_max, "scan window end (<= pi)");
    signal->add_option("--bins", bins, "histogram bins");
    signal->add_option("--out-dir", out_dir, "directory for CSV/JSON artifacts");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            if ((count == 0) == (limit == 0))
                throw CLI::ValidationError("gen", "exactly one of --count/--limit required");
            return run_gen(count, limit, first, second, out, text_out);
        }
        if (steps->parsed()) return run_steps(steps_in, steps_format, steps_out);
        if (verify->parsed()) return run_verify(verify_in);
        if (bound->parsed())
            return run_bound(length, norm, threads, lower_period, no_prune, bound_out);
        if (gaps->parsed()) return run_gaps(gaps_in, c, grid_arg, gaps_out);
        if (signal->parsed())
            return run_signal(signal_in, sig_n, grid_points, alpha_min, alpha_max, bins, out_dir);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) { // resource, overflow, convergence
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
