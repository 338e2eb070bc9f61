// Command-line front end: certifies infinitesimal projective rigidity of
// (p,q)-Dehn fillings of the figure-eight knot complement, either for a
// single pair or for a sweep over a coprime range.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rigcert/rigcheck.hpp"

namespace {

// Single-pair run: shapes from the file when given, else from the internal
// continuation oracle; always re-certified by the Krawczyk test.
int run_pair(rigcert::DehnSlope slope, const std::optional<std::string>& shapes_file, double eps,
             const std::optional<std::string>& out_path) {
    std::optional<std::pair<std::complex<double>, std::complex<double>>> approx;
    if (shapes_file) {
        for (const auto& rec : rigcert::load_shapes(*shapes_file))
            if (rec.slope == slope) {
                approx = std::make_pair(rec.z1, rec.z2);
                break;
            }
        if (!approx) {
            std::cerr << "no shapes for (" << slope.p << "," << slope.q << ") in " << *shapes_file
                      << "\n";
            return 1;
        }
    } else {
        approx = rigcert::shape_oracle(slope);
        if (!approx) {
            std::cerr << "shape oracle did not converge for (" << slope.p << "," << slope.q
                      << ")\n";
            return 1;
        }
    }

    rigcert::ShapeCertificate cert =
        rigcert::certify_with_retry(slope, approx->first, approx->second, eps);
    if (!cert.verified) {
        std::cerr << "shape boxes not verified by the Krawczyk test\n";
        return 1;
    }
    rigcert::RigidityRecord rec = rigcert::rigcheck(cert);
    std::string line = rigcert::format_record(rec);
    std::cout << line << "\n";
    if (!rec.reason.empty()) std::cerr << "reason: " << rec.reason << "\n";
    if (out_path) {
        std::ofstream out(*out_path, std::ios::trunc);
        if (!out) {
            std::cerr << "cannot open " << *out_path << "\n";
            return 1;
        }
        out << "# p q b1 b2 ratio s_lo s_hi\n" << line << "\n";
    }
    return rec.verdict == rigcert::Verdict::certified ? 0 : 1;
}

int run_range(int range, const std::optional<std::string>& shapes_file, double eps, int jobs,
              const std::optional<std::string>& out_path) {
    rigcert::SweepOptions opt;
    opt.max = range;
    opt.shapes_file = shapes_file;
    opt.eps = eps;
    opt.jobs = jobs;
    opt.out_path = out_path;
    rigcert::SweepSummary summary = rigcert::sweep(opt);
    if (!out_path)
        for (const auto& rec : summary.records) std::cout << rigcert::format_record(rec) << "\n";
    std::cerr << summary.records.size() << " pairs: " << summary.certified << " certified, "
              << summary.not_certified << " not certified, " << summary.inconclusive
              << " inconclusive\n";
    return summary.certified == static_cast<int>(summary.records.size()) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified rigidity checks for Dehn fillings of the figure-eight knot complement"};

    std::vector<int> pair;
    int range = 0;
    std::string shapes_file, out_path;
    double eps = 1e-15;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    auto* pair_opt = app.add_option("--pair", pair, "single (p, q) pair to certify")
                         ->expected(2);
    auto* range_opt =
        app.add_option("--range", range, "sweep all coprime non-exceptional (p, q) in [1, N]^2")
            ->check(CLI::PositiveNumber);
    pair_opt->excludes(range_opt);
    range_opt->excludes(pair_opt);
    app.add_option("--shapes", shapes_file,
                   "shape file (p q z1x z1y z2x z2y per line); default: internal oracle")
        ->check(CLI::ExistingFile);
    app.add_option("--epsilon", eps, "padding radius for the certified shape boxes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for the sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", out_path, "results file (header plus one record per pair)");

    CLI11_PARSE(app, argc, argv);

    std::optional<std::string> shapes =
        shapes_file.empty() ? std::nullopt : std::optional<std::string>(shapes_file);
    std::optional<std::string> out =
        out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);

    try {
        if (!pair.empty()) return run_pair({pair[0], pair[1]}, shapes, eps, out);
        if (range > 0) return run_range(range, shapes, eps, jobs, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "one of --pair or --range is required\n";
    return 1;
}
