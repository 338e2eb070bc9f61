#pragma once

// Per-slope rigidity verdicts, the batch sweep, and text output in the
// tab-separated record format.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "rigcert/errors.hpp"
#include "rigcert/fox.hpp"
#include "rigcert/shapes.hpp"

namespace rigcert {

enum class Verdict {
    certified,      // b2 true
    not_certified,  // rank-8 check ran and failed: the method does not apply
    inconclusive    // enclosures too wide or verification machinery failed
};

// b2 = true is a sound certificate of infinitesimal projective rigidity of
// the filled manifold; anything else means "not certified", never
// "not rigid".
struct RigidityRecord {
    DehnSlope slope;
    bool b1 = false;                 // rank-8 check verified
    bool b2 = false;                 // slope excludes 0 and -q/p
    double ratio = 0.0;              // -q/p
    std::optional<RInterval> s_u;    // slope enclosure; empty = inconclusive
    Verdict verdict = Verdict::inconclusive;
    std::string reason;              // failure detail, empty when certified
};

// Runs the full verification pipeline on one certified shape pair.
inline RigidityRecord rigcheck(const ShapeCertificate& cert) {
    const DehnSlope slope = cert.slope;
    if (slope.p < 1 || slope.q < 1) throw std::invalid_argument("rigcheck needs p, q >= 1");
    if (!slope.coprime()) throw std::invalid_argument("rigcheck needs gcd(p, q) = 1");
    if (is_exceptional(slope)) throw std::invalid_argument("rigcheck rejects exceptional slopes");
    if (!cert.verified) throw std::invalid_argument("rigcheck needs Krawczyk-verified shapes");

    RigidityRecord rec;
    rec.slope = slope;
    rec.ratio = -static_cast<double>(slope.q) / static_cast<double>(slope.p);
    bool rank_verified = false;
    try {
        CohomologyFrame f = build_frame(slope, cert.z1, cert.z2, &rank_verified);
        rec.b1 = true;
        RInterval s = slope_enclosure(f.a_u, f.zul);
        rec.s_u = s;
        RInterval ratio_iv =
            RInterval::exact(-static_cast<double>(slope.q)) / RInterval::exact(slope.p);
        rec.b2 = s.finite() && !s.contains_zero() && !overlaps(s, ratio_iv);
        if (rec.b2) {
            rec.verdict = Verdict::certified;
        } else {
            rec.verdict = Verdict::inconclusive;
            rec.reason = "slope enclosure does not separate {0, -q/p}";
        }
    } catch (const RankCheckFailed& e) {
        rec.b1 = false;
        rec.verdict = Verdict::not_certified;
        rec.reason = e.what();
    } catch (const Error& e) {
        rec.b1 = rank_verified; // a verification step failed; b1 only if its gate passed
        rec.verdict = Verdict::inconclusive;
        rec.reason = e.what();
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Record formatting: p q b1 b2 ratio s_lo s_hi, tab separated, 17
// significant digits.  The slope endpoints are nudged one float outward
// before printing so the decimal interval still encloses s_u.

namespace detail {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline std::string format_record(const RigidityRecord& r) {
    std::string line = std::to_string(r.slope.p) + "\t" + std::to_string(r.slope.q) + "\t" +
                       (r.b1 ? "1" : "0") + "\t" + (r.b2 ? "1" : "0") + "\t" +
                       detail::fmt17(r.ratio) + "\t";
    if (r.s_u && r.s_u->finite()) {
        line += detail::fmt17(detail::next_down(r.s_u->lo)) + "\t" +
                detail::fmt17(detail::next_up(r.s_u->hi));
    } else {
        line += "INCONCLUSIVE";
    }
    return line;
}

// ---------------------------------------------------------------------------
// Batch sweep over coprime non-exceptional pairs in [1, max]^2.

inline std::vector<DehnSlope> enumerate_slopes(int max) {
    std::vector<DehnSlope> out;
    for (int p = 1; p <= max; ++p)
        for (int q = 1; q <= max; ++q) {
            DehnSlope s{p, q};
            if (s.coprime() && !is_exceptional(s)) out.push_back(s);
        }
    return out;
}

struct SweepOptions {
    int max = 60;
    std::optional<std::string> shapes_file; // else the internal oracle
    double eps = 1e-15;
    int jobs = 1;
    std::optional<std::string> out_path;
};

struct SweepSummary {
    std::vector<RigidityRecord> records; // (p,q)-lexicographic
    int certified = 0;
    int not_certified = 0;
    int inconclusive = 0;
};

// Certification with a small retry ladder: a shape approximation good to
// ~1e-15 certifies at the requested eps, but a slightly worse one may need
// a wider box.  Widening never harms soundness; the Krawczyk test re-proves
// containment each time.
inline ShapeCertificate certify_with_retry(DehnSlope slope, std::complex<double> z1,
                                           std::complex<double> z2, double eps) {
    ShapeCertificate cert = certify_shapes(slope, z1, z2, eps);
    for (int widen = 0; widen < 2 && !cert.verified; ++widen) {
        eps *= 10.0;
        cert = certify_shapes(slope, z1, z2, eps);
    }
    return cert;
}

inline SweepSummary sweep(const SweepOptions& opt) {
    if (opt.max < 1) throw std::invalid_argument("sweep range must be >= 1");
    std::vector<DehnSlope> slopes = enumerate_slopes(opt.max);

    std::unordered_map<long long, ShapeFileRecord> from_file;
    if (opt.shapes_file) {
        for (const auto& rec : load_shapes(*opt.shapes_file))
            from_file[(static_cast<long long>(rec.slope.p) << 32) | static_cast<unsigned>(rec.slope.q)] = rec;
    }

    SweepSummary summary;
    summary.records.resize(slopes.size());

    auto run_one = [&](size_t idx) {
        DehnSlope slope = slopes[idx];
        RigidityRecord rec;
        rec.slope = slope;
        rec.ratio = -static_cast<double>(slope.q) / static_cast<double>(slope.p);
        std::optional<std::pair<std::complex<double>, std::complex<double>>> approx;
        if (opt.shapes_file) {
            auto it = from_file.find((static_cast<long long>(slope.p) << 32) |
                                     static_cast<unsigned>(slope.q));
            if (it != from_file.end()) approx = std::make_pair(it->second.z1, it->second.z2);
            else rec.reason = "no shapes for this pair in the file";
        } else {
            approx = shape_oracle(slope);
            if (!approx) rec.reason = "shape oracle did not converge";
        }
        if (approx) {
            try {
                ShapeCertificate cert =
                    certify_with_retry(slope, approx->first, approx->second, opt.eps);
                if (cert.verified) {
                    rec = rigcheck(cert);
                } else {
                    rec.reason = "shape boxes not verified by the Krawczyk test";
                }
            } catch (const Error& e) {
                rec.reason = e.what();
            }
        }
        summary.records[idx] = rec;
    };

    int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || slopes.size() <= 1) {
        for (size_t i = 0; i < slopes.size(); ++i) run_one(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < slopes.size(); i = next.fetch_add(1)) run_one(i);
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(jobs, static_cast<int>(slopes.size()));
        pool.reserve(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& rec : summary.records) {
        switch (rec.verdict) {
            case Verdict::certified: ++summary.certified; break;
            case Verdict::not_certified: ++summary.not_certified; break;
            case Verdict::inconclusive: ++summary.inconclusive; break;
        }
    }

    if (opt.out_path) {
        std::ofstream out(*opt.out_path, std::ios::trunc);
        if (!out) throw Error("cannot open results file: " + *opt.out_path);
        out << "# p q b1 b2 ratio s_lo s_hi\n";
        for (const auto& rec : summary.records) out << format_record(rec) << "\n";
    }
    return summary;
}

} // namespace rigcert
