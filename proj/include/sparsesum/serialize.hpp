#pragma once

// JSON and CSV projections of the result types. Big integers always travel as
// decimal strings; doubles are written in shortest round-trip form so the CSV
// and JSON views of one run carry identical numbers.

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsesum/bound_check.hpp"
#include "sparsesum/common_zeros.hpp"
#include "sparsesum/distribution.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/intpoly.hpp"
#include "sparsesum/moments.hpp"
#include "sparsesum/subgroup_counts.hpp"

namespace sparsesum {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::AtMost: return "<=";
        case Relation::AtLeast: return ">=";
        case Relation::StrictlyLess: return "<";
    }
    return "?";
}

inline json coeffs_to_json(const IntPoly& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) {
        arr.push_back(to_decimal(c));
    }
    return arr;
}

inline json to_json(const BoundCheck& c) {
    json j;
    j["name"] = c.name;
    j["kind"] = to_string(c.kind);
    j["relation"] = to_string(c.relation);
    j["observed"] = c.observed;
    j["bound"] = c.bound;
    j["ratio"] = c.ratio;
    j["passed"] = c.passed;
    j["skipped"] = c.skipped;
    if (!c.note.empty()) {
        j["note"] = c.note;
    }
    return j;
}

inline json to_json(const ComplexValue& v) {
    return json{{"re", v.re}, {"im", v.im}, {"abs", v.abs()}, {"abs_error_bound", v.abs_error_bound},
                {"terms", v.terms}};
}

inline json to_json(const ZeroCertificate& z) {
    json j;
    j["p"] = z.p;
    j["r"] = z.r;
    j["s"] = z.s;
    j["N"] = z.N;
    j["zeros"] = z.zeros;
    j["excluded_zeros"] = z.excluded_zeros;
    j["D_coeffs"] = coeffs_to_json(z.D);
    j["R_decimal_string"] = to_decimal(z.R);
    j["divisibility_ok"] = z.divisibility_ok;
    return j;
}

inline json to_json(const ResultantCertificate& c) {
    json j;
    j["r"] = c.r;
    j["s"] = c.s;
    j["D_coeffs"] = coeffs_to_json(c.D);
    j["phi_r_coeffs"] = coeffs_to_json(c.phi_r);
    j["phi_s_coeffs"] = coeffs_to_json(c.phi_s);
    j["R_decimal_string"] = to_decimal(c.R);
    j["growth"] = to_json(c.growth);
    return j;
}

inline json to_json(const ExceptionalPrimes& e) {
    json j;
    j["r"] = e.r;
    j["s"] = e.s;
    j["P_max"] = e.P_max;
    j["primes"] = e.primes;
    j["violations"] = e.violations;
    j["cross_check_ok"] = e.cross_check_ok;
    j["count_monitor"] = to_json(e.count_monitor);
    return j;
}

inline json to_json(const MomentReport& m) {
    json j;
    j["p"] = m.p;
    j["r"] = m.r;
    j["s"] = m.s;
    j["M_float"] = json{{"re", m.M_float.real()}, {"im", m.M_float.imag()}};
    j["Q_exact"] = to_decimal(m.Q_exact);
    j["N"] = m.N;
    j["first_moment"] = json{{"re", m.first_moment.real()}, {"im", m.first_moment.imag()}};
    j["second_moment_float"] = m.second_moment_float;
    j["third_abs_moment"] = m.third_abs_moment;
    j["identities_ok"] = m.identities_ok;
    json checks = json::array();
    for (const auto& c : m.checks) {
        checks.push_back(to_json(c));
    }
    j["checks"] = checks;
    return j;
}

inline json to_json(const CongruenceCount& c, const BoundCheck& check) {
    json j;
    j["p"] = c.p;
    j["H"] = c.H;
    j["K"] = c.K;
    j["V_set"] = c.V_set;
    j["v_max"] = c.v_max;
    j["N"] = c.N;
    j["check"] = to_json(check);
    return j;
}

inline json to_json(const Histogram& h) {
    return json{{"edges", h.edges}, {"counts", h.counts}};
}

inline json to_json(const SemicircleExperiment& e) {
    json j;
    j["p"] = e.p;
    j["seed"] = e.seed;
    j["mode"] = e.mode == SamplingMode::Random ? "RANDOM" : "EXHAUSTIVE";
    j["samples"] = e.rows.size();
    j["reference"] = to_string(e.distribution.reference);
    j["ks_distance"] = e.distribution.ks_distance;
    j["histogram"] = to_json(e.distribution.histogram);
    j["checks"] = json::array({to_json(e.support_hard), to_json(e.support_monitored)});
    return j;
}

inline json to_json(const HorizontalSummary& s) {
    return json{{"rows", s.rows},           {"mean_re", s.mean_re},
                {"mean_im", s.mean_im},     {"var_re", s.var_re},
                {"var_im", s.var_im},       {"mean_abs2", s.mean_abs2},
                {"ks_re_gaussian", s.ks_re_gaussian}, {"ks_abs_rayleigh", s.ks_abs_rayleigh}};
}

inline json to_json(const HorizontalScan& scan) {
    json j;
    j["h"] = scan.h;
    j["a"] = scan.a;
    j["skipped_primes"] = scan.skipped;
    j["summary"] = to_json(scan.summary);
    j["checks"] = json::array({to_json(scan.trivial_bound)});
    return j;
}

inline json to_json(const ExponentGrowthScan& scan) {
    json j;
    j["h1"] = scan.h1;
    j["h2"] = scan.h2;
    j["independent_small_powers"] = scan.independent_small_powers;
    j["rows"] = scan.rows.size();
    j["skipped_primes"] = scan.skipped;
    j["median_alpha"] = scan.median_alpha;
    j["deciles"] = scan.deciles;
    j["median_in_band"] = scan.median_in_band;
    return j;
}

// CSV writers: header row, comma separated, LF line endings.

inline void write_semicircle_csv(std::ostream& os, const SemicircleExperiment& e) {
    os << "p,a1,a2,value_normalized\n";
    for (const auto& row : e.rows) {
        os << e.p << ',' << row.a1 << ',' << row.a2 << ',' << format_double(row.value) << '\n';
    }
}

inline void write_horizontal_csv(std::ostream& os, const HorizontalScan& scan) {
    os << "p,re,im,abs\n";
    for (const auto& row : scan.rows) {
        os << row.p << ',' << format_double(row.value.real()) << ',' << format_double(row.value.imag()) << ','
           << format_double(row.abs()) << '\n';
    }
}

inline void write_exponent_csv(std::ostream& os, const ExponentGrowthScan& scan) {
    os << "p,r1,r2,alpha\n";
    for (const auto& row : scan.rows) {
        os << row.p << ',' << row.r1 << ',' << row.r2 << ',' << format_double(row.alpha) << '\n';
    }
}

struct RatioRow {
    u64 p = 0;
    u64 H = 0;
    u64 K = 0;
    u64 n = 0;
    BoundCheck check;
};

inline void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << "p,H,K,n,theorem,observed,bound,ratio,skipped,passed\n";
    for (const auto& row : rows) {
        const auto& c = row.check;
        os << row.p << ',' << row.H << ',' << row.K << ',' << row.n << ',' << c.name << ','
           << format_double(c.observed) << ',' << format_double(c.bound) << ',' << format_double(c.ratio) << ','
           << (c.skipped ? 1 : 0) << ',' << (c.passed ? 1 : 0) << '\n';
    }
}

inline void write_checks_csv(std::ostream& os, const std::vector<BoundCheck>& checks) {
    os << "name,kind,relation,observed,bound,ratio,passed,skipped\n";
    for (const auto& c : checks) {
        os << c.name << ',' << to_string(c.kind) << ',' << to_string(c.relation) << ',' << format_double(c.observed)
           << ',' << format_double(c.bound) << ',' << format_double(c.ratio) << ',' << (c.passed ? 1 : 0) << ','
           << (c.skipped ? 1 : 0) << '\n';
    }
}

}  // namespace sparsesum
