#include "qfilter/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qfilter/walsh_basis.hpp"

namespace qfilter {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json class_json(const BooleanFunction& f) {
    const FunctionClass c = classify(f);
    json out{
        {"class", std::string(to_string(c.kind))},
        {"m0", c.m0},
        {"m1", c.m1},
    };
    if (c.wk)
        out["wk"] = json{{"k", c.wk->k}, {"polarity", c.wk->polarity}};
    else
        out["wk"] = nullptr;
    return out;
}

}  // namespace

json function_record(const BooleanFunction& f) {
    json out = class_json(f);
    out["schema"] = kSchemaVersion;
    out["n"] = f.n();
    out["table"] = f.to_binary();
    if (f.n() >= 2) out["table_hex"] = f.to_hex();
    return out;
}

json encode_record(const BooleanFunction& f) {
    const StateVector v = encode(f);
    json out = function_record(f);
    out["dim"] = v.dim();
    out["amplitudes"] = v.amplitudes();
    return out;
}

json basis_record(int n) {
    json rows = json::array();
    json order = json::array();
    const auto basis = full_basis(n);
    for (std::size_t q = 0; q < basis.size(); ++q) {
        const BasisIndex idx = canonical_index(n, q);
        order.push_back(json{{"p", idx.p}, {"j", idx.j}});
        rows.push_back(basis[q].amplitudes());
    }
    return json{{"schema", kSchemaVersion}, {"n", n}, {"order", order}, {"rows", rows}};
}

json report_record(const StrategyReport& r) {
    json out{
        {"S", r.S},
        {"par_norm_sq", r.par_norm_sq},
        {"Q1", r.Q1},
        {"Q2", r.Q2},
        {"q1_opt", r.q1_opt},
        {"chosen", std::string(to_string(r.chosen))},
        {"q_min", r.q_min},
        {"degenerate", r.degenerate},
    };
    if (r.Qpovm)
        out["Qpovm"] = *r.Qpovm;
    else
        out["Qpovm"] = nullptr;
    return out;
}

json analyze_record(const WkClosedForms& c) {
    return json{
        {"schema", kSchemaVersion},
        {"n", c.n},
        {"k", c.k},
        {"eta1", c.eta1},
        {"f_k", c.f_k},
        {"par_norm_sq", c.par_norm_sq},
        {"S", c.S},
        {"zeta1", c.zeta1},
        {"zeta2", c.zeta2},
        {"Q1", c.Q1},
        {"Q2", c.Q2},
        {"Qpovm", c.Qpovm},
        {"povm_valid", c.povm_valid},
        {"q1_opt", c.q1_opt},
        {"chosen", std::string(to_string(c.regime))},
    };
}

json thresholds_record(const RegimeScan& scan) {
    // Compress the per-point regimes into contiguous segments.
    json segments = json::array();
    std::size_t start = 0;
    for (std::size_t i = 1; i <= scan.regimes.size(); ++i) {
        if (i == scan.regimes.size() || scan.regimes[i] != scan.regimes[start]) {
            segments.push_back(json{
                {"regime", std::string(to_string(scan.regimes[start]))},
                {"eta1_from", (static_cast<double>(start) + 0.5) * scan.step},
                {"eta1_to", (static_cast<double>(i) - 0.5) * scan.step},
            });
            start = i;
        }
    }
    json out{
        {"schema", kSchemaVersion},
        {"n", scan.n},
        {"k", scan.k},
        {"points", scan.points},
        {"step", scan.step},
        {"zeta1", scan.zeta1},
        {"zeta2", scan.zeta2},
        {"segments", segments},
    };
    out["switch_low"] = std::isnan(scan.switch_low) ? json(nullptr) : json(scan.switch_low);
    out["switch_high"] = std::isnan(scan.switch_high) ? json(nullptr) : json(scan.switch_high);
    return out;
}

json dilation_record(const DilationUnitary& d) {
    json rows = json::array();
    for (std::size_t r = 0; r < d.matrix.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < d.matrix.cols(); ++c) row.push_back(d.matrix(r, c));
        rows.push_back(std::move(row));
    }
    json outputs = json::array();
    for (const auto& v : d.output_vectors) outputs.push_back(v.amplitudes());
    return json{
        {"schema", kSchemaVersion},
        {"dim", d.dim_system},
        {"q1", d.q1},
        {"q", d.q},
        {"p", d.p},
        {"signs", d.signs},
        {"num_original", d.num_original},
        {"matrix", rows},
        {"output_vectors", outputs},
    };
}

json validation_record(const DilationValidation& v) {
    return json{
        {"unitarity", v.unitarity}, {"structure", v.structure}, {"ortho", v.ortho},
        {"qproduct", v.qproduct},   {"prob_sum", v.prob_sum},   {"gram", v.gram},
        {"max_deviation", v.max_deviation()},
        {"pass", v.pass()},
    };
}

json simulation_record(const SimulationSummary& s) {
    json verdicts = json::array();
    for (const Verdict v : s.detector_verdict) verdicts.push_back(std::string(to_string(v)));
    return json{
        {"schema", kSchemaVersion},
        {"trials", s.trials},
        {"seed", s.seed},
        {"empirical_Q", s.empirical_Q},
        {"empirical_error_rate", s.empirical_error_rate},
        {"analytic_Q", s.analytic_Q},
        {"count_is_psi1", s.count_is_psi1},
        {"count_is_other", s.count_is_other},
        {"count_failure", s.count_failure},
        {"count_misidentified", s.count_misidentified},
        {"state_draws", s.state_draws},
        {"state_failures", s.state_failures},
        {"per_state_failure", s.per_state_failure},
        {"detector_verdict", verdicts},
        {"detector_counts", s.detector_counts},
    };
}

json ensemble_record(const EnsembleSummary& s) {
    json counts = json::array();
    for (const BigInt& c : s.counts.C) counts.push_back(c.str());
    return json{
        {"schema", kSchemaVersion},
        {"n", s.counts.n},
        {"k", s.counts.k},
        {"eta1", s.eta1},
        {"C", counts},
        {"s0", s.counts.s0.str()},
        {"s1", s.counts.s1.str()},
        {"s2", s.counts.s2.str()},
        {"Sb_closed", s.sb.closed},
        {"Sb_bruteforce", s.sb.enumerated},
        {"Sb_weighted", s.sb.weighted},
    };
}

json error_record(int exit_code, std::string_view kind, std::string_view message) {
    return json{
        {"schema", kSchemaVersion},
        {"error", json{{"code", exit_code}, {"kind", std::string(kind)},
                       {"message", std::string(message)}}},
    };
}

std::string basis_csv(int n) {
    std::ostringstream out;
    out << "p,j";
    const std::size_t d = std::size_t{1} << n;
    for (std::size_t c = 0; c < d; ++c) out << ",x" << c;
    out << "\n";
    const auto basis = full_basis(n);
    for (std::size_t q = 0; q < basis.size(); ++q) {
        const BasisIndex idx = canonical_index(n, q);
        out << idx.p << "," << idx.j;
        for (std::size_t c = 0; c < d; ++c) out << "," << fmt17(basis[q][c]);
        out << "\n";
    }
    return out.str();
}

std::string ensemble_csv(const EnsembleSummary& s) {
    std::ostringstream out;
    out << "m,C_m,overlap,contribution\n";
    const double d = std::ldexp(1.0, s.counts.n);
    for (std::size_t m = 0; m < s.counts.C.size(); ++m) {
        const double overlap =
            std::ldexp(1.0, 1 - s.counts.k) - 4.0 * static_cast<double>(m) / d;
        const double contribution =
            (1.0 - s.eta1) * big_ratio(s.counts.C[m], s.counts.s0) * overlap * overlap;
        out << m << "," << s.counts.C[m].str() << "," << fmt17(overlap) << ","
            << fmt17(contribution) << "\n";
    }
    return out.str();
}

std::string sweep_csv(const std::vector<WkClosedForms>& rows) {
    std::ostringstream out;
    out << "eta1,Q1,Q2,Qpovm,povm_valid,chosen,q1_opt\n";
    for (const WkClosedForms& c : rows) {
        out << fmt17(c.eta1) << "," << fmt17(c.Q1) << "," << fmt17(c.Q2) << "," << fmt17(c.Qpovm)
            << "," << (c.povm_valid ? 1 : 0) << "," << to_string(c.regime) << ","
            << fmt17(c.q1_opt) << "\n";
    }
    return out.str();
}

}  // namespace qfilter
