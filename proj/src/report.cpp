#include "ellcyc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ellcyc {

namespace {

nlohmann::json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

nlohmann::json to_json(cplx z) { return nlohmann::json::array({num(z.real()), num(z.imag())}); }

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json samples = nlohmann::json::array();
    for (const Sample& s : report.samples) {
        samples.push_back({{"x0", to_json(s.x0)},
                           {"m", s.m},
                           {"p", s.sp.p},
                           {"r", s.sp.r},
                           {"s", s.sp.s},
                           {"t", s.sp.t},
                           {"lhs", to_json(s.lhs)},
                           {"rhs", to_json(s.rhs)},
                           {"rel_residual", num(s.rel_residual)}});
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const SkipRecord& k : report.skipped) {
        nlohmann::json j{{"m", k.m}, {"p", k.sp.p}, {"r", k.sp.r}, {"s", k.sp.s}, {"t", k.sp.t}, {"reason", k.reason}};
        j["x0"] = k.x0 ? to_json(*k.x0) : nlohmann::json(nullptr);
        skipped.push_back(std::move(j));
    }
    return {{"id", report.id},
            {"family", std::string(to_string(report.family))},
            {"tolerance", report.tolerance},
            {"seed", report.seed},
            {"samples", std::move(samples)},
            {"skipped", std::move(skipped)},
            {"max_rel", num(report.max_rel)},
            {"median_rel", num(report.median_rel)},
            {"pass", report.pass}};
}

nlohmann::json run_to_json(const std::vector<VerificationReport>& reports, const RunProvenance& prov) {
    std::vector<const VerificationReport*> sorted;
    for (const auto& r : reports) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
    nlohmann::json list = nlohmann::json::array();
    std::size_t passed = 0;
    for (const auto* r : sorted) {
        list.push_back(to_json(*r));
        if (r->pass) ++passed;
    }
    return {{"provenance",
             {{"tool", prov.tool},
              {"version", prov.version},
              {"catalog", prov.catalog},
              {"catalog_hash", prov.catalog_hash},
              {"config", prov.config}}},
            {"summary", {{"identities", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed}}},
            {"reports", std::move(list)}};
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "id,family,m,p,r,s,t,x0_re,x0_im,lhs_re,lhs_im,rhs_re,rhs_im,rel_residual\n";
    for (const auto& r : reports) {
        for (const Sample& s : r.samples) {
            out << r.id << ',' << to_string(r.family) << ',' << fmt("%.17g", s.m) << ',' << s.sp.p << ',' << s.sp.r
                << ',' << s.sp.s << ',' << s.sp.t << ',' << fmt("%.17g", s.x0.real()) << ','
                << fmt("%.17g", s.x0.imag()) << ',' << fmt("%.17g", s.lhs.real()) << ','
                << fmt("%.17g", s.lhs.imag()) << ',' << fmt("%.17g", s.rhs.real()) << ','
                << fmt("%.17g", s.rhs.imag()) << ',' << fmt("%.6e", s.rel_residual) << '\n';
        }
    }
    return out.str();
}

std::string reports_to_table(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %-10s %8s %6s %12s %12s  %s\n", "id", "family", "samples", "skips",
                  "max_rel", "median_rel", "result");
    out << line;
    std::size_t passed = 0;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-18s %-10s %8zu %6zu %12.3e %12.3e  %s\n", r.id.c_str(),
                      std::string(to_string(r.family)).c_str(), r.samples.size(), r.skipped.size(), r.max_rel,
                      r.median_rel, r.pass ? "pass" : "FAIL");
        out << line;
        if (r.pass) ++passed;
    }
    out << passed << "/" << reports.size() << " identities passed\n";
    return out.str();
}

}  // namespace ellcyc
