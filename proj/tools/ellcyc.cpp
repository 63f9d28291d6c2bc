// ellcyc: verify cyclic identities of Jacobi elliptic functions.
//
// Exit status: 0 all checks passed, 1 a verification failed, 2 bad input.

#include <fnmatch.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ellcyc/corpus.hpp"
#include "ellcyc/cyclic.hpp"
#include "ellcyc/master.hpp"
#include "ellcyc/report.hpp"

using namespace ellcyc;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedCatalog {
    CatalogFile file;
    std::string name;
    std::string hash;
};

LoadedCatalog load_catalog(const std::string& path) {
    if (path.empty() || path == "builtin") {
        return {builtin_corpus(), "builtin", hash_hex(builtin_corpus_text())};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read catalog '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return {parse_catalog(text), path, hash_hex(text)};
}

bool glob_match(const std::vector<std::string>& patterns, const std::string& id) {
    if (patterns.empty()) return true;
    for (const auto& p : patterns) {
        if (fnmatch(p.c_str(), id.c_str(), 0) == 0) return true;
    }
    return false;
}

// "2..8" or "2,3,5" or "4".
std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& text : items) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(std::stod(item));
        }
    }
    return out;
}

void check_moduli(const std::vector<double>& ms) {
    for (double m : ms) {
        if (!(m > 0.0 && m < 1.0)) throw UsageError("modulus parameter must lie in (0, 1)");
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("ELLIPTIC_CYCLIC_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw UsageError("ELLIPTIC_CYCLIC_SEED must be an unsigned integer");
        return v;
    }
    return 20240501;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string cplx_text(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%+.12e %+.12ei", z.real(), z.imag());
    return buf;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string catalog = "builtin";
    std::vector<std::string> ids;
    std::vector<std::string> moduli;
    std::string p_values;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
    int samples = 8;
    std::string output;
    std::string format = "table";
    bool include_errata = false;
};

int cmd_verify(const VerifyOptions& o) {
    const LoadedCatalog cat = load_catalog(o.catalog);
    const double tol = o.tol.value_or(cat.file.tolerance);
    if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
    if (o.samples < 0) throw UsageError("--samples must be >= 0");

    std::vector<const IdentitySpec*> specs;
    std::size_t excluded = 0;
    for (const auto& s : cat.file.identities) {
        if (!glob_match(o.ids, s.id)) continue;
        if (!o.include_errata && s.has_flag("erratum")) {
            ++excluded;
            continue;
        }
        specs.push_back(&s);
    }
    if (specs.empty()) throw UsageError("no identities matched");

    const std::uint64_t seed = resolve_seed(o.seed);
    SampleGrid grid = default_grid(seed, o.samples);
    if (!o.moduli.empty()) {
        grid.moduli = parse_double_list(o.moduli);
        check_moduli(grid.moduli);
    }
    if (!o.p_values.empty()) {
        grid.p_values = parse_int_range(o.p_values);
        if (grid.p_values.empty()) throw UsageError("empty p range");
    }
    const ExecPolicy policy = o.jobs == 1 ? ExecPolicy::serial() : ExecPolicy::parallel(o.jobs);
    const std::vector<VerificationReport> reports = verify_all(specs, grid, tol, policy);

    std::string text;
    if (o.format == "json") {
        RunProvenance prov;
        prov.version = ELLCYC_VERSION;
        prov.catalog = cat.name;
        prov.catalog_hash = cat.hash;
        prov.config = {{"ids", o.ids},
                       {"moduli", grid.moduli},
                       {"p_values", grid.p_values},
                       {"tolerance", tol},
                       {"seed", seed},
                       {"samples", o.samples},
                       {"include_errata", o.include_errata}};
        text = dump_json(run_to_json(reports, prov));
    } else if (o.format == "csv") {
        text = reports_to_csv(reports);
    } else {
        text = reports_to_table(reports);
    }
    write_output(o.output, text);
    if (excluded > 0) std::cerr << excluded << " identities flagged 'erratum' were excluded\n";

    for (const auto& r : reports) {
        if (!r.pass) return kExitFail;
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct GammaOptions {
    std::string fspec;
    int p = 3;
    double m = 0.5;
    int r = 1, s = 2, t = 3;
    std::string period;  // empty: from parity
};

int cmd_gamma(const GammaOptions& o) {
    check_moduli({o.m});
    if (o.p < 1) throw UsageError("p must be positive");
    CyclicTerm term;
    term.factors = parse_factor_product(o.fspec);
    // sn and cn change sign under z -> z + 2K, dn does not.
    int odd_under_2k = 0, total = 0;
    for (const auto& f : term.factors) {
        if (f.fn == FnKind::sn || f.fn == FnKind::cn) odd_under_2k += f.power;
        if (f.fn == FnKind::sn || f.fn == FnKind::cn || f.fn == FnKind::dn) total += f.power;
    }
    PeriodKind period = odd_under_2k % 2 == 1 ? PeriodKind::FourK : PeriodKind::TwoK;
    if (o.period == "2K") period = PeriodKind::TwoK;
    else if (o.period == "4K") period = PeriodKind::FourK;
    else if (!o.period.empty()) throw UsageError("--T must be 2K or 4K");

    const ViewPtr view = make_direct_view(o.m);
    const ModulusContext& ctx = static_cast<const DirectView&>(*view).context();
    const ShiftParams sp{o.p, o.r, o.s, o.t};
    auto f = [&](cplx z) { return term_summand(term, z, *view, period, sp); };

    std::printf("f = %s  p = %d  m = %g  T = %s\n", o.fspec.c_str(), o.p, o.m, std::string(to_string(period)).c_str());
    const GammaSet g = gamma_set(f, o.p, period, GammaVariant::ordinary, ctx, total + 1);
    std::printf("%-4s %-40s %5s  %s\n", "w", "center", "order", "alpha_l");
    for (std::size_t w = 0; w < g.poles.size(); ++w) {
        const PoleData& pd = g.poles[w];
        std::printf("%-4zu %-40s %5d", w, cplx_text(pd.center).c_str(), pd.order);
        for (int l = 1; l <= pd.order; ++l) std::printf("  a%d = %s", l, cplx_text(pd.alpha(l)).c_str());
        std::printf("\n");
    }
    std::printf("gamma (ordinary):");
    if (g.order() == 0) std::printf(" none (L = 0)");
    for (int l = 1; l <= g.order(); ++l) std::printf("\n  gamma_%d = %s", l, cplx_text(g.gamma(l)).c_str());
    std::printf("\n");
    if (o.p % 2 == 0) {
        const GammaSet ga = gamma_set(f, o.p, period, GammaVariant::alternating, ctx, total + 1);
        std::printf("gamma (alternating):");
        if (ga.order() == 0) std::printf(" none (L = 0)");
        for (int l = 1; l <= ga.order(); ++l) std::printf("\n  gamma~_%d = %s", l, cplx_text(ga.gamma(l)).c_str());
        std::printf("\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct TableOptions {
    std::string catalog = "builtin";
    std::string id;
    std::string p_range = "2..8";
    std::vector<std::string> moduli{"0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"};
    int r = 1, s = 2, t = 3;
    std::string output;
};

int cmd_table(const TableOptions& o) {
    const LoadedCatalog cat = load_catalog(o.catalog);
    const IdentitySpec* spec = cat.file.find(o.id);
    if (!spec) throw UsageError("no identities matched");
    if (spec->rhs.empty()) throw UsageError("identity has no RHS coefficient");
    const std::vector<int> ps = parse_int_range(o.p_range);
    const std::vector<double> ms = parse_double_list(o.moduli);
    if (ps.empty() || ms.empty()) throw UsageError("empty range");
    check_moduli(ms);

    std::ostringstream out;
    out << "id,p,r,m,constant\n";
    std::size_t rows = 0;
    for (int p : ps) {
        ShiftParams sp{p, o.r, spec->uses_symbol('s') ? o.s : 0, spec->uses_symbol('t') ? o.t : 0};
        for (double m : ms) {
            try {
                const PreparedIdentity prep = prepare_identity(*spec, make_direct_view(m), sp);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.15g", prep.rhs_coeffs.front().real());
                out << spec->id << ',' << p << ',' << sp.r << ',' << m << ',' << buf << '\n';
                ++rows;
            } catch (const ConstraintError&) {
                break;  // p not admissible
            }
        }
    }
    if (rows == 0) throw UsageError("empty range: no admissible (p, m) for " + spec->id);
    write_output(o.output, out.str());
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_catalog(const std::string& path, bool print) {
    const LoadedCatalog cat = load_catalog(path);
    if (print) {
        std::cout << print_catalog(cat.file);
        return 0;
    }
    for (const auto& s : cat.file.identities) {
        std::string flags;
        for (const auto& f : s.flags) flags += (flags.empty() ? "" : ",") + f;
        std::printf("%-18s %-10s %-3s %s\n", s.id.c_str(), std::string(to_string(s.family)).c_str(),
                    std::string(to_string(s.period)).c_str(), flags.c_str());
    }
    std::printf("%zu identities, catalog hash %s\n", cat.file.identities.size(), cat.hash.c_str());
    return 0;
}

// ---------------------------------------------------------------------------

struct PredictOptions {
    std::string catalog = "builtin";
    std::string id;
    int p = 0;
    double m = 0.5;
    int r = 1, s = 2, t = 3;
    double x0_re = 0.3, x0_im = 0.0;
    double tol = 1e-9;
};

int cmd_predict(const PredictOptions& o) {
    const LoadedCatalog cat = load_catalog(o.catalog);
    const IdentitySpec* spec = cat.file.find(o.id);
    if (!spec) throw UsageError("no identities matched");
    check_moduli({o.m});
    int p = o.p;
    if (p == 0) {
        const auto rp = representative_p(*spec);
        if (!rp) throw UsageError("no admissible p for " + spec->id);
        p = *rp;
    }
    const ShiftParams sp{p, o.r, spec->uses_symbol('s') ? o.s : 0, spec->uses_symbol('t') ? o.t : 0};
    const PreparedIdentity prep = prepare_identity(*spec, make_direct_view(o.m), sp);
    const cplx x0(o.x0_re, o.x0_im);
    const SidePair sides = eval_prepared(prep, x0);
    const Prediction pr = predict_identity(prep, x0);
    const double rel = relative_residual(sides.lhs, pr.value);
    std::printf("%s  p = %d r = %d s = %d t = %d  m = %g  x0 = %s\n", spec->id.c_str(), sp.p, sp.r, sp.s, sp.t, o.m,
                cplx_text(x0).c_str());
    std::printf("direct sum        %s\n", cplx_text(sides.lhs).c_str());
    std::printf("catalog RHS       %s\n", cplx_text(sides.rhs).c_str());
    std::printf("master identity   %s\n", cplx_text(pr.value).c_str());
    for (int l = 1; l <= pr.gammas.order(); ++l) {
        std::printf("  gamma_%d = %s\n", l, cplx_text(pr.gammas.gamma(l)).c_str());
    }
    std::printf("rel(direct, master) = %.3e\n", rel);
    return rel < o.tol ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of cyclic identities for Jacobi elliptic functions"};
    app.require_subcommand(1);

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "verify catalog identities on a sample grid");
    verify->add_option("--catalog", vo.catalog, "catalog file or 'builtin'");
    verify->add_option("--id", vo.ids, "identity id glob (repeatable)");
    verify->add_option("--m", vo.moduli, "moduli, comma separated");
    verify->add_option("--p", vo.p_values, "p values: list '3,5' or range '2..8'");
    verify->add_option("--tol", vo.tol, "relative residual tolerance");
    verify->add_option("--seed", vo.seed, "grid seed (default: $ELLIPTIC_CYCLIC_SEED)");
    verify->add_option("--jobs", vo.jobs, "worker threads (1: serial reference path)");
    verify->add_option("--samples", vo.samples, "random complex base points per grid");
    verify->add_option("-o,--output", vo.output, "output file (default stdout)");
    verify->add_option("--format", vo.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    verify->add_flag("--include-errata", vo.include_errata, "also verify entries flagged 'erratum'");

    GammaOptions go;
    auto* gamma = app.add_subcommand("gamma", "Laurent coefficients on the pole line");
    gamma->add_option("fspec", go.fspec, "factor product, e.g. \"dn[0]^2*dn[+1]^2\"")->required();
    gamma->add_option("--p", go.p, "number of points");
    gamma->add_option("--m", go.m, "modulus parameter");
    gamma->add_option("--r", go.r);
    gamma->add_option("--s", go.s);
    gamma->add_option("--t", go.t);
    gamma->add_option("--T", go.period, "period 2K or 4K (default from parity)");

    TableOptions to;
    auto* table = app.add_subcommand("table", "tabulate the first RHS coefficient");
    table->add_option("--catalog", to.catalog);
    table->add_option("--id", to.id)->required();
    table->add_option("--p", to.p_range, "range '2..8' or list");
    table->add_option("--m", to.moduli, "moduli, comma separated");
    table->add_option("--r", to.r);
    table->add_option("--s", to.s);
    table->add_option("--t", to.t);
    table->add_option("-o,--output", to.output);

    std::string cat_path = "builtin";
    bool cat_print = false;
    auto* catalog = app.add_subcommand("catalog", "list catalog entries");
    catalog->add_option("--catalog", cat_path);
    catalog->add_flag("--print", cat_print, "print the normalized catalog text");

    PredictOptions po;
    auto* predict = app.add_subcommand("predict", "compare direct summation with the master identity");
    predict->add_option("--catalog", po.catalog);
    predict->add_option("--id", po.id)->required();
    predict->add_option("--p", po.p);
    predict->add_option("--m", po.m);
    predict->add_option("--r", po.r);
    predict->add_option("--s", po.s);
    predict->add_option("--t", po.t);
    predict->add_option("--x0", po.x0_re);
    predict->add_option("--x0-im", po.x0_im);
    predict->add_option("--tol", po.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(vo);
        if (*gamma) return cmd_gamma(go);
        if (*table) return cmd_table(to);
        if (*catalog) return cmd_catalog(cat_path, cat_print);
        if (*predict) return cmd_predict(po);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstraintError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: number out of range: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
