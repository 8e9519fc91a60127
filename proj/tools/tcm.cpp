// tcm: class numbers, ideal Euler functions, C_N checks and CM torsion bounds.
//
// Exit codes: 0 success, 2 usage error, 3 serialization error, 4 cache
// integrity error, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tcm/analytics.hpp"
#include "tcm/feasibility.hpp"
#include "tcm/galois_image.hpp"
#include "tcm/io/cache.hpp"
#include "tcm/io/envelope.hpp"
#include "tcm/io/report.hpp"

namespace {

using namespace tcm;
using io::Json;

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kSerialization = 3, kCacheIntegrity = 4 };

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct serialization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format = "table";
    std::string cache = "./tcm-cache-v1.csv";
    std::string output;
};

io::Format parse_format(const std::string& f) {
    if (f == "json") return io::Format::Json;
    if (f == "csv") return io::Format::Csv;
    return io::Format::Table;
}

void emit(const Globals& g, const io::OutputEnvelope& env) {
    const auto fmt = parse_format(g.format);
    try {
        if (g.output.empty()) {
            io::write(std::cout, env, fmt);
            std::cout.flush();
            if (!std::cout) throw serialization_error("failed writing to stdout");
        } else {
            std::ofstream out(g.output);
            if (!out) throw serialization_error("cannot open output file " + g.output);
            io::write(out, env, fmt);
            out.flush();
            if (!out) throw serialization_error("failed writing " + g.output);
        }
    } catch (const nlohmann::json::exception& e) {
        throw serialization_error(e.what());
    }
}

Discriminant fundamental_disc(i64 v) {
    try {
        return Discriminant::fundamental(v);
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }
}

Discriminant order_disc(i64 v) {
    try {
        return Discriminant(v);
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw usage_error(what);
}

// bound ----------------------------------------------------------------------

struct BoundArgs {
    u64 d_min = 1;
    u64 d_max = 1;
};

int run_bound(const Globals& g, const BoundArgs& a) {
    require(a.d_min >= 1 && a.d_min <= a.d_max && a.d_max <= 1000000,
            "invalid degree range: need 1 <= d-min <= d-max <= 1000000");
    if (a.d_max > 100000) std::cerr << "computing B(d) for d <= " << a.d_max << " ...\n";
    auto env = io::OutputEnvelope::make("bound", Json{{"d_min", a.d_min}, {"d_max", a.d_max}});
    env.rows = io::bound_rows(bound_records(a.d_min, a.d_max));
    emit(g, env);
    return kOk;
}

// refined / audit ------------------------------------------------------------

struct RefinedArgs {
    u64 d = 1;
    u64 disc_cap = 4;
};

int run_refined(const Globals& g, const RefinedArgs& a) {
    require(a.d >= 1 && a.d <= 1000, "refined: need 1 <= d <= 1000");
    require(a.disc_cap >= 3 && a.disc_cap <= 100000, "refined: need 3 <= disc-cap <= 100000");
    const auto loaded = io::load_or_build(g.cache, std::max<u64>(a.disc_cap, io::kDefaultCacheDisc));
    const auto rows = refined_table(a.d, a.disc_cap, [&](const Discriminant& D) {
        return loaded.cache.class_number_of(D);
    });
    auto env = io::OutputEnvelope::make("refined", Json{{"d", a.d}, {"disc_cap", a.disc_cap}});
    for (const auto& r : rows) env.rows.push_back(io::feasibility_row(r));
    emit(g, env);
    return kOk;
}

struct AuditArgs {
    u64 d = 1;
    i64 disc = -4;
    u64 a = 1;
    u64 b = 1;
};

int run_audit(const Globals& g, const AuditArgs& a) {
    require(a.d >= 1 && a.a >= 1 && a.b >= 1, "audit: d, a, b must be >= 1");
    const auto D = fundamental_disc(a.disc);
    auto env = io::OutputEnvelope::make("audit", Json{{"d", a.d}, {"disc", a.disc}, {"a", a.a}, {"b", a.b}});
    env.rows = io::chain_rows(chain_audit(a.d, D, a.a, a.b));
    emit(g, env);
    return kOk;
}

// phi --------------------------------------------------------------------------

struct PhiArgs {
    i64 disc = -4;
    u64 n = 1;
};

int run_phi(const Globals& g, const PhiArgs& a) {
    require(a.n >= 1, "phi: n must be >= 1");
    const auto D = fundamental_disc(a.disc);
    std::optional<u64> brute;
    if (a.n <= kBruteForcePhiCap) {
        brute = brute_force_phi(D, a.n);
        if (*brute != phi_K_of_N(D, a.n))
            throw std::logic_error("phi_K disagrees with the residue count");
    }
    auto env = io::OutputEnvelope::make("phi", Json{{"disc", a.disc}, {"n", a.n}});
    env.rows.push_back(io::phi_row(D, a.n, brute));
    emit(g, env);
    return kOk;
}

// galois -------------------------------------------------------------------------

struct GaloisArgs {
    i64 disc = -4;
    std::optional<u64> p;
    std::optional<unsigned> A;
    std::optional<unsigned> B;
    std::optional<u64> n;
};

int run_galois(const Globals& g, const GaloisArgs& a) {
    const auto D = order_disc(a.disc);
    Json params{{"disc", a.disc}};
    io::OutputEnvelope env;
    if (a.n) {
        require(!a.p, "galois: use either --n or --p");
        require(*a.n >= 2, "galois: n must be >= 2");
        params["n"] = *a.n;
        env = io::OutputEnvelope::make("galois", params);
        const auto elements = cn_elements(D, *a.n);
        env.rows.push_back(Json{{"disc", a.disc},
                                {"n", *a.n},
                                {"order", elements.size()},
                                {"brute_force_phi", brute_force_phi(D, *a.n, kGaloisModulusCap)},
                                {"homotheties", verify_homotheties(D, *a.n)}});
    } else {
        require(a.p.has_value(), "galois: --n or --p is required");
        require(is_prime(*a.p), "galois: p must be prime");
        const unsigned A = a.A.value_or(0);
        params["p"] = *a.p;
        params["A"] = A;
        if (a.B) {
            require(A >= 1 && *a.B >= 1, "galois: kernel mode needs A >= 1 and B >= 1");
            params["B"] = *a.B;
            env = io::OutputEnvelope::make("galois", params);
            const auto r = reduction_report(D, *a.p, A, *a.B);
            env.rows.push_back(Json{{"disc", a.disc},
                                    {"p", *a.p},
                                    {"A", A},
                                    {"B", *a.B},
                                    {"kernel_size", r.kernel_size},
                                    {"expected", ipow(*a.p, 2 * *a.B)},
                                    {"surjective", r.surjective()}});
        } else {
            env = io::OutputEnvelope::make("galois", params);
            env.rows.push_back(io::report_row(max_stabilizer_order(D, *a.p, A)));
        }
    }
    emit(g, env);
    return kOk;
}

// analytics ---------------------------------------------------------------------

struct AnalyticsArgs {
    i64 disc = -4;
    u64 x = 0;
    u64 disc_cap = 100;
};

int run_analytics(const Globals& g, const std::string& which, const AnalyticsArgs& a) {
    constexpr u64 kMaxX = 100000000;
    Json params{{"x", a.x}};
    if (which != "mertens") params["disc"] = a.disc;
    auto env = io::OutputEnvelope::make("analytics " + which, params);
    if (which == "mertens") {
        require(a.x >= 2 && a.x <= kMaxX, "mertens: need 2 <= x <= 1e8");
        env.rows.push_back(io::product_row(mertens_product(a.x)));
    } else if (which == "product") {
        require(a.x >= 2 && a.x <= kMaxX, "product: need 2 <= x <= 1e8");
        env.rows.push_back(io::product_row(char_euler_product(fundamental_disc(a.disc), a.x), a.disc));
    } else if (which == "l1") {
        const auto D = fundamental_disc(a.disc);
        const auto fc = field_constants(D);
        env.rows.push_back(Json{{"disc", a.disc}, {"h", fc.h}, {"w", fc.w}, {"l1", io::real(fc.l1)}});
    } else if (which == "charsum") {
        require(a.x >= 2 && a.x <= kMaxX, "charsum: need 2 <= x <= 1e8");
        const auto D = fundamental_disc(a.disc);
        env.rows.push_back(Json{{"disc", a.disc}, {"t", a.x}, {"S", io::real(char_sum_S(D, a.x))}});
    } else if (which == "scan") {
        require(a.x >= 3 && a.x <= 1000000, "scan: need 3 <= x <= 1e6");
        env.rows.push_back(io::scan_row(phi_bound_scan(fundamental_disc(a.disc), a.x)));
    } else if (which == "landau") {
        require(a.x >= 100 && a.x <= 1000000, "landau: need 100 <= x <= 1e6");
        const auto D = fundamental_disc(a.disc);
        env.rows.push_back(io::landau_row(D, a.x, landau_liminf_check(D, a.x)));
    } else if (which == "floor") {
        require(a.x >= 3 && a.x <= 1000000, "floor: need 3 <= x <= 1e6");
        require(a.disc_cap >= 3 && a.disc_cap <= 10000, "floor: need 3 <= disc-cap <= 10000");
        env.params = Json{{"x", a.x}, {"disc_cap", a.disc_cap}};
        std::cerr << "scanning fundamental |D| <= " << a.disc_cap << " at X = " << a.x << " ...\n";
        const auto f = phi_floor(a.disc_cap, a.x);
        env.rows.push_back(io::scan_row(f.at));
    }
    emit(g, env);
    return kOk;
}

// cache ---------------------------------------------------------------------------

int run_cache(const Globals& g, u64 max_disc) {
    require(max_disc >= 3 && max_disc <= 1000000, "cache: need 3 <= max-disc <= 1e6");
    const auto loaded = io::load_or_build(g.cache, max_disc);
    auto env = io::OutputEnvelope::make("cache", Json{{"cache", g.cache}, {"max_disc", max_disc}});
    env.rows.push_back(Json{{"path", g.cache},
                            {"status", io::to_string(loaded.status)},
                            {"entries", loaded.cache.size()},
                            {"max_disc", loaded.cache.max_disc()},
                            {"dirichlet_sample", loaded.dirichlet_sample}});
    emit(g, env);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcm: exact class numbers, ideal Euler functions and CM torsion bounds"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_option("--cache", g.cache, "Class-number cache path")->capture_default_str();
    app.add_option("--output", g.output, "Write output to a file instead of stdout");

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "Torsion bound B(d) per degree")->fallthrough();
    bound_cmd->add_option("--d-min", bound.d_min, "Smallest degree")->capture_default_str();
    bound_cmd->add_option("--d-max", bound.d_max, "Largest degree")->capture_default_str();

    RefinedArgs refined;
    auto* refined_cmd = app.add_subcommand("refined", "Exact per-discriminant feasibility (diagnostic)")->fallthrough();
    refined_cmd->add_option("--d", refined.d, "Degree")->required();
    refined_cmd->add_option("--disc-cap", refined.disc_cap, "Largest |D|")->required();

    AuditArgs audit;
    auto* audit_cmd = app.add_subcommand("audit", "Evaluate the degree chain for one shape")->fallthrough();
    audit_cmd->add_option("--d", audit.d)->required();
    audit_cmd->add_option("--disc", audit.disc)->required();
    audit_cmd->add_option("--a", audit.a)->required();
    audit_cmd->add_option("--b", audit.b)->required();

    PhiArgs phi;
    auto* phi_cmd = app.add_subcommand("phi", "phi_K(N O_K) with factorization")->fallthrough();
    phi_cmd->add_option("--disc", phi.disc, "Fundamental discriminant")->required();
    phi_cmd->add_option("--n", phi.n, "N")->required();

    GaloisArgs galois;
    auto* galois_cmd = app.add_subcommand("galois", "C_N order, homotheties, kernels, stabilizers")->fallthrough();
    galois_cmd->add_option("--disc", galois.disc, "Order discriminant")->required();
    galois_cmd->add_option("--p", galois.p, "Prime p");
    galois_cmd->add_option("--a", galois.A, "Exponent A");
    galois_cmd->add_option("--b", galois.B, "Exponent B (kernel mode)");
    galois_cmd->add_option("--n", galois.n, "Modulus N (group mode)");

    AnalyticsArgs analytics;
    std::string analytics_which;
    auto* analytics_cmd = app.add_subcommand("analytics", "Euler products, L(1,chi), scans")->fallthrough();
    analytics_cmd->require_subcommand(1);
    for (const char* name : {"mertens", "product", "l1", "charsum", "scan", "landau", "floor"}) {
        auto* sub = analytics_cmd->add_subcommand(name)->fallthrough();
        if (std::string(name) != "l1") sub->add_option("--x", analytics.x, "Cutoff")->required();
        if (std::string(name) != "mertens" && std::string(name) != "floor")
            sub->add_option("--disc", analytics.disc, "Fundamental discriminant")->required();
        if (std::string(name) == "floor")
            sub->add_option("--disc-cap", analytics.disc_cap, "Largest |D|")->capture_default_str();
        sub->callback([&analytics_which, name] { analytics_which = name; });
    }

    u64 cache_max = io::kDefaultCacheDisc;
    auto* cache_cmd = app.add_subcommand("cache", "Load, validate or build the class-number cache")->fallthrough();
    cache_cmd->add_option("--max-disc", cache_max, "Largest |D| to cover")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*bound_cmd) return run_bound(g, bound);
        if (*refined_cmd) return run_refined(g, refined);
        if (*audit_cmd) return run_audit(g, audit);
        if (*phi_cmd) return run_phi(g, phi);
        if (*galois_cmd) return run_galois(g, galois);
        if (*analytics_cmd) return run_analytics(g, analytics_which, analytics);
        if (*cache_cmd) return run_cache(g, cache_max);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const cap_exceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const invalid_discriminant& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const not_fundamental& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const serialization_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSerialization;
    } catch (const io::cache_integrity_error& e) {
        std::cerr << "error: cache integrity: " << e.what() << '\n';
        return kCacheIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
