#include "localgw/antidiag.hpp"
#include "localgw/cache.hpp"
#include "localgw/characters.hpp"
#include "localgw/scalar_json.hpp"
#include "localgw/tqft.hpp"
#include "localgw/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <sstream>
#include <string>

using namespace localgw;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

struct Config {
    std::string cache;
    std::string format = "text";
    int order = 12;
};

const std::array<const char*, kNumVars> kSigmaNames{"t1", "t2", "s"};
const std::array<const char*, kNumVars> kQNames{"t1", "t2", "q"};

Level parse_level(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("level must be K1,K2");
    std::size_t p1 = 0, p2 = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const int k1 = std::stoi(a, &p1), k2 = std::stoi(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("level must be K1,K2");
    return {k1, k2};
}

std::string format_series(const USeries& s) {
    std::ostringstream os;
    bool any = false;
    for (int k = s.offset(); k < s.precision(); ++k) {
        const Scalar c = s.coeff(k);
        if (c.is_zero()) continue;
        if (any) os << " + ";
        os << "(" << c.to_string(kSigmaNames) << ")*u^" << k;
        any = true;
    }
    if (any) os << " + ";
    os << "O(u^" << s.precision() << ")";
    return os.str();
}

// Loads a cached tensor into the engine when one exists.
void use_cache(Engine& engine, const Config& cfg, int degree) {
    if (auto t = read_pants_cache(resolve_cache_dir(cfg.cache), degree)) engine.install_pants(*t);
}

int cmd_pants(const Config& cfg, int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    const PantsTensor t = reconstruct_pants(degree);
    const auto dir = resolve_cache_dir(cfg.cache);
    write_pants_cache(dir, t);
    const std::string digest = pants_digest(t);
    if (cfg.format == "json") {
        std::cout << json{{"degree", degree}, {"entries", t.entry_count()}, {"digest", digest},
                          {"path", pants_cache_path(dir, degree).string()}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "degree " << degree << ": " << t.entry_count() << " entries\n"
                  << "sha256 " << digest << "\n"
                  << "wrote " << pants_cache_path(dir, degree).string() << '\n';
    }
    return kOk;
}

int cmd_evaluate(const Config& cfg, LocalCurveQuery q, const std::string& boundary, const std::string& level,
                 const std::string& convention, const std::string& mode) {
    q.level = parse_level(level);
    if (!boundary.empty()) q.boundary = parse_partition_list(boundary);
    q.convention = convention == "starred" ? Convention::starred : Convention::unstarred;
    q.mode = mode == "series" ? OutputMode::u_series : OutputMode::q_rational;
    q.series_order = cfg.order;
    validate(q);
    Engine engine;
    use_cache(engine, cfg, q.degree);
    const EvaluationResult r = engine.evaluate(q);
    if (cfg.format == "json") {
        json j{{"degree", q.degree},
               {"genus", q.genus},
               {"level", {q.level.k1, q.level.k2}},
               {"boundary", format_partition_list(q.boundary)},
               {"convention", convention},
               {"mode", mode}};
        if (r.series) {
            j["series"] = series_to_json(*r.series);
        } else {
            j["unit_power"] = r.unit_power;
            j["sigma_shift"] = r.sigma_shift;
            j["q_form"] = scalar_to_json(r.q_form);
            j["value"] = scalar_to_json(r.value);
        }
        std::cout << j.dump() << '\n';
    } else if (r.series) {
        std::cout << format_series(*r.series) << '\n';
    } else {
        std::cout << "value = i^" << r.unit_power << " * s^(" << -r.sigma_shift << ") * F(q),  q = -s^2\n"
                  << "F(q) = " << r.q_form.to_string(kQNames) << '\n'
                  << "value(s) = " << r.value.to_string(kSigmaNames) << '\n';
    }
    return kOk;
}

int cmd_antidiag(const Config& cfg, int degree, int genus, const std::string& level) {
    const Level lv = parse_level(level);
    LocalCurveQuery q;
    q.degree = degree;
    q.genus = genus;
    q.level = lv;
    validate(q);
    const Scalar v = closed_formula({degree, genus, lv.k1, lv.k2});
    std::optional<Scalar> qf;
    const long shift = rational_shift(q);
    try {
        qf = to_q_form(v, shift);
    } catch (const std::domain_error&) {
    }
    if (cfg.format == "json") {
        json j{{"degree", degree}, {"genus", genus}, {"level", {lv.k1, lv.k2}}, {"value", scalar_to_json(v)}};
        if (qf) {
            j["sigma_shift"] = shift;
            j["q_form"] = scalar_to_json(*qf);
        }
        std::cout << j.dump() << '\n';
    } else if (qf) {
        std::cout << "value = s^(" << -shift << ") * F(q),  q = -s^2,  t = t1 = -t2\n"
                  << "F(q) = " << qf->to_string({"t", "t2", "q"}) << '\n';
    } else {
        std::cout << "value(s) = " << v.to_string({"t", "t2", "s"}) << '\n';
    }
    return kOk;
}

int cmd_hurwitz(const Config& cfg, int degree, const std::string& profiles) {
    const auto ps = parse_partition_list(profiles);
    if (ps.size() != 3) throw std::invalid_argument("expected three profiles");
    for (const auto& p : ps)
        if (p.size() != degree) throw std::invalid_argument("profile " + p.to_string() + " is not a partition of the degree");
    const mpq_class h = hurwitz3(ps[0], ps[1], ps[2]);
    if (cfg.format == "json")
        std::cout << json{{"degree", degree}, {"profiles", format_partition_list(ps)}, {"value", h.get_str()}}.dump() << '\n';
    else
        std::cout << h.get_str() << '\n';
    return kOk;
}

int cmd_verify(const Config& cfg, const std::string& suite, std::optional<int> max_degree) {
    Engine engine;
    if (max_degree)
        for (int d = 1; d <= *max_degree; ++d) use_cache(engine, cfg, d);
    const auto results = run_suite(suite, max_degree, engine);
    bool ok = true;
    json arr = json::array();
    for (const auto& r : results) {
        ok = ok && r.passed;
        if (cfg.format == "json") {
            arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        } else {
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
            if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << '\n';
        }
    }
    if (cfg.format == "json")
        std::cout << json{{"suite", suite}, {"passed", ok}, {"checks", arr}}.dump() << '\n';
    else
        std::cout << (ok ? "all checks passed" : "some checks failed") << '\n';
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant local Gromov-Witten theory of curves"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--cache", cfg.cache, "Cache directory (default $LOCALGW_CACHE_DIR or ./.localgw-cache)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--order", cfg.order, "u-series order")->check(CLI::NonNegativeNumber);

    int degree = 0, genus = 0;
    std::string level = "0,0", boundary, convention = "unstarred", mode = "q", profiles, suite = "all";
    std::optional<int> max_degree;

    auto* pants = app.add_subcommand("pants", "Reconstruct and cache the level (0,0) pants tensor");
    pants->add_option("--degree", degree)->required();

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a local curve invariant");
    evaluate->add_option("--degree", degree)->required();
    evaluate->add_option("--genus", genus);
    evaluate->add_option("--level", level, "K1,K2");
    evaluate->add_option("--boundary", boundary, "Partitions separated by ';', parts by ','");
    evaluate->add_option("--convention", convention)->check(CLI::IsMember({"starred", "unstarred"}));
    evaluate->add_option("--mode", mode, "q (rational in q) or series (u-expansion)")->check(CLI::IsMember({"q", "series"}));

    auto* antidiag = app.add_subcommand("antidiag", "Closed anti-diagonal partition function");
    antidiag->add_option("--degree", degree)->required();
    antidiag->add_option("--genus", genus);
    antidiag->add_option("--level", level, "K1,K2");

    auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz number of three branch profiles");
    hurwitz->add_option("--degree", degree)->required();
    hurwitz->add_option("--profiles", profiles, "a;b;c")->required();

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify->add_option("--max-degree", max_degree)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*pants) return cmd_pants(cfg, degree);
        if (*evaluate) {
            LocalCurveQuery q;
            q.degree = degree;
            q.genus = genus;
            return cmd_evaluate(cfg, q, boundary, level, convention, mode);
        }
        if (*antidiag) return cmd_antidiag(cfg, degree, genus, level);
        if (*hurwitz) return cmd_hurwitz(cfg, degree, profiles);
        if (*verify) return cmd_verify(cfg, suite, max_degree);
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}
