#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "localgw/cache.hpp"
#include "localgw/scalar_json.hpp"
#include "localgw/verify.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace localgw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        char tmpl[] = "/tmp/localgw-test-XXXXXX";
        path = mkdtemp(tmpl);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(LOCALGW_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cache round trip") {
    TempDir dir;
    const PantsTensor t = reconstruct_pants(3);
    write_pants_cache(dir.path, t);
    CHECK(fs::exists(pants_cache_path(dir.path, 3)));
    const auto back = read_pants_cache(dir.path, 3);
    REQUIRE(back);
    CHECK(*back == t);
    CHECK(pants_digest(*back) == pants_digest(t));
    CHECK_FALSE(read_pants_cache(dir.path, 4));
    // No temporary files are left behind.
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir.path)) {
        (void)e;
        ++files;
    }
    CHECK(files == 1);
}

TEST_CASE("malformed caches are rejected") {
    TempDir dir;
    std::ofstream(pants_cache_path(dir.path, 2)) << "{not json";
    CHECK_THROWS_AS(read_pants_cache(dir.path, 2), CacheError);
    nlohmann::json j = pants_to_json(reconstruct_pants(2));
    j["format_version"] = 99;
    CHECK_THROWS_AS(pants_from_json(j, 2), CacheError);
    j = pants_to_json(reconstruct_pants(2));
    CHECK_THROWS_AS(pants_from_json(j, 3), CacheError);
    j["basis"][0] = "1,1";
    CHECK_THROWS_AS(pants_from_json(j, 2), CacheError);
}

TEST_CASE("cache directory resolution") {
    CHECK(resolve_cache_dir(std::string("/x/y")) == fs::path("/x/y"));
    setenv("LOCALGW_CACHE_DIR", "/from/env", 1);
    CHECK(resolve_cache_dir(std::nullopt) == fs::path("/from/env"));
    CHECK(resolve_cache_dir(std::string("/x/y")) == fs::path("/x/y"));
    unsetenv("LOCALGW_CACHE_DIR");
    CHECK(resolve_cache_dir(std::nullopt) == fs::path(".localgw-cache"));
}

TEST_CASE("pants command") {
    TempDir dir;
    const Run r = run("pants --degree 2 --cache " + dir.path.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("4 entries") != std::string::npos);
    CHECK(fs::exists(pants_cache_path(dir.path, 2)));
    CHECK(run("pants --degree 1 --cache " + dir.path.string()).code == 0);
    CHECK(run("pants --degree 0 --cache " + dir.path.string()).code == 2);
    CHECK(run("pants --cache " + dir.path.string()).code == 2);
}

TEST_CASE("cache I/O failure exits 3") {
    TempDir dir;
    const fs::path blocker = dir.path / "file";
    std::ofstream(blocker) << "x";
    CHECK(run("pants --degree 2 --cache " + (blocker / "sub").string()).code == 3);
    std::ofstream(pants_cache_path(dir.path, 2)) << "{broken";
    CHECK(run("evaluate --degree 2 --cache " + dir.path.string()).code == 3);
}

TEST_CASE("evaluate command") {
    TempDir dir;
    const std::string c = " --cache " + dir.path.string();
    const Run r = run("--format json evaluate --degree 2 --genus 0 --level 0,0 --boundary \"2;2;2\" --convention starred" + c);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const Scalar value = scalar_from_json(j.at("value"));
    const Scalar t1 = Scalar::t1(), t2 = Scalar::t2();
    CHECK(value == Scalar(mpq_class(1, 2)) * Scalar::i() * (t1 + t2) / (t1 * t2) * tan_half());
    CHECK(j.at("sigma_shift").get<int>() == 4);
    CHECK(from_q_form(scalar_from_json(j.at("q_form"))) * Scalar::sigma_pow(-4) == value);

    const Run g1 = run("--format json evaluate --degree 2 --genus 1" + c);
    REQUIRE(g1.code == 0);
    const Scalar v = scalar_from_json(nlohmann::json::parse(g1.out).at("value"));
    CHECK(v.specialize(Scalar(1), Scalar(-1), std::nullopt) == Scalar(2));

    const Run s = run("--format json evaluate --degree 1 --genus 2 --level 1,1 --mode series --order 6" + c);
    REQUIRE(s.code == 0);
    const USeries series = series_from_json(nlohmann::json::parse(s.out).at("series"));
    CHECK(series.precision() == 7);
    CHECK(series.coeff(2) == Scalar(1));
    CHECK(series.coeff(4) == Scalar(mpq_class(-1, 12)));

    const Run text = run("evaluate --degree 1 --level -1,0 --mode series --order 2" + c);
    CHECK(text.out.find("u^-1") != std::string::npos);

    CHECK(run("evaluate --degree 2 --boundary \"3\"" + c).code == 2);
    CHECK(run("evaluate --degree 2 --boundary \"2;x\"" + c).code == 2);
    CHECK(run("evaluate --degree 2 --level 1" + c).code == 2);
    CHECK(run("evaluate --degree 2 --convention sideways" + c).code == 2);
}

TEST_CASE("output is deterministic") {
    TempDir dir;
    const std::string args = "--format json evaluate --degree 3 --genus 1 --level -1,1 --boundary \"2,1\" --cache " +
                             dir.path.string();
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Run p1 = run("--format json pants --degree 3 --cache " + dir.path.string());
    const Run p2 = run("--format json pants --degree 3 --cache " + dir.path.string());
    CHECK(p1.out == p2.out);
}

TEST_CASE("hurwitz and antidiag commands") {
    CHECK(run("hurwitz --degree 2 --profiles \"2;2;1,1\"").out == "1/2\n");
    CHECK(run("hurwitz --degree 3 --profiles \"3;3;1,1,1\"").out == "1/3\n");
    CHECK(run("hurwitz --degree 1 --profiles \"1;1;1\"").out == "1\n");
    CHECK(run("hurwitz --degree 2 --profiles \"2;2\"").code == 2);
    CHECK(run("hurwitz --degree 2 --profiles \"2;2;3\"").code == 2);
    const Run a = run("--format json antidiag --degree 3 --genus 1 --level 0,0");
    REQUIRE(a.code == 0);
    CHECK(scalar_from_json(nlohmann::json::parse(a.out).at("value")) == Scalar(3));
}

TEST_CASE("verify command") {
    const Run r = run("verify --suite fock --max-degree 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run("verify --suite degree2").code == 0);
    CHECK(run("verify --suite nonsense").code == 2);
    CHECK(run("verify --suite fock --max-degree 0").code == 2);
    CHECK_THROWS_AS(run_suite("nonsense", std::nullopt, default_engine()), std::invalid_argument);
}
