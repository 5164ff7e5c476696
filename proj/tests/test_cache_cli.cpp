#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "wedge32/cache.hpp"
#include "wedge32/cli.hpp"

using namespace wedge32;
namespace fs = std::filesystem;

namespace {
const FieldDescriptor* base() { return FieldDescriptor::base(); }

std::vector<MatrixK> a3_generators() {
    const std::vector<std::vector<long>> cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    std::vector<MatrixK> gens;
    for (unsigned i = 0; i < 3; ++i) {
        MatrixK s = MatrixK::identity(3, base());
        for (unsigned j = 0; j < 3; ++j)
            s.at(i, j) = TowerElement::from_int((i == j ? 1 : 0) - cartan[i][j], base());
        gens.push_back(std::move(s));
    }
    return gens;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("wedge32-test-" + std::to_string(::getpid()) +
                                                  "-" + std::to_string(counter()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int c = 0;
        return c++;
    }
};

void corrupt_byte(const fs::path& p, std::size_t offset) {
    std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(0, std::ios::end);
    const auto size = static_cast<std::size_t>(f.tellg());
    REQUIRE(offset < size);
    f.seekg(static_cast<std::streamoff>(offset));
    char c;
    f.read(&c, 1);
    c = static_cast<char>(c ^ 0x5a);
    f.seekp(static_cast<std::streamoff>(offset));
    f.write(&c, 1);
}
}  // namespace

TEST_CASE("group cache round trips exactly") {
    TempDir dir;
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const fs::path p = dir.path / "s4.w32c";
    write_group_cache(p, s4);
    const auto back = read_group_cache(p);
    REQUIRE(back.size() == s4.size());
    for (std::size_t i = 0; i < s4.size(); ++i) {
        CHECK(back.element(i) == s4.element(i));
        CHECK(back.determinant(i) == s4.determinant(i));
    }
    CHECK(back.generator_positions() == s4.generator_positions());
}

TEST_CASE("cache files are byte-identical across rewrites") {
    TempDir dir;
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const fs::path p1 = dir.path / "a.w32c";
    const fs::path p2 = dir.path / "b.w32c";
    write_group_cache(p1, s4);
    // a second, freshly closed copy must serialize to the same bytes
    const auto again = FiniteMatrixGroup::closure(a3_generators(), 100, 2);
    write_group_cache(p2, again);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    const std::string b1((std::istreambuf_iterator<char>(f1)), {});
    const std::string b2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(b1 == b2);
}

TEST_CASE("corruption and tampering are refused") {
    TempDir dir;
    const auto s4 = FiniteMatrixGroup::closure(a3_generators(), 100);
    const fs::path p = dir.path / "s4.w32c";

    write_group_cache(p, s4);
    corrupt_byte(p, 200);  // payload byte
    CHECK_THROWS_AS(read_group_cache(p), CacheError);

    write_group_cache(p, s4);
    corrupt_byte(p, 1);  // magic
    CHECK_THROWS_AS(read_group_cache(p), CacheError);

    write_group_cache(p, s4);
    corrupt_byte(p, 4);  // version
    CHECK_THROWS_AS(read_group_cache(p), CacheError);

    // kind confusion: a matrices reader must refuse a group file
    write_group_cache(p, s4);
    CHECK_THROWS_AS(read_matrices_cache(p), CacheError);
}

TEST_CASE("matrix list cache round trips") {
    TempDir dir;
    oracles::SplitMix rng(oracles::kPropertySeed);
    const auto* k = FieldDescriptor::with_radicals({2, 5});
    std::vector<MatrixK> ms;
    for (int i = 0; i < 5; ++i) {
        MatrixK m(3, 3, k);
        for (unsigned r = 0; r < 3; ++r)
            for (unsigned c = 0; c < 3; ++c) m.at(r, c) = oracles::random_tower_element(rng, k);
        ms.push_back(std::move(m));
    }
    const fs::path p = dir.path / "ms.w32c";
    write_matrices_cache(p, ms);
    const auto back = read_matrices_cache(p);
    REQUIRE(back.size() == ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) CHECK(back[i] == ms[i]);
}

TEST_CASE("report JSON follows the documented schema") {
    VerificationReport rep;
    rep.checks.push_back({"demo-check", "a demonstration", "1", "1",
                          CheckResult::Status::pass, 42});
    rep.checks.push_back({"demo-warn", "a warning", "x", "y", CheckResult::Status::warn, 1});

    const auto doc = nlohmann::json::parse(rep.to_json(true));
    CHECK(doc.at("format") == "wedge32-report");
    CHECK(doc.at("version") == 1);
    CHECK(doc.at("overall") == "pass");
    REQUIRE(doc.at("checks").is_array());
    for (const auto& c : doc.at("checks")) {
        CHECK(c.at("id").is_string());
        CHECK(c.at("description").is_string());
        CHECK(c.at("expected").is_string());
        CHECK(c.at("actual").is_string());
        CHECK(c.at("status").is_string());
        CHECK(c.at("ms").is_number());
    }
    // canonical form pins timings to zero and is reproducible
    CHECK(rep.to_json(false) == rep.to_json(false));
    const auto canon = nlohmann::json::parse(rep.to_json(false));
    for (const auto& c : canon.at("checks")) CHECK(c.at("ms") == 0);

    // a failing check flips the overall status and the text summary
    rep.checks.push_back({"demo-fail", "a failure", "0", "1", CheckResult::Status::fail, 2});
    CHECK_FALSE(rep.overall_pass());
    CHECK(rep.to_text().find("OVERALL: fail") != std::string::npos);

    TempDir dir;
    const fs::path p = dir.path / "report.w32c";
    write_report_cache(p, rep);
    CHECK(read_report_cache(p) == rep.to_json(false));
}

TEST_CASE("clean removes cache artifacts") {
    TempDir dir;
    RunConfig cfg;
    cfg.cache_dir = dir.path;
    {
        std::ofstream(dir.path / "e6.w32c") << "x";
        std::ofstream(dir.path / "report.json") << "{}";
        std::ofstream(dir.path / "w.dirty") << "broken";
    }
    CHECK(cmd_clean(cfg) == 0);
    CHECK_FALSE(fs::exists(dir.path / "e6.w32c"));
    CHECK_FALSE(fs::exists(dir.path / "report.json"));
    CHECK_FALSE(fs::exists(dir.path / "w.dirty"));
}
