#include "wedge32/cli.hpp"

#include <fstream>
#include <iostream>
#include <thread>

#include "json.hpp"
#include "wedge32/cache.hpp"

namespace wedge32 {

namespace {
namespace fs = std::filesystem;

unsigned effective_jobs(const RunConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void note(const RunConfig& cfg, const std::string& msg) {
    if (cfg.verbosity >= 1) std::cerr << "wedge32: " << msg << '\n';
}

void write_dirty_marker(const fs::path& dir, const std::string& stage, const std::string& why) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream os(dir / (stage + ".dirty"), std::ios::trunc);
    os << why << '\n';
}

void clear_dirty_marker(const fs::path& dir, const std::string& stage) {
    std::error_code ec;
    fs::remove(dir / (stage + ".dirty"), ec);
}

void require_build(bool allow_build, const std::string& stage) {
    if (!allow_build)
        throw CacheError("stage '" + stage +
                         "' has no valid cache; run `wedge32 build` first or pass "
                         "--build-missing");
}

nlohmann::ordered_json matrix_to_json(const MatrixK& m) {
    nlohmann::ordered_json doc;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    auto entries = nlohmann::ordered_json::array();
    for (unsigned r = 0; r < m.rows(); ++r)
        for (unsigned c = 0; c < m.cols(); ++c) entries.push_back(m.at(r, c).to_text());
    doc["entries"] = std::move(entries);
    return doc;
}

}  // namespace

ConstructionContext load_or_build_context(const RunConfig& cfg, bool allow_build) {
    const fs::path dir = cfg.cache_dir;
    if (allow_build) fs::create_directories(dir);

    ConstructionContext ctx;
    ctx.jobs = effective_jobs(cfg);
    ctx.model = build_e6();

    std::string stage = "e6";
    try {
        // ---- E6 enumeration -------------------------------------------------
        {
            const fs::path path = dir / "e6.w32c";
            bool loaded = false;
            if (fs::exists(path)) {
                try {
                    FiniteMatrixGroup g = read_group_cache(path);
                    if (g.generator_positions().size() != ctx.model.simple_reflections.size())
                        throw CacheError("generator count drifted");
                    for (std::size_t i = 0; i < g.generator_positions().size(); ++i)
                        if (g.element(g.generator_positions()[i]) !=
                            ctx.model.simple_reflections[i])
                            throw CacheError("cached generators are not the simple reflections");
                    ctx.e6 = std::move(g);
                    loaded = true;
                    note(cfg, "stage e6: cache hit (" + std::to_string(ctx.e6.size()) +
                                  " elements)");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage e6: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                ctx.e6 = enumerate_e6(ctx.model, ctx.jobs);
                write_group_cache(path, ctx.e6);
                note(cfg, "stage e6: built (" + std::to_string(ctx.e6.size()) + " elements)");
            }
            clear_dirty_marker(dir, stage);
        }
        ctx.de6 = ctx.e6.subgroup_by_det({TowerElement::one(FieldDescriptor::base())});

        // ---- form transport --------------------------------------------------
        stage = "transport";
        {
            const fs::path path = dir / "transport.w32c";
            bool loaded = false;
            const MatrixK jg = gram_of_wedge_form(FieldDescriptor::base());
            if (fs::exists(path)) {
                try {
                    auto ms = read_matrices_cache(path);
                    if (ms.size() != 2 || ms[0].rows() != 6 || ms[1].rows() != 1)
                        throw CacheError("transport cache has unexpected shape");
                    FormTransport t{ms[0], ms[1].at(0, 0).rational_value(),
                                    ms[0].descriptor()};
                    const MatrixK lhs =
                        matmul(t.p.transpose(), matmul(jg.promoted_to(t.descriptor), t.p));
                    const MatrixK rhs =
                        ctx.model.invariant_gram.gram.promoted_to(t.descriptor)
                            .scaled(TowerElement::from_rational(t.c, t.descriptor));
                    if (lhs != rhs) throw CacheError("cached transport violates P^T J P = cA");
                    ctx.transport = std::move(t);
                    loaded = true;
                    note(cfg, "stage transport: cache hit");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage transport: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                ctx.transport =
                    solve_form_transport(ctx.model.invariant_gram, SymmetricForm(jg));
                MatrixK c_mat(1, 1, ctx.transport.descriptor);
                c_mat.at(0, 0) =
                    TowerElement::from_rational(ctx.transport.c, ctx.transport.descriptor);
                write_matrices_cache(path, {ctx.transport.p, c_mat});
                note(cfg, "stage transport: built (field degree " +
                              std::to_string(ctx.transport.descriptor->dim()) + ")");
            }
            clear_dirty_marker(dir, stage);
        }
        ctx.p_inverse = inverse(ctx.transport.p);

        // ---- C3 enumeration --------------------------------------------------
        stage = "c3";
        {
            const fs::path path = dir / "c3.w32c";
            bool loaded = false;
            if (fs::exists(path)) {
                try {
                    const auto ms = read_matrices_cache(path);
                    if (ms.size() != 80) throw CacheError("C3 cache does not hold 80 elements");
                    std::vector<std::size_t> positions;
                    for (const MatrixK& m : ms) {
                        const auto pos = ctx.e6.find(m);
                        if (!pos) throw CacheError("cached C3 element is not in E6");
                        positions.push_back(*pos);
                    }
                    ctx.c3 = std::move(positions);
                    loaded = true;
                    note(cfg, "stage c3: cache hit");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage c3: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                ctx.c3 = enumerate_c3(ctx.e6);
                std::vector<MatrixK> ms;
                ms.reserve(ctx.c3.size());
                for (const std::size_t pos : ctx.c3) ms.push_back(ctx.e6.element(pos));
                write_matrices_cache(path, ms);
                note(cfg, "stage c3: built (80 elements)");
            }
            clear_dirty_marker(dir, stage);
        }
        for (const std::size_t pos : ctx.c3) {
            MatrixK image =
                transport_forward(ctx.transport, ctx.p_inverse, ctx.e6.element(pos));
            if (transport_back(ctx.transport, ctx.p_inverse, image) != ctx.e6.element(pos))
                throw ArithmeticError("transport round trip failed");
            ctx.c3_transported.push_back(std::move(image));
        }

        // ---- lifts -----------------------------------------------------------
        stage = "lifts";
        {
            const fs::path path = dir / "lifts.w32c";
            bool loaded = false;
            if (fs::exists(path)) {
                try {
                    auto ms = read_matrices_cache(path);
                    if (ms.size() != ctx.c3_transported.size())
                        throw CacheError("lift count drifted");
                    for (std::size_t i = 0; i < ms.size(); ++i)
                        if (exterior_square(ms[i]) != ctx.c3_transported[i])
                            throw CacheError("cached lift fails its exterior-square contract");
                    ctx.lifts = std::move(ms);
                    loaded = true;
                    note(cfg, "stage lifts: cache hit");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage lifts: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                for (const MatrixK& wt : ctx.c3_transported) {
                    MatrixK lift = lift_c3(wt);
                    if (!lemma_uniqueness_check(wt, lift))
                        throw ArithmeticError("preimage uniqueness check failed");
                    ctx.lifts.push_back(std::move(lift));
                }
                write_matrices_cache(path, ctx.lifts);
                note(cfg, "stage lifts: built (80 elements)");
            }
            clear_dirty_marker(dir, stage);
        }

        // ---- reflections -----------------------------------------------------
        stage = "reflections";
        {
            const fs::path path = dir / "reflections.w32c";
            bool loaded = false;
            if (fs::exists(path)) {
                try {
                    auto ms = read_matrices_cache(path);
                    if (ms.size() != ctx.lifts.size()) throw CacheError("reflection count drifted");
                    for (std::size_t i = 0; i < ms.size(); ++i) {
                        if (!is_reflection(ms[i]))
                            throw CacheError("cached reflection has rank(s - I) != 1");
                        if (lambda_of_reflection(ms[i]) != ctx.c3_transported[i])
                            throw CacheError("cached reflection fails the lambda contract");
                    }
                    ctx.reflections = std::move(ms);
                    loaded = true;
                    note(cfg, "stage reflections: cache hit");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage reflections: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                for (std::size_t i = 0; i < ctx.lifts.size(); ++i) {
                    MatrixK s = reflection_from_lift(ctx.lifts[i]);
                    if (lambda_of_reflection(s) != ctx.c3_transported[i])
                        throw ArithmeticError("det(s) Lambda(s) does not hit its C3 element");
                    ctx.reflections.push_back(std::move(s));
                }
                write_matrices_cache(path, ctx.reflections);
                note(cfg, "stage reflections: built (80 elements)");
            }
            clear_dirty_marker(dir, stage);
        }

        // ---- H = <lifts> -----------------------------------------------------
        stage = "h";
        {
            const fs::path path = dir / "h.w32c";
            bool loaded = false;
            if (fs::exists(path)) {
                try {
                    FiniteMatrixGroup g = read_group_cache(path);
                    for (const MatrixK& l : ctx.lifts)
                        if (!g.contains(l)) throw CacheError("cached H misses a lift");
                    ctx.h = std::move(g);
                    loaded = true;
                    note(cfg, "stage h: cache hit (" + std::to_string(ctx.h.size()) +
                                  " elements)");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage h: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                ctx.h = build_h(ctx.lifts, ctx.jobs).group;
                write_group_cache(path, ctx.h);
                note(cfg, "stage h: built (" + std::to_string(ctx.h.size()) + " elements)");
            }
            clear_dirty_marker(dir, stage);
        }

        // ---- W ---------------------------------------------------------------
        stage = "w";
        {
            const fs::path path = dir / "w.w32c";
            bool loaded = false;
            const FieldDescriptor* kd = ctx.transport.descriptor;
            const MatrixK zeta6_id = MatrixK::scalar(4, TowerElement::zeta6(kd));
            const MatrixK minus_id = MatrixK::scalar(4, TowerElement::from_int(-1, kd));
            if (fs::exists(path)) {
                try {
                    FiniteMatrixGroup g = read_group_cache(path);
                    for (const MatrixK& l : ctx.lifts)
                        if (!g.contains(l)) throw CacheError("cached W misses a lift");
                    for (const MatrixK& s : ctx.reflections)
                        if (!g.contains(s)) throw CacheError("cached W misses a reflection");
                    if (!g.contains(zeta6_id) || !g.contains(minus_id))
                        throw CacheError("cached W misses a scalar generator");
                    ctx.w = std::move(g);
                    loaded = true;
                    note(cfg, "stage w: cache hit (" + std::to_string(ctx.w.size()) +
                                  " elements)");
                } catch (const std::exception& e) {
                    note(cfg, std::string("stage w: cache rejected: ") + e.what());
                }
            }
            if (!loaded) {
                require_build(allow_build, stage);
                ctx.w = build_w(ctx.lifts, ctx.reflections, ctx.jobs).group;
                write_group_cache(path, ctx.w);
                note(cfg, "stage w: built (" + std::to_string(ctx.w.size()) + " elements)");
            }
            clear_dirty_marker(dir, stage);
        }
    } catch (const std::exception& e) {
        if (allow_build) write_dirty_marker(dir, stage, e.what());
        throw;
    }
    return ctx;
}

int cmd_build(const RunConfig& cfg) {
    try {
        const ConstructionContext ctx = load_or_build_context(cfg, /*allow_build=*/true);
        if (cfg.verbosity >= 1)
            std::cout << "build complete: |E6| = " << ctx.e6.size()
                      << ", |D(E6)| = " << ctx.de6.size() << ", |C3| = " << ctx.c3.size()
                      << ", |H| = " << ctx.h.size() << ", |W| = " << ctx.w.size()
                      << ", field degree " << ctx.transport.descriptor->dim() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "wedge32 build: " << e.what() << '\n';
        return 3;
    }
}

int cmd_verify(const RunConfig& cfg) {
    ConstructionContext ctx;
    try {
        ctx = load_or_build_context(cfg, cfg.build_missing);
    } catch (const CacheError& e) {
        std::cerr << "wedge32 verify: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "wedge32 verify: " << e.what() << '\n';
        return 3;
    }
    try {
        BatteryOptions opts;
        opts.checks = cfg.checks;
        opts.truncation = std::max(cfg.truncation, 85u);
        opts.seed = cfg.seed;
        opts.jobs = effective_jobs(cfg);
        const VerificationReport report = run_battery(ctx, opts);

        if (cfg.format == "json")
            std::cout << report.to_json(true);
        else
            std::cout << report.to_text(true);

        write_report_cache(cfg.cache_dir / "report.w32c", report);
        std::ofstream os(cfg.cache_dir / "report.json", std::ios::trunc | std::ios::binary);
        os << report.to_json(false);

        return report.overall_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "wedge32 verify: " << e.what() << '\n';
        return 3;
    }
}

std::string make_export_document(const ConstructionContext& ctx, const std::string& select) {
    const auto selected = [&](const char* what) {
        return select.find(what) != std::string::npos;
    };
    nlohmann::ordered_json doc;
    doc["format"] = "wedge32-export";
    doc["version"] = 1;
    doc["field"] = {{"radicals", ctx.transport.descriptor->radicals()}};
    doc["scale"] = Rational(ctx.transport.c).get_str();
    if (selected("transport")) doc["transport"] = matrix_to_json(ctx.transport.p);
    doc["reflections"] = nlohmann::ordered_json::array();
    if (selected("reflections"))
        for (const MatrixK& s : ctx.reflections) doc["reflections"].push_back(matrix_to_json(s));
    doc["scalars"] = nlohmann::ordered_json::array();
    if (selected("scalars")) {
        const FieldDescriptor* kd = ctx.transport.descriptor;
        doc["scalars"].push_back(matrix_to_json(MatrixK::scalar(4, TowerElement::zeta6(kd))));
        doc["scalars"].push_back(
            matrix_to_json(MatrixK::scalar(4, TowerElement::from_int(-1, kd))));
    }
    doc["reduced_generators"] = nlohmann::ordered_json::array();
    if (selected("reduced"))
        for (const std::uint32_t pos : ctx.w.generator_positions())
            doc["reduced_generators"].push_back(matrix_to_json(ctx.w.element(pos)));
    return doc.dump(2) + "\n";
}

int cmd_export(const RunConfig& cfg) {
    ConstructionContext ctx;
    try {
        ctx = load_or_build_context(cfg, cfg.build_missing);
    } catch (const CacheError& e) {
        std::cerr << "wedge32 export: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "wedge32 export: " << e.what() << '\n';
        return 3;
    }
    try {
        std::cout << make_export_document(ctx, cfg.export_select);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "wedge32 export: " << e.what() << '\n';
        return 3;
    }
}

int cmd_clean(const RunConfig& cfg) {
    std::error_code ec;
    const char* names[] = {"e6.w32c",   "transport.w32c", "c3.w32c",
                           "lifts.w32c", "reflections.w32c", "h.w32c",
                           "w.w32c",    "report.w32c",    "report.json"};
    for (const char* n : names) std::filesystem::remove(cfg.cache_dir / n, ec);
    for (const char* s : {"e6", "transport", "c3", "lifts", "reflections", "h", "w"})
        std::filesystem::remove(cfg.cache_dir / (std::string(s) + ".dirty"), ec);
    return 0;
}

}  // namespace wedge32
