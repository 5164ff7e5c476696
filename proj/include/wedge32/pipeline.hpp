#pragma once

#include <cstdint>
#include <optional>

#include "wedge32/exterior.hpp"
#include "wedge32/forms.hpp"
#include "wedge32/group.hpp"
#include "wedge32/molien.hpp"
#include "wedge32/reflection.hpp"
#include "wedge32/report.hpp"
#include "wedge32/rootsystem.hpp"

namespace wedge32 {

inline constexpr std::uint64_t kPropertySeed = 0x77ED6E32ULL;

/// Everything the construction produces, stage by stage. The battery and
/// the CLI consume this; cached stages are re-verified on load against the
/// same contracts the builders enforce.
struct ConstructionContext {
    RootSystemModel model;
    FiniteMatrixGroup e6;    // 6x6 integer Cartan model
    FiniteMatrixGroup de6;   // det-1 subgroup of e6
    std::vector<std::size_t> c3;  // positions in e6, discovery order
    FormTransport transport;      // P^T J P = c A
    MatrixK p_inverse;
    std::vector<MatrixK> c3_transported;  // 6x6 over K, aligned with c3
    std::vector<MatrixK> lifts;           // 4x4 over K, Lambda(lift[i]) = c3_transported[i]
    std::vector<MatrixK> reflections;     // 4x4, lambda(reflections[i]) = c3_transported[i]
    FiniteMatrixGroup h;  // closure of the lifts
    FiniteMatrixGroup w;  // the constructed rank-4 reflection group
    unsigned jobs = 1;

    std::size_t w3_position() const { return c3.at(0); }
};

// ---- stages -------------------------------------------------------------

FiniteMatrixGroup enumerate_e6(const RootSystemModel& model, unsigned jobs);

/// All w in the group with dim Ker(w - j I) = 3; pre-filtered by the exact
/// equivalent integer test w^2 + w + I = 0 and confirmed by the kernel
/// computation over K. Asserts: 80 elements, det 1, order 3, trace -3,
/// closed under inverse.
std::vector<std::size_t> enumerate_c3(const FiniteMatrixGroup& e6);

/// P g P^{-1}; verifies the image preserves the wedge Gram when g
/// preserves the Cartan Gram.
MatrixK transport_forward(const FormTransport& transport, const MatrixK& p_inverse,
                          const MatrixK& g);
/// P^{-1} g P, asserted integral in the Cartan model.
MatrixK transport_back(const FormTransport& transport, const MatrixK& p_inverse,
                       const MatrixK& g);

/// Reconstructs the unique preimage of a transported C3 element under the
/// exterior square that has determinant 1 and eigenvalue 1: eigenspace
/// kernels -> decomposable-bivector supports -> the line L and 3-space M
/// -> assemble 1 on L, (j or j^2) on M. Self-certifying: the exterior
/// square of the result must reproduce the input exactly.
MatrixK lift_c3(const MatrixK& w_transported);

/// {h, -h, h^{-1}, -h^{-1}} are pairwise distinct, map onto {w, w^{-1}},
/// and exactly one carries the eigenvalue list 1, j, j, j.
bool lemma_uniqueness_check(const MatrixK& w_transported, const MatrixK& lift);

/// The unique scalar multiple of a lift that is a reflection: j^2 h when h
/// has eigenvalues (1,j,j,j), j h when it has (1,j^2,j^2,j^2).
MatrixK reflection_from_lift(const MatrixK& lift);

/// det(s) * Lambda(s).
MatrixK lambda_of_reflection(const MatrixK& s);

struct GroupBuild {
    FiniteMatrixGroup group;
    std::vector<MatrixK> generators_used;
};

/// Closure of the lifts; a reduced generating prefix is substituted after
/// membership of every lift certifies equal closure.
GroupBuild build_h(const std::vector<MatrixK>& lifts, unsigned jobs);

/// Closure of the 80 lifts together with zeta6*I and -I; generated in
/// practice from a reduced reflection prefix, certified by membership of
/// every lift, every reflection and both scalars.
GroupBuild build_w(const std::vector<MatrixK>& lifts, const std::vector<MatrixK>& reflections,
                   unsigned jobs);

ConstructionContext build_context(unsigned jobs = 1);

// ---- verification battery ------------------------------------------------

struct BatteryOptions {
    std::vector<std::string> checks;  // substring filters; empty = all
    unsigned truncation = 96;
    std::uint64_t seed = kPropertySeed;
    unsigned jobs = 1;
};

/// Runs every selected check in a fixed order, never short-circuiting;
/// failures become report entries, not exceptions.
VerificationReport run_battery(const ConstructionContext& ctx, const BatteryOptions& opts);

}  // namespace wedge32
