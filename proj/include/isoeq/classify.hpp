#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isoeq/constructors.hpp"

namespace isoeq {

/// Dimension data of a pair: n is the maximum dimension over both tuples,
/// X and Y index the members of dimension n-1 in V and U respectively.
struct DimensionProfile {
    int n = 0;
    int max_v = 0;
    int max_u = 0;
    std::vector<int> X;
    std::vector<int> Y;
    std::vector<int> dims_v;
    std::vector<int> dims_u;
};

DimensionProfile dimension_profile(const SolutionPair& p);

/// The m x m grid of intersections Z[i][j] = U_i cap V_j plus the common
/// meet of all members.
struct IntersectionGrid {
    std::vector<std::vector<Subspace>> Z;
    Subspace meet;
};

IntersectionGrid intersection_grid(const SolutionPair& p);

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckItem {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
};

/// Structural diagnostics of a nontrivial minimal-length solution. Checks
/// that only apply to the equal-maxima profile are reported Skipped on
/// pairs with distinct tuple maxima, where the repeated-space shape is
/// certified instead.
struct StructuralReport {
    bool equal_maxima = false;
    std::vector<CheckItem> items;

    bool passed() const;
    const CheckItem* find(std::string_view name) const;
};

/// Requires m = q+1 (throws Precondition otherwise). The "solution" and
/// "nontrivial" gates are themselves report items, so a deliberately
/// broken pair reports which structural facts fail rather than erroring.
StructuralReport check_structural_lemmas(const SolutionPair& p, const VerifyOptions& opts = {});

enum class Kind { Trivial, TypeA, TypeB, TypeC };

const char* kind_name(Kind k) noexcept;

/// Result of classifying a solution with m = q+1. For the nontrivial kinds
/// the witness rebuilds a pair equivalent to the input through the
/// matching constructor.
struct Classification {
    Kind kind = Kind::Trivial;
    std::variant<std::monostate, TypeASpec, TypeBSpec, TypeCSpec> witness;
};

/// Decides Trivial / TypeA / TypeB / TypeC and extracts a validated
/// witness. Throws NotMinimalLength (m != q+1), NotASolution, and
/// ClassificationFailed when witness reconstruction does not reproduce the
/// input (which the classification theorem rules out for correct inputs).
Classification classify(const SolutionPair& p, const VerifyOptions& opts = {});

}  // namespace isoeq
