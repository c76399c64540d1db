#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isoeq/linalg.hpp"

namespace isoeq {

/// Ordered tuple (V_1, ..., V_m) of subspaces of one ambient space.
class SpaceTuple {
  public:
    explicit SpaceTuple(std::vector<Subspace> spaces);

    int size() const noexcept { return static_cast<int>(spaces_.size()); }
    const Subspace& operator[](int i) const { return spaces_[static_cast<std::size_t>(i)]; }
    const std::vector<Subspace>& spaces() const noexcept { return spaces_; }
    const Ambient& ambient() const noexcept { return spaces_.front().ambient(); }

    int max_dim() const;
    std::vector<int> dims() const;
    Subspace join() const;  // sum of all members
    Subspace meet() const;  // intersection of all members

    /// Member encodings in sorted order; the multiset fingerprint used for
    /// equivalence tests.
    std::vector<std::vector<Elem>> sorted_encodings() const;

    /// Same members reordered canonically (sorted by encoding).
    SpaceTuple sorted() const;

  private:
    std::vector<Subspace> spaces_;
};

/// Candidate solution (U, V) of the isometry equation
///   sum_i 1/|U_i| * ind_{U_i}  =  sum_i 1/|V_i| * ind_{V_i}.
struct SolutionPair {
    SpaceTuple U;
    SpaceTuple V;

    SolutionPair(SpaceTuple u, SpaceTuple v);

    int size() const noexcept { return U.size(); }
    const Ambient& ambient() const noexcept { return U.ambient(); }
};

SolutionPair swapped(const SolutionPair& p);

/// One side of the equation with denominators cleared: evaluation is scaled
/// by q^scale_exponent, so each member contributes the integer weight
/// q^(scale_exponent - dim).
struct ScaledIndicatorSum {
    int scale_exponent = 0;
    std::vector<std::pair<Subspace, std::uint64_t>> terms;

    static ScaledIndicatorSum from_tuple(const SpaceTuple& t, int scale_exponent);

    std::uint64_t eval(const Vec& x) const;
};

/// Scaled value of one side at a point: sum_i q^(scale_exponent - dim V_i)
/// over the members containing x. Exact integer arithmetic.
std::uint64_t eval_side(const SpaceTuple& t, const Vec& x, int scale_exponent);

struct VerifyOptions {
    std::uint64_t max_points = kDefaultMaxPoints;
    /// Factor both tuples by their common meet before evaluating; the
    /// quotient equation holds exactly when the original does, and the
    /// evaluation domain shrinks by q^(dim meet).
    bool factor_by_common_meet = true;
};

/// Exact check of the equation. Both sides vanish outside the join of all
/// members, so evaluation is restricted to the join.
bool verify_equation(const SolutionPair& p, const VerifyOptions& opts = {});

/// Multiset equality of members (equality up to a permutation).
bool tuples_equivalent(const SpaceTuple& a, const SpaceTuple& b);

/// Tuple equivalence componentwise, straight or crossed.
bool pairs_equivalent(const SolutionPair& a, const SolutionPair& b);

/// For a verified solution: whether the two tuples are permutations of one
/// another. Throws NotASolution otherwise.
bool is_trivial_solution(const SolutionPair& p, const VerifyOptions& opts = {});

/// Intersection of all 2m member spaces.
Subspace common_meet(const SolutionPair& p);

struct FactoredPair {
    QuotientChart chart;
    SolutionPair pair;
};

/// Image of the pair in W/S; S must be contained in every member. A pair is
/// a solution exactly when its factored image is, and triviality is
/// preserved in both directions.
FactoredPair factor_pair(const SolutionPair& p, const Subspace& S);

}  // namespace isoeq
