#pragma once

#include <optional>

#include "isoeq/classify.hpp"

namespace isoeq {

/// Pruning switches for partner search. Every enabled rule is a theorem
/// about the search target, and a pruned run returns exactly the same
/// classes as an unpruned one; the cross-check lives in the test suite.
struct Pruning {
    /// Both sides of the equation take the same value at the origin; prune
    /// candidate tuples whose weight sum cannot reach it.
    bool value_at_zero = true;
    /// Enumerate feasible dimension multisets first, then fill members.
    bool dim_multiset = true;
    /// Structural facts about nontrivial minimal-length solutions
    /// (dimension profile, common core, containment and grid constraints).
    /// Applied only when searching nontrivial partners at m = q+1, the
    /// regime where those facts hold.
    bool structure_constraints = true;

    static Pruning none() { return Pruning{false, false, false}; }
};

struct SearchCaps {
    std::uint64_t max_points = kDefaultMaxPoints;
    std::uint64_t max_subspaces = kDefaultMaxSubspaces;
};

/// All multisets of m proper subspaces of V whose union is V, in a
/// deterministic order.
std::vector<std::vector<Subspace>> enumerate_coverings(const Subspace& V, int m,
                                                       const SearchCaps& caps = {});

struct CoveringCertificate {
    Subspace core;                    // intersection of the covering members
    int members = 0;                  // q + 1
    std::uint64_t points_checked = 0; // size of the covered space
};

/// For a (q+1)-membered covering of V: certifies that the members are
/// exactly the hyperplanes of V through a codimension-2 core S and that
/// sum_i ind_{W_i} = ind_V + q*ind_S holds at every point of V. Throws
/// NotACovering when the input is not a covering by proper subspaces, and
/// StructureViolation when the certified structure fails (which would
/// contradict the minimal-covering description).
CoveringCertificate verify_covering_structure(const Subspace& V, const std::vector<Subspace>& cover);

struct PartnerStats {
    std::uint64_t pairs_tested = 0;
};

/// All tuples U, up to tuple equivalence, with (U, V) a solution. Candidate
/// members are drawn from the subspaces of join(V), which every partner
/// member must lie in. With trivial_excluded the class U ~ V is dropped.
std::vector<SpaceTuple> find_partners(const SpaceTuple& V, bool trivial_excluded,
                                      const Pruning& pruning = {}, const SearchCaps& caps = {},
                                      PartnerStats* stats = nullptr);

struct SearchConfig {
    Field field;
    int dim = 2;
    int m = 2;
    Pruning pruning;
    SearchCaps caps;
    int jobs = 1;
};

struct SearchCounts {
    std::uint64_t tuples_scanned = 0;
    std::uint64_t pairs_tested = 0;
    std::uint64_t classes_found = 0;
};

/// Exhaustive scan over V-tuples (as multisets) with partner search,
/// deduplicated into pair-equivalence classes. Classifications are
/// computed when m = q+1. The report is deterministic: same
/// representatives in the same order for any worker count.
struct SearchReport {
    std::vector<SolutionPair> solutions;
    std::vector<std::optional<Classification>> classifications;
    SearchCounts counts;
    double elapsed_seconds = 0.0;
};

SearchReport search_nontrivial(const SearchConfig& cfg);

}  // namespace isoeq
