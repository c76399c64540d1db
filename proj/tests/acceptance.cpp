// Acceptance suite: one criterion per function, one pass/fail line each.
// All checks are exact (integer arithmetic, exact counts); no tolerances.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "isoeq/json_io.hpp"
#include "isoeq/search.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace isoeq;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void()> run;
};

struct Failure {
    std::string message;
};

void expect(bool cond, const std::string& message) {
    if (!cond) throw Failure{message};
}

Vec unit(int dim, int i) {
    Vec v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

Subspace unit_core(const Ambient& amb, int first, int count) {
    std::vector<Vec> gens;
    for (int i = 0; i < count; ++i) gens.push_back(unit(amb.dim, first + i));
    return Subspace::span(amb, gens);
}

struct Instance {
    std::string label;
    Kind kind;
    SolutionPair pair;
};

// The grid of criterion 1: q in {2, 3, 4, 5}, core dimension in {0, 1},
// minimal and minimal+1 ambient dimensions, all three families.
std::vector<Instance> constructed_grid(const std::vector<std::pair<int, int>>& fields) {
    std::vector<Instance> out;
    for (auto [p, e] : fields) {
        const Field f = Field::make(p, e);
        for (int s : {0, 1}) {
            for (int extra : {0, 1}) {
                const auto label = [&](const char* type, int dim) {
                    return std::string(type) + " q=" + std::to_string(f.q()) +
                           " s=" + std::to_string(s) + " dim=" + std::to_string(dim);
                };
                {
                    const Ambient amb = make_ambient(f, 2 + s + extra);
                    out.push_back({label("A", amb.dim), Kind::TypeA,
                                   build_type_a({unit_core(amb, 2, s), unit(amb.dim, 0),
                                                 unit(amb.dim, 1)})});
                }
                {
                    const Ambient amb = make_ambient(f, 3 + s + extra);
                    out.push_back({label("B", amb.dim), Kind::TypeB,
                                   build_type_b({unit_core(amb, 3, s), unit(amb.dim, 0),
                                                 unit(amb.dim, 1), unit(amb.dim, 2)})});
                }
                {
                    const Ambient amb = make_ambient(f, 4 + s + extra);
                    out.push_back({label("C", amb.dim), Kind::TypeC,
                                   build_type_c({unit_core(amb, 4, s), unit(amb.dim, 0),
                                                 unit(amb.dim, 1), unit(amb.dim, 2),
                                                 unit(amb.dim, 3)})});
                }
            }
        }
    }
    return out;
}

const std::vector<std::pair<int, int>> kAllFields{{2, 1}, {3, 1}, {2, 2}, {5, 1}};
const std::vector<std::pair<int, int>> kSmallFields{{2, 1}, {3, 1}};

// 1. Constructed-family verification: exact solution, nontrivial, for the
// whole grid including GF(4).
void criterion_constructed_families() {
    const auto grid = constructed_grid(kAllFields);
    expect(grid.size() == 48, "expected 48 grid instances");
    for (const Instance& inst : grid) {
        expect(verify_equation(inst.pair), inst.label + ": equation fails");
        expect(!is_trivial_solution(inst.pair), inst.label + ": unexpectedly trivial");
    }
}

// 2. Covering audit: exact counts for the named cases, none for m <= q,
// and the exact pencil identity for every minimal covering.
void criterion_coverings() {
    struct Case {
        int p, e, dim, m;
        std::size_t want;
    };
    const Case cases[] = {
        {2, 1, 2, 3, 1}, {3, 1, 2, 4, 1}, {2, 1, 3, 3, 7},
        {2, 1, 2, 1, 0}, {2, 1, 2, 2, 0}, {2, 1, 3, 1, 0}, {2, 1, 3, 2, 0},
        {3, 1, 2, 1, 0}, {3, 1, 2, 2, 0}, {3, 1, 2, 3, 0},
    };
    for (const Case& c : cases) {
        const Ambient amb = make_ambient(Field::make(c.p, c.e), c.dim);
        const Subspace whole = Subspace::full(amb);
        const auto covers = enumerate_coverings(whole, c.m);
        expect(covers.size() == c.want,
               "coverings(q=" + std::to_string(amb.field.q()) + ", d=" + std::to_string(c.dim) +
                   ", m=" + std::to_string(c.m) + "): got " + std::to_string(covers.size()) +
                   ", want " + std::to_string(c.want));
        if (c.m == amb.field.q() + 1) {
            for (const auto& cover : covers) {
                const CoveringCertificate cert = verify_covering_structure(whole, cover);
                expect(cert.core.dim() == c.dim - 2, "covering core has wrong dimension");
            }
        }
    }
}

// 3. Minimal-length audit: no nontrivial solutions below m = q + 1.
void criterion_minimal_length() {
    for (int d : {2, 3}) {
        SearchConfig cfg{Field::make(2, 1), d, 2, Pruning{}, SearchCaps{}, 2};
        const SearchReport rep = search_nontrivial(cfg);
        expect(rep.solutions.empty(),
               "q=2 d=" + std::to_string(d) + " m=2: found " +
                   std::to_string(rep.solutions.size()) + " classes");
    }
    for (int m : {2, 3}) {
        SearchConfig cfg{Field::make(3, 1), 2, m, Pruning{}, SearchCaps{}, 2};
        const SearchReport rep = search_nontrivial(cfg);
        expect(rep.solutions.empty(),
               "q=3 d=2 m=" + std::to_string(m) + ": found " +
                   std::to_string(rep.solutions.size()) + " classes");
    }
}

// 4. Classification completeness at desk scale: pruned == unpruned at
// (q=2, d=3, m=3) with only the first two kinds; the localized run at
// (q=2, d=4, m=3) adds the third kind with zero classification failures.
void criterion_classification_completeness() {
    SearchConfig pruned{Field::make(2, 1), 3, 3, Pruning{}, SearchCaps{}, 4};
    SearchConfig raw{Field::make(2, 1), 3, 3, Pruning::none(), SearchCaps{}, 4};
    const SearchReport rp = search_nontrivial(pruned);
    const SearchReport rr = search_nontrivial(raw);

    std::set<std::string> dp;
    for (const SolutionPair& s : rp.solutions) dp.insert(jsonio::pair_digest(s));
    std::set<std::string> dr;
    for (const SolutionPair& s : rr.solutions) dr.insert(jsonio::pair_digest(s));
    expect(!dp.empty(), "d=3 search found no classes");
    expect(dp == dr, "pruned and unpruned class sets differ at d=3");

    std::set<Kind> kinds3;
    for (const auto& cls : rp.classifications) {
        expect(cls.has_value(), "missing classification at minimal length");
        kinds3.insert(cls->kind);
    }
    expect(kinds3 == std::set<Kind>{Kind::TypeA, Kind::TypeB},
           "d=3 kinds are not exactly {TypeA, TypeB}");

    SearchConfig big{Field::make(2, 1), 4, 3, Pruning{}, SearchCaps{}, 4};
    const SearchReport rb = search_nontrivial(big);  // ClassificationFailed would propagate
    std::set<Kind> kinds4;
    for (const auto& cls : rb.classifications) {
        expect(cls.has_value(), "missing classification at minimal length");
        kinds4.insert(cls->kind);
    }
    expect(kinds4 == std::set<Kind>{Kind::TypeA, Kind::TypeB, Kind::TypeC},
           "d=4 kinds are not exactly {TypeA, TypeB, TypeC}");
}

// 5. Partner uniqueness: each tuple of each constructed instance at
// q in {2, 3} has exactly one nontrivial partner class, the constructed one.
void criterion_partner_uniqueness() {
    for (const Instance& inst : constructed_grid(kSmallFields)) {
        const auto from_v = find_partners(inst.pair.V, /*trivial_excluded=*/true);
        expect(from_v.size() == 1,
               inst.label + ": " + std::to_string(from_v.size()) + " partner classes for V");
        expect(tuples_equivalent(from_v[0], inst.pair.U),
               inst.label + ": partner of V is not the constructed tuple");

        const auto from_u = find_partners(inst.pair.U, /*trivial_excluded=*/true);
        expect(from_u.size() == 1,
               inst.label + ": " + std::to_string(from_u.size()) + " partner classes for U");
        expect(tuples_equivalent(from_u[0], inst.pair.V),
               inst.label + ": partner of U is not the constructed tuple");
    }
}

// 6. Quotient transport: factoring by the common core preserves the
// equation, nontriviality and the classification kind, and lifted
// witnesses rebuild an equivalent solution.
void criterion_quotient_transport() {
    testing::Rng rng(0xC0FFEE);
    int done = 0;
    while (done < 100) {
        const int fi = static_cast<int>(rng() % kAllFields.size());
        const Field f = Field::make(kAllFields[static_cast<std::size_t>(fi)].first,
                                    kAllFields[static_cast<std::size_t>(fi)].second);
        const int s_dim = 1 + static_cast<int>(rng() % 2);
        const int type = static_cast<int>(rng() % 3);
        const int vec_count = type == 0 ? 2 : (type == 1 ? 3 : 4);
        const int dim = vec_count + s_dim + static_cast<int>(rng() % 2);
        const Ambient amb = make_ambient(f, dim);
        const testing::RandomSpec spec = testing::random_spec(amb, s_dim, vec_count, rng);

        SolutionPair pair = [&] {
            if (type == 0) return build_type_a({spec.S, spec.vecs[0], spec.vecs[1]});
            if (type == 1) return build_type_b({spec.S, spec.vecs[0], spec.vecs[1], spec.vecs[2]});
            return build_type_c({spec.S, spec.vecs[0], spec.vecs[1], spec.vecs[2], spec.vecs[3]});
        }();
        const Kind want = type == 0 ? Kind::TypeA : (type == 1 ? Kind::TypeB : Kind::TypeC);

        const Subspace meet = common_meet(pair);
        expect(meet == spec.S, "common meet differs from the constructed core");
        const FactoredPair fp = factor_pair(pair, meet);
        expect(verify_equation(fp.pair), "factored pair is no longer a solution");
        expect(!is_trivial_solution(fp.pair), "factored pair became trivial");

        const Classification cls = classify(fp.pair);
        expect(cls.kind == want, "factored classification kind changed");

        // Lift the quotient witness back through the chart and rebuild.
        SolutionPair rebuilt = [&] {
            if (cls.kind == Kind::TypeA) {
                const auto& w = std::get<TypeASpec>(cls.witness);
                return build_type_a({fp.chart.lift_subspace(w.S), fp.chart.lift(w.a),
                                     fp.chart.lift(w.b)});
            }
            if (cls.kind == Kind::TypeB) {
                const auto& w = std::get<TypeBSpec>(cls.witness);
                return build_type_b({fp.chart.lift_subspace(w.S), fp.chart.lift(w.a),
                                     fp.chart.lift(w.b), fp.chart.lift(w.c)});
            }
            const auto& w = std::get<TypeCSpec>(cls.witness);
            return build_type_c({fp.chart.lift_subspace(w.S), fp.chart.lift(w.a),
                                 fp.chart.lift(w.b), fp.chart.lift(w.c), fp.chart.lift(w.d)});
        }();
        expect(pairs_equivalent(rebuilt, pair), "lifted witness does not rebuild the pair");
        ++done;
    }
}

// 7. Structural diagnostics hold on every constructed instance of the
// criterion-1 grid; the equal-maxima suite runs fully on the B and C
// families.
void criterion_structural_suite() {
    const char* equal_max_checks[] = {
        "distinct-across", "no-nesting",  "dims-at-least-n-minus-1", "dominating-containment",
        "common-core",     "grid-dims",   "grid-covering",           "grid-meets",
        "profile-counts",  "sum-bound"};
    for (const Instance& inst : constructed_grid(kAllFields)) {
        const StructuralReport rep = check_structural_lemmas(inst.pair);
        expect(rep.passed(), inst.label + ": structural check failed");
        if (inst.kind == Kind::TypeA) {
            expect(!rep.equal_maxima, inst.label + ": expected distinct maxima");
            for (const char* name : {"tall-shape", "partner-pencil", "covering-identity"}) {
                expect(rep.find(name)->status == CheckStatus::Pass,
                       inst.label + ": " + name + " did not pass");
            }
        } else {
            expect(rep.equal_maxima, inst.label + ": expected equal maxima");
            for (const char* name : equal_max_checks) {
                expect(rep.find(name) != nullptr && rep.find(name)->status == CheckStatus::Pass,
                       inst.label + ": " + name + " did not pass");
            }
        }
    }
}

// 8. Oracle agreement: the scaled-integer, join-restricted, quotient-
// reduced verifier agrees with full-domain rational evaluation on 1000
// pairs, solutions and non-solutions alike.
void criterion_oracle_agreement() {
    testing::Rng rng(0xBEEF);
    int agreements = 0;
    int solutions = 0;
    for (auto [p, e, d] : {std::tuple{2, 1, 3}, {3, 1, 2}}) {
        const Ambient amb = make_ambient(Field::make(p, e), d);
        for (int trial = 0; trial < 500; ++trial) {
            SolutionPair pair = [&]() -> SolutionPair {
                const int style = trial % 10;
                if (style == 8) {  // trivial solution: shuffled copy
                    SpaceTuple v = testing::random_tuple(amb, 1 + static_cast<int>(rng() % 4), rng);
                    std::vector<Subspace> u = v.spaces();
                    std::shuffle(u.begin(), u.end(), rng);
                    return SolutionPair(SpaceTuple(std::move(u)), std::move(v));
                }
                if (style == 9) {  // constructed nontrivial solution
                    if (d == 3) {
                        const testing::RandomSpec s = testing::random_spec(amb, 0, 3, rng);
                        return build_type_b({s.S, s.vecs[0], s.vecs[1], s.vecs[2]});
                    }
                    const testing::RandomSpec s = testing::random_spec(amb, 0, 2, rng);
                    return build_type_a({s.S, s.vecs[0], s.vecs[1]});
                }
                const int m = 1 + static_cast<int>(rng() % 4);
                return SolutionPair(testing::random_tuple(amb, m, rng),
                                    testing::random_tuple(amb, m, rng));
            }();
            const bool fast = verify_equation(pair);
            const bool oracle = testing::rational_verify(pair);
            expect(fast == oracle, "verifier disagrees with the rational oracle");
            ++agreements;
            if (oracle) ++solutions;
        }
    }
    expect(agreements == 1000, "expected exactly 1000 comparisons");
    expect(solutions >= 100, "sample contains too few solutions to be meaningful");
}

// 9. Counting oracle: the product-formula count matches the enumeration
// for q in {2, 3}, d <= 4, every k.
void criterion_counting() {
    for (int p : {2, 3}) {
        const Field f = Field::make(p, 1);
        for (int d = 1; d <= 4; ++d) {
            const Ambient amb = make_ambient(f, d);
            std::uint64_t total = 0;
            for (int k = 0; k <= d; ++k) {
                const auto list = enumerate_subspaces(amb, k);
                const std::uint64_t count = count_subspaces(amb, k);
                expect(list.size() == count,
                       "q=" + std::to_string(p) + " d=" + std::to_string(d) +
                           " k=" + std::to_string(k) + ": enumeration " +
                           std::to_string(list.size()) + " != formula " + std::to_string(count));
                total += count;
            }
            if (p == 2 && d == 3) expect(total == 16, "GF(2)^3 must have 16 subspaces");
            if (p == 2 && d == 4) expect(total == 67, "GF(2)^4 must have 67 subspaces");
        }
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "constructed-family verification (q in {2,3,4,5}, s in {0,1}, two ambients)",
         criterion_constructed_families},
        {2, "covering audit (counts and pencil identity)", criterion_coverings},
        {3, "minimal-length audit (no nontrivial classes below q+1)", criterion_minimal_length},
        {4, "classification completeness (d=3 pruned==unpruned, d=4 all kinds)",
         criterion_classification_completeness},
        {5, "partner uniqueness on constructed instances at q in {2,3}",
         criterion_partner_uniqueness},
        {6, "quotient transport on 100 randomized instances", criterion_quotient_transport},
        {7, "structural diagnostics on the constructed grid", criterion_structural_suite},
        {8, "oracle agreement on 1000 random pairs", criterion_oracle_agreement},
        {9, "subspace counting oracle (q in {2,3}, d <= 4)", criterion_counting},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const Failure& f) {
            error = f.message;
        } catch (const std::exception& e) {
            error = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (error.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", c.number, c.title.c_str(), secs);
        } else {
            std::printf("[FAIL] criterion %d: %s (%.2fs) -- %s\n", c.number, c.title.c_str(), secs,
                        error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures != 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
