#include "isoeq/classify.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace isoeq {
namespace {

std::string idx2(int i, int j) {
    return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

void add_item(StructuralReport& rep, std::string name, CheckStatus status, std::string detail = {}) {
    rep.items.push_back(CheckItem{std::move(name), status, std::move(detail)});
}

// Pointwise check of sum_i ind_{cells[i]} == ind_V + q * ind_core on V.
bool pencil_identity_holds(const Subspace& V, const std::vector<Subspace>& cells,
                           const Subspace& core, std::uint64_t max_points) {
    const std::uint64_t q = static_cast<std::uint64_t>(V.ambient().field.q());
    for (const Vec& x : enumerate_points(V, max_points)) {
        std::uint64_t lhs = 0;
        for (const Subspace& c : cells) {
            if (c.contains(x)) ++lhs;
        }
        const std::uint64_t rhs = 1 + (core.contains(x) ? q : 0);
        if (lhs != rhs) return false;
    }
    return true;
}

struct TallLowSplit {
    Subspace repeated;
    Subspace low;
};

// For a tuple expected to be (A, ..., A, S) with S of codimension 2 in A:
// q equal copies of one space plus a single low space.
std::optional<TallLowSplit> split_repeated_plus_low(const SpaceTuple& t) {
    const int q = t.ambient().field.q();
    const int n = t.max_dim();
    std::vector<Subspace> tall;
    std::vector<Subspace> low;
    for (const Subspace& s : t.spaces()) {
        (s.dim() == n ? tall : low).push_back(s);
    }
    if (static_cast<int>(tall.size()) != q || low.size() != 1) return std::nullopt;
    for (const Subspace& s : tall) {
        if (s != tall.front()) return std::nullopt;
    }
    if (low.front().dim() != n - 2) return std::nullopt;
    if (!tall.front().contains(low.front())) return std::nullopt;
    return TallLowSplit{tall.front(), low.front()};
}

// Generator of a one-dimensional intersection; empty when the dimension is
// not one.
std::optional<Vec> line_generator(const Subspace& a, const Subspace& b) {
    const Subspace z = intersect(a, b);
    if (z.dim() != 1) return std::nullopt;
    return z.row(0);
}

TypeASpec extract_type_a(const SolutionPair& p) {
    // Tall side has the repeated plane <S, a, b>; the partner is its pencil.
    const bool v_tall = p.V.max_dim() > p.U.max_dim();
    const SpaceTuple& tall_tuple = v_tall ? p.V : p.U;
    const auto split = split_repeated_plus_low(tall_tuple);
    require(split.has_value(), Errc::ClassificationFailed,
            "tall tuple is not q copies of one space plus a codimension-2 core");
    const std::vector<Vec> comp = complement_basis(split->repeated, split->low);
    require(comp.size() == 2, Errc::ClassificationFailed,
            "repeated space does not extend the core by exactly two dimensions");
    return TypeASpec{split->low, comp[0], comp[1]};
}

// The remaining extractions work in the chart W/S where the common meet S
// is factored out; the pair there has trivial meet and members of
// dimension 1 and 2.
TypeBSpec extract_type_b(const SolutionPair& p, const Subspace& meet) {
    const FactoredPair fp = factor_pair(p, meet);
    const SpaceTuple& qu = fp.pair.U;
    const SpaceTuple& qv = fp.pair.V;

    int iu = -1;
    int iv = -1;
    for (int i = 0; i < qu.size(); ++i) {
        if (qu[i].dim() == 1) {
            require(iu < 0, Errc::ClassificationFailed, "more than one short member in U");
            iu = i;
        }
        if (qv[i].dim() == 1) {
            require(iv < 0, Errc::ClassificationFailed, "more than one short member in V");
            iv = i;
        }
    }
    require(iu >= 0 && iv >= 0, Errc::ClassificationFailed, "short members not found");

    const Vec a = qv[iv].row(0);
    const Vec b = qu[iu].row(0);

    const int ju = iu == 0 ? 1 : 0;  // any tall U index
    const int jv = iv == 0 ? 1 : 0;  // any tall V index
    const auto c = line_generator(qu[ju], qv[jv]);
    require(c.has_value(), Errc::ClassificationFailed, "tall members intersect irregularly");

    return TypeBSpec{meet, fp.chart.lift(a), fp.chart.lift(b), fp.chart.lift(*c)};
}

TypeCSpec extract_type_c(const SolutionPair& p, const Subspace& meet) {
    const FactoredPair fp = factor_pair(p, meet);
    const SpaceTuple& qu = fp.pair.U;
    const SpaceTuple& qv = fp.pair.V;
    const Field& f = meet.ambient().field;

    const auto a = line_generator(qu[0], qv[0]);
    const auto b = line_generator(qu[0], qv[1]);
    const auto c = line_generator(qu[1], qv[0]);
    const auto e = line_generator(qu[1], qv[1]);
    require(a && b && c && e, Errc::ClassificationFailed, "corner intersections are not lines");

    // Align the projective parametrizations of the two rulings. The member
    // of V meeting U_1 in <a + b> plays the role of the unit point; its
    // intersection with U_2 written as x*c + y*e fixes the scale of the
    // fourth vector: d = (y/x) * e.
    const Vec ab = vec_add(f, *a, *b);
    int unit = -1;
    for (int j = 0; j < qv.size(); ++j) {
        if (qv[j].contains(ab)) {
            require(unit < 0, Errc::ClassificationFailed, "unit direction found in two members");
            unit = j;
        }
    }
    require(unit >= 0, Errc::ClassificationFailed, "unit direction missing from the V ruling");

    const auto g = line_generator(qu[1], qv[unit]);
    require(g.has_value(), Errc::ClassificationFailed, "unit member misses the second U plane");
    const auto coords = solve_coordinates(f, {*c, *e}, *g);
    require(coords.has_value() && (*coords)[0] != 0 && (*coords)[1] != 0, Errc::ClassificationFailed,
            "unit member is not in general position");
    const Elem scale = f.mul((*coords)[1], f.inv((*coords)[0]));
    const Vec d = vec_scaled(f, scale, *e);

    return TypeCSpec{meet, fp.chart.lift(*a), fp.chart.lift(*b), fp.chart.lift(*c),
                     fp.chart.lift(d)};
}

}  // namespace

DimensionProfile dimension_profile(const SolutionPair& p) {
    DimensionProfile prof;
    prof.dims_v = p.V.dims();
    prof.dims_u = p.U.dims();
    prof.max_v = p.V.max_dim();
    prof.max_u = p.U.max_dim();
    prof.n = std::max(prof.max_v, prof.max_u);
    for (int i = 0; i < p.size(); ++i) {
        if (prof.dims_v[static_cast<std::size_t>(i)] == prof.n - 1) prof.X.push_back(i);
        if (prof.dims_u[static_cast<std::size_t>(i)] == prof.n - 1) prof.Y.push_back(i);
    }
    return prof;
}

IntersectionGrid intersection_grid(const SolutionPair& p) {
    const int m = p.size();
    std::vector<std::vector<Subspace>> z;
    z.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<Subspace> row;
        row.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) row.push_back(intersect(p.U[i], p.V[j]));
        z.push_back(std::move(row));
    }
    return IntersectionGrid{std::move(z), common_meet(p)};
}

bool StructuralReport::passed() const {
    return std::none_of(items.begin(), items.end(),
                        [](const CheckItem& it) { return it.status == CheckStatus::Fail; });
}

const CheckItem* StructuralReport::find(std::string_view name) const {
    for (const CheckItem& it : items) {
        if (it.name == name) return &it;
    }
    return nullptr;
}

StructuralReport check_structural_lemmas(const SolutionPair& p, const VerifyOptions& opts) {
    const int m = p.size();
    const int q = p.ambient().field.q();
    require(m == q + 1, Errc::Precondition,
            "structural diagnostics assume minimal length m = q + 1");

    StructuralReport rep;
    const bool is_solution = verify_equation(p, opts);
    add_item(rep, "solution", is_solution ? CheckStatus::Pass : CheckStatus::Fail);
    const bool nontrivial = is_solution && !tuples_equivalent(p.U, p.V);
    add_item(rep, "nontrivial", nontrivial ? CheckStatus::Pass : CheckStatus::Fail);

    const DimensionProfile prof = dimension_profile(p);
    rep.equal_maxima = prof.max_v == prof.max_u;
    const int n = prof.n;

    // (a) No member of one tuple equals a member of the other.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
            for (int j = 0; j < m; ++j) {
                if (p.U[i] == p.V[j]) {
                    st = CheckStatus::Fail;
                    detail = "U_i = V_j at " + idx2(i, j);
                    break;
                }
            }
        }
        add_item(rep, "distinct-across", st, detail);
    }

    // (d) A member of larger dimension contains every smaller member of the
    // other tuple; checked in both directions.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
            for (int j = 0; j < m; ++j) {
                if (p.U[j].dim() > p.V[i].dim() && !p.U[j].contains(p.V[i])) {
                    st = CheckStatus::Fail;
                    detail = "V_i not inside larger U_j at " + idx2(i, j);
                    break;
                }
                if (p.V[j].dim() > p.U[i].dim() && !p.V[j].contains(p.U[i])) {
                    st = CheckStatus::Fail;
                    detail = "U_i not inside larger V_j at " + idx2(i, j);
                    break;
                }
            }
        }
        add_item(rep, "dominating-containment", st, detail);
    }

    const Subspace meet = common_meet(p);

    // (e) The common core has dimension n - 2 (it lies inside every member
    // by construction).
    add_item(rep, "common-core", meet.dim() == n - 2 ? CheckStatus::Pass : CheckStatus::Fail,
             "meet dim " + std::to_string(meet.dim()) + ", expected " + std::to_string(n - 2));

    // Sum bound: every pairwise sum within one tuple contains all 2m
    // members and has dimension at most n + 2.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int side = 0; side < 2 && st == CheckStatus::Pass; ++side) {
            const SpaceTuple& t = side == 0 ? p.V : p.U;
            for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
                for (int j = i + 1; j < m && st == CheckStatus::Pass; ++j) {
                    const Subspace s = sum_spaces(t[i], t[j]);
                    if (s.dim() > n + 2) {
                        st = CheckStatus::Fail;
                        detail = std::string(side == 0 ? "V" : "U") + " sum too large at " + idx2(i, j);
                        break;
                    }
                    for (int k = 0; k < m; ++k) {
                        if (!s.contains(p.V[k]) || !s.contains(p.U[k])) {
                            st = CheckStatus::Fail;
                            detail = std::string(side == 0 ? "V" : "U") + " sum at " + idx2(i, j) +
                                     " misses member " + std::to_string(k + 1);
                            break;
                        }
                    }
                }
            }
        }
        add_item(rep, "sum-bound", st, detail);
    }

    if (!rep.equal_maxima) {
        // Distinct maxima: certify the repeated-space shape and its pencil
        // partner; the equal-maxima diagnostics do not apply.
        for (const char* name :
             {"no-nesting", "dims-at-least-n-minus-1", "profile-counts", "grid-dims",
              "grid-covering", "grid-meets"}) {
            add_item(rep, name, CheckStatus::Skipped, "requires equal tuple maxima");
        }

        const bool v_tall = prof.max_v > prof.max_u;
        const SpaceTuple& tall = v_tall ? p.V : p.U;
        const SpaceTuple& short_side = v_tall ? p.U : p.V;
        const auto split = split_repeated_plus_low(tall);
        add_item(rep, "tall-shape", split ? CheckStatus::Pass : CheckStatus::Fail,
                 split ? "" : "tall tuple is not q equal spaces plus a codimension-2 core");
        if (split) {
            const std::vector<Subspace> pencil = hyperplanes_through(split->repeated, split->low);
            std::vector<std::vector<Elem>> want;
            for (const Subspace& h : pencil) want.push_back(h.encoding());
            std::sort(want.begin(), want.end());
            const bool match = want == short_side.sorted_encodings();
            add_item(rep, "partner-pencil", match ? CheckStatus::Pass : CheckStatus::Fail,
                     match ? "" : "short tuple is not the hyperplane pencil of the tall space");
            const bool ident = pencil_identity_holds(split->repeated, short_side.spaces(),
                                                     split->low, opts.max_points);
            add_item(rep, "covering-identity", ident ? CheckStatus::Pass : CheckStatus::Fail);
        } else {
            add_item(rep, "partner-pencil", CheckStatus::Skipped, "tall shape failed");
            add_item(rep, "covering-identity", CheckStatus::Skipped, "tall shape failed");
        }
        return rep;
    }

    add_item(rep, "tall-shape", CheckStatus::Skipped, "applies to distinct tuple maxima");
    add_item(rep, "partner-pencil", CheckStatus::Skipped, "applies to distinct tuple maxima");
    add_item(rep, "covering-identity", CheckStatus::Skipped, "applies to distinct tuple maxima");

    // (b) No containments within a tuple (in particular no repeats).
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int side = 0; side < 2 && st == CheckStatus::Pass; ++side) {
            const SpaceTuple& t = side == 0 ? p.V : p.U;
            for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
                for (int j = 0; j < m; ++j) {
                    if (i != j && t[j].contains(t[i])) {
                        st = CheckStatus::Fail;
                        detail = std::string(side == 0 ? "V" : "U") + " nesting at " + idx2(i, j);
                        break;
                    }
                }
            }
        }
        add_item(rep, "no-nesting", st, detail);
    }

    // (c) Every dimension is n-1 or n.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int i = 0; i < m; ++i) {
            if (prof.dims_v[static_cast<std::size_t>(i)] < n - 1 ||
                prof.dims_u[static_cast<std::size_t>(i)] < n - 1) {
                st = CheckStatus::Fail;
                detail = "member " + std::to_string(i + 1) + " below n - 1";
                break;
            }
        }
        add_item(rep, "dims-at-least-n-minus-1", st, detail);
    }

    // |X| = |Y| <= 1.
    {
        const bool ok = prof.X.size() == prof.Y.size() && prof.X.size() <= 1;
        add_item(rep, "profile-counts", ok ? CheckStatus::Pass : CheckStatus::Fail,
                 "|X| = " + std::to_string(prof.X.size()) + ", |Y| = " + std::to_string(prof.Y.size()));
    }

    const IntersectionGrid grid = intersection_grid(p);

    // Off-diagonal cells have dimension n - 1.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i != j && grid.Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].dim() != n - 1) {
                    st = CheckStatus::Fail;
                    detail = "dim Z" + idx2(i, j) + " != n - 1";
                    break;
                }
            }
        }
        add_item(rep, "grid-dims", st, detail);
    }

    // Each full-dimension member is covered by its grid row/column with the
    // pencil identity sum ind_cells = ind_member + q * ind_core.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int j = 0; j < m && st == CheckStatus::Pass; ++j) {
            if (p.V[j].dim() == n) {
                std::vector<Subspace> cells;
                for (int i = 0; i < m; ++i) {
                    cells.push_back(grid.Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                }
                if (!pencil_identity_holds(p.V[j], cells, grid.meet, opts.max_points)) {
                    st = CheckStatus::Fail;
                    detail = "column " + std::to_string(j + 1);
                }
            }
            if (st == CheckStatus::Pass && p.U[j].dim() == n) {
                std::vector<Subspace> cells;
                for (int i = 0; i < m; ++i) {
                    cells.push_back(grid.Z[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
                }
                if (!pencil_identity_holds(p.U[j], cells, grid.meet, opts.max_points)) {
                    st = CheckStatus::Fail;
                    detail = "row " + std::to_string(j + 1);
                }
            }
        }
        add_item(rep, "grid-covering", st, detail);
    }

    // Distinct cells meet exactly in the core. Cells can coincide as spaces
    // (a short member shows up as a whole grid row or column); only
    // genuinely distinct cells are constrained.
    {
        CheckStatus st = CheckStatus::Pass;
        std::string detail;
        for (int i = 0; i < m && st == CheckStatus::Pass; ++i) {
            for (int j = 0; j < m && st == CheckStatus::Pass; ++j) {
                for (int k = i; k < m && st == CheckStatus::Pass; ++k) {
                    for (int l = (k == i ? j + 1 : 0); l < m; ++l) {
                        const Subspace& zij = grid.Z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                        const Subspace& zkl = grid.Z[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                        if (zij == zkl) continue;
                        if (intersect(zij, zkl) != grid.meet) {
                            st = CheckStatus::Fail;
                            detail = "Z" + idx2(i, j) + " and Z" + idx2(k, l);
                            break;
                        }
                    }
                }
            }
        }
        add_item(rep, "grid-meets", st, detail);
    }

    return rep;
}

const char* kind_name(Kind k) noexcept {
    switch (k) {
        case Kind::Trivial: return "Trivial";
        case Kind::TypeA: return "TypeA";
        case Kind::TypeB: return "TypeB";
        case Kind::TypeC: return "TypeC";
    }
    return "Unknown";
}

Classification classify(const SolutionPair& p, const VerifyOptions& opts) {
    const int q = p.ambient().field.q();
    require(p.size() == q + 1, Errc::NotMinimalLength,
            "classification covers minimal length m = q + 1 only (m = " +
                std::to_string(p.size()) + ", q = " + std::to_string(q) + ")");
    require(verify_equation(p, opts), Errc::NotASolution, "the pair does not satisfy the equation");

    if (tuples_equivalent(p.U, p.V)) return Classification{Kind::Trivial, std::monostate{}};

    const DimensionProfile prof = dimension_profile(p);
    Classification out;
    if (prof.max_v != prof.max_u) {
        out.kind = Kind::TypeA;
        TypeASpec w = extract_type_a(p);
        require(pairs_equivalent(build_type_a(w), p), Errc::ClassificationFailed,
                "reconstructed repeated-space witness does not match the pair");
        out.witness = std::move(w);
        return out;
    }

    require(prof.X.size() == prof.Y.size() && prof.X.size() <= 1, Errc::ClassificationFailed,
            "short-member counts violate the minimal-solution profile");
    const Subspace meet = common_meet(p);
    require(meet.dim() == prof.n - 2, Errc::ClassificationFailed,
            "common core does not have dimension n - 2");

    if (prof.X.size() == 1) {
        out.kind = Kind::TypeB;
        TypeBSpec w = extract_type_b(p, meet);
        require(pairs_equivalent(build_type_b(w), p), Errc::ClassificationFailed,
                "reconstructed witness does not match the pair");
        out.witness = std::move(w);
    } else {
        out.kind = Kind::TypeC;
        TypeCSpec w = extract_type_c(p, meet);
        require(pairs_equivalent(build_type_c(w), p), Errc::ClassificationFailed,
                "reconstructed witness does not match the pair");
        out.witness = std::move(w);
    }
    return out;
}

}  // namespace isoeq
