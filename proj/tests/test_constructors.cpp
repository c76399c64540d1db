#include <doctest.h>

#include <set>

#include "isoeq/classify.hpp"
#include "isoeq/constructors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace isoeq;

namespace {

Vec ev(std::initializer_list<int> coords) {
    Vec v;
    for (int c : coords) v.push_back(static_cast<Elem>(c));
    return v;
}

Vec unit(int dim, int i) {
    Vec v(static_cast<std::size_t>(dim), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

// Standard witness: a, b, (c, d) = e1, e2, ... and S spanned by the next
// s_dim unit vectors.
template <typename Spec>
Spec standard_spec(const Ambient& amb, int s_dim);

template <>
TypeASpec standard_spec(const Ambient& amb, int s_dim) {
    std::vector<Vec> gens;
    for (int i = 0; i < s_dim; ++i) gens.push_back(unit(amb.dim, 2 + i));
    return {Subspace::span(amb, gens), unit(amb.dim, 0), unit(amb.dim, 1)};
}

template <>
TypeBSpec standard_spec(const Ambient& amb, int s_dim) {
    std::vector<Vec> gens;
    for (int i = 0; i < s_dim; ++i) gens.push_back(unit(amb.dim, 3 + i));
    return {Subspace::span(amb, gens), unit(amb.dim, 0), unit(amb.dim, 1), unit(amb.dim, 2)};
}

template <>
TypeCSpec standard_spec(const Ambient& amb, int s_dim) {
    std::vector<Vec> gens;
    for (int i = 0; i < s_dim; ++i) gens.push_back(unit(amb.dim, 4 + i));
    return {Subspace::span(amb, gens), unit(amb.dim, 0), unit(amb.dim, 1), unit(amb.dim, 2),
            unit(amb.dim, 3)};
}

}  // namespace

TEST_CASE("repeated-space family over GF(2)^2 matches the expected tuple") {
    const Ambient amb = make_ambient(Field::make(2, 1), 2);
    const SolutionPair p = build_type_a(standard_spec<TypeASpec>(amb, 0));

    CHECK(p.V[0] == Subspace::full(amb));
    CHECK(p.V[1] == Subspace::full(amb));
    CHECK(p.V[2] == Subspace::zero(amb));
    CHECK(p.U[0] == Subspace::span(amb, {ev({0, 1})}));
    CHECK(p.U[1] == Subspace::span(amb, {ev({1, 1})}));
    CHECK(p.U[2] == Subspace::span(amb, {ev({1, 0})}));

    CHECK(verify_equation(p));
    CHECK_FALSE(is_trivial_solution(p));
    CHECK(testing::rational_verify(p));
}

TEST_CASE("repeated-space family over GF(3)^2 yields all four lines") {
    const Ambient amb = make_ambient(Field::make(3, 1), 2);
    const SolutionPair p = build_type_a(standard_spec<TypeASpec>(amb, 0));
    CHECK(p.size() == 4);
    std::set<std::vector<Elem>> got;
    for (const Subspace& u : p.U.spaces()) got.insert(u.encoding());
    std::set<std::vector<Elem>> want;
    for (const Subspace& l : enumerate_subspaces(amb, 1)) want.insert(l.encoding());
    CHECK(got == want);
    CHECK(verify_equation(p));
}

TEST_CASE("repeated-space family with a one-dimensional core in GF(2)^3") {
    const Ambient amb = make_ambient(Field::make(2, 1), 3);
    const Subspace s = Subspace::span(amb, {ev({0, 0, 1})});
    const SolutionPair p = build_type_a({s, unit(3, 0), unit(3, 1)});
    CHECK(p.V[0] == Subspace::full(amb));
    CHECK(p.V[2] == s);
    for (const Subspace& u : p.U.spaces()) {
        CHECK(u.dim() == 2);
        CHECK(u.contains(s));
    }
    CHECK(verify_equation(p));
    CHECK(testing::rational_verify(p));
}

TEST_CASE("short-pair family over GF(2)^3 matches the expected tuples and grid") {
    const Ambient amb = make_ambient(Field::make(2, 1), 3);
    const SolutionPair p = build_type_b(standard_spec<TypeBSpec>(amb, 0));

    CHECK(p.V[0] == Subspace::span(amb, {ev({0, 1, 0}), ev({0, 0, 1})}));
    CHECK(p.V[1] == Subspace::span(amb, {ev({0, 1, 0}), ev({1, 0, 1})}));
    CHECK(p.V[2] == Subspace::span(amb, {ev({1, 0, 0})}));
    CHECK(p.U[0] == Subspace::span(amb, {ev({1, 0, 0}), ev({0, 0, 1})}));
    CHECK(p.U[1] == Subspace::span(amb, {ev({1, 0, 0}), ev({0, 1, 1})}));
    CHECK(p.U[2] == Subspace::span(amb, {ev({0, 1, 0})}));

    CHECK(verify_equation(p));
    CHECK_FALSE(is_trivial_solution(p));
    CHECK(testing::rational_verify(p));

    // Grid cells of the tall members are the lines <t_j a + t_i b + c>.
    const Field& f = amb.field;
    const auto alpha = f.elements();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Vec g(3, 0);
            vec_add_scaled_inplace(f, g, alpha[static_cast<std::size_t>(j)], unit(3, 0));
            vec_add_scaled_inplace(f, g, alpha[static_cast<std::size_t>(i)], unit(3, 1));
            vec_add_scaled_inplace(f, g, 1, unit(3, 2));
            CHECK(intersect(p.U[i], p.V[j]) == Subspace::span(amb, {g}));
        }
    }
}

TEST_CASE("short-pair family dimensions over GF(3)^3") {
    const Ambient amb = make_ambient(Field::make(3, 1), 3);
    const SolutionPair p = build_type_b(standard_spec<TypeBSpec>(amb, 0));
    CHECK(p.size() == 4);
    CHECK(p.V.dims() == std::vector<int>{2, 2, 2, 1});
    CHECK(p.U.dims() == std::vector<int>{2, 2, 2, 1});
    CHECK(verify_equation(p));
    CHECK(testing::rational_verify(p));
}

TEST_CASE("projective family over GF(2)^4 matches the expected tuples and grid") {
    const Ambient amb = make_ambient(Field::make(2, 1), 4);
    const SolutionPair p = build_type_c(standard_spec<TypeCSpec>(amb, 0));

    CHECK(p.V[0] == Subspace::span(amb, {ev({0, 1, 0, 0}), ev({0, 0, 0, 1})}));
    CHECK(p.V[1] == Subspace::span(amb, {ev({1, 1, 0, 0}), ev({0, 0, 1, 1})}));
    CHECK(p.V[2] == Subspace::span(amb, {ev({1, 0, 0, 0}), ev({0, 0, 1, 0})}));
    CHECK(p.U[0] == Subspace::span(amb, {ev({0, 0, 1, 0}), ev({0, 0, 0, 1})}));
    CHECK(p.U[1] == Subspace::span(amb, {ev({1, 0, 1, 0}), ev({0, 1, 0, 1})}));
    CHECK(p.U[2] == Subspace::span(amb, {ev({1, 0, 0, 0}), ev({0, 1, 0, 0})}));

    CHECK(verify_equation(p));
    CHECK_FALSE(is_trivial_solution(p));
    CHECK(testing::rational_verify(p));

    // Grid formula: U_i cap V_j is spanned by
    // x_i x_j a + x_i y_j b + y_i x_j c + y_i y_j d, with [x : y] the
    // projective parameters of the two members. All m^2 cells are distinct
    // lines, and the members of one tuple pairwise meet in the core.
    const Field& f = amb.field;
    const auto line = f.projective_line();
    std::set<std::vector<Elem>> cells;
    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.size(); ++j) {
            const auto [xi, yi] = line[static_cast<std::size_t>(i)];
            const auto [xj, yj] = line[static_cast<std::size_t>(j)];
            Vec g(4, 0);
            vec_add_scaled_inplace(f, g, f.mul(xi, xj), unit(4, 0));
            vec_add_scaled_inplace(f, g, f.mul(xi, yj), unit(4, 1));
            vec_add_scaled_inplace(f, g, f.mul(yi, xj), unit(4, 2));
            vec_add_scaled_inplace(f, g, f.mul(yi, yj), unit(4, 3));
            const Subspace z = intersect(p.U[i], p.V[j]);
            CHECK(z == Subspace::span(amb, {g}));
            cells.insert(z.encoding());
        }
    }
    CHECK(cells.size() == 9);

    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.size(); ++j) {
            if (i != j) CHECK(intersect(p.V[i], p.V[j]).dim() == 0);
        }
    }
}

TEST_CASE("constructed families verify across fields, cores and ambients") {
    for (auto [pp, ee] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const Field f = Field::make(pp, ee);
        for (int s_dim : {0, 1, 2}) {
            for (int extra : {0, 1}) {
                {
                    const Ambient amb = make_ambient(f, 2 + s_dim + extra);
                    const SolutionPair p = build_type_a(standard_spec<TypeASpec>(amb, s_dim));
                    CHECK(verify_equation(p));
                    CHECK_FALSE(is_trivial_solution(p));
                    const DimensionProfile prof = dimension_profile(p);
                    CHECK(prof.max_v != prof.max_u);
                }
                {
                    const Ambient amb = make_ambient(f, 3 + s_dim + extra);
                    const SolutionPair p = build_type_b(standard_spec<TypeBSpec>(amb, s_dim));
                    CHECK(verify_equation(p));
                    CHECK_FALSE(is_trivial_solution(p));
                    const DimensionProfile prof = dimension_profile(p);
                    CHECK(prof.max_v == prof.max_u);
                    CHECK(prof.X.size() == 1);
                    CHECK(prof.Y.size() == 1);
                }
                {
                    const Ambient amb = make_ambient(f, 4 + s_dim + extra);
                    const SolutionPair p = build_type_c(standard_spec<TypeCSpec>(amb, s_dim));
                    CHECK(verify_equation(p));
                    CHECK_FALSE(is_trivial_solution(p));
                    const DimensionProfile prof = dimension_profile(p);
                    CHECK(prof.max_v == prof.max_u);
                    CHECK(prof.X.empty());
                    CHECK(prof.Y.empty());
                }
            }
        }
    }
}

TEST_CASE("solutions are preserved by invertible linear maps") {
    testing::Rng rng(555);
    const Ambient amb = make_ambient(Field::make(2, 1), 4);
    const SolutionPair pc = build_type_c(standard_spec<TypeCSpec>(amb, 0));
    const SolutionPair pb = build_type_b(standard_spec<TypeBSpec>(amb, 1));
    for (int trial = 0; trial < 10; ++trial) {
        const auto mat = testing::random_invertible(amb, rng);
        CHECK(verify_equation(testing::apply_matrix(amb, mat, pc)));
        CHECK(verify_equation(testing::apply_matrix(amb, mat, pb)));
    }
}

TEST_CASE("constructor rejects bad specs") {
    const Ambient amb = make_ambient(Field::make(2, 1), 2);
    try {
        build_type_a({Subspace::zero(amb), ev({1, 0}), ev({1, 0})});
        FAIL("expected BadSpec");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::BadSpec);
    }
    try {
        build_type_b({Subspace::zero(amb), ev({1, 0}), ev({0, 1}), ev({1, 1})});
        FAIL("expected AmbientTooSmall");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::AmbientTooSmall);
    }
    // Core meeting the span of the vectors.
    const Ambient amb4 = make_ambient(Field::make(2, 1), 4);
    const Subspace s = Subspace::span(amb4, {ev({1, 1, 0, 0})});
    try {
        build_type_b({s, unit(4, 0), unit(4, 1), unit(4, 2)});
        FAIL("expected BadSpec");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::BadSpec);
    }
}
