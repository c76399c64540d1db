#include "isoeq/constructors.hpp"

#include <cassert>
#include <string>

namespace isoeq {
namespace {

// The spanning vectors must be independent and meet S only in zero, which
// together say dim <S, vecs> = dim S + #vecs.
void check_spec(const Subspace& S, const std::vector<Vec>& vecs) {
    const Ambient& amb = S.ambient();
    require(amb.dim >= S.dim() + static_cast<int>(vecs.size()), Errc::AmbientTooSmall,
            "ambient dimension " + std::to_string(amb.dim) + " cannot hold core dim " +
                std::to_string(S.dim()) + " plus " + std::to_string(vecs.size()) +
                " independent vectors");
    for (const Vec& v : vecs) {
        require(static_cast<int>(v.size()) == amb.dim, Errc::DimensionMismatch,
                "spec vector length does not match ambient dimension");
    }
    std::vector<Vec> gens = S.rows();
    gens.insert(gens.end(), vecs.begin(), vecs.end());
    const Subspace all = Subspace::span(amb, gens);
    require(all.dim() == S.dim() + static_cast<int>(vecs.size()), Errc::BadSpec,
            "spec vectors are not independent over the core");
}

Subspace span_over(const Subspace& S, std::initializer_list<Vec> vecs) {
    std::vector<Vec> gens = S.rows();
    gens.insert(gens.end(), vecs.begin(), vecs.end());
    return Subspace::span(S.ambient(), gens);
}

Vec combine(const Field& f, Elem x, const Vec& a, Elem y, const Vec& b) {
    Vec r(a.size(), 0);
    vec_add_scaled_inplace(f, r, x, a);
    vec_add_scaled_inplace(f, r, y, b);
    return r;
}

#ifndef NDEBUG
void debug_validate(const SolutionPair& p) {
    const Subspace joint = sum_spaces(p.U.join(), p.V.join());
    if (joint.point_count() > 4096) return;
    assert(verify_equation(p));
    assert(!tuples_equivalent(p.U, p.V));
}
#endif

}  // namespace

SolutionPair build_type_a(const TypeASpec& spec) {
    check_spec(spec.S, {spec.a, spec.b});
    const Field& f = spec.S.ambient().field;
    const int q = f.q();

    const Subspace plane = span_over(spec.S, {spec.a, spec.b});
    std::vector<Subspace> v(static_cast<std::size_t>(q), plane);
    v.push_back(spec.S);

    std::vector<Subspace> u;
    u.reserve(static_cast<std::size_t>(q) + 1);
    for (const ProjectivePoint& pt : f.projective_line()) {
        u.push_back(span_over(spec.S, {combine(f, pt.alpha, spec.a, pt.beta, spec.b)}));
    }

    SolutionPair p(SpaceTuple(std::move(u)), SpaceTuple(std::move(v)));
#ifndef NDEBUG
    debug_validate(p);
#endif
    return p;
}

SolutionPair build_type_b(const TypeBSpec& spec) {
    check_spec(spec.S, {spec.a, spec.b, spec.c});
    const Field& f = spec.S.ambient().field;

    std::vector<Subspace> v;
    std::vector<Subspace> u;
    for (Elem t : f.elements()) {
        v.push_back(span_over(spec.S, {spec.b, combine(f, t, spec.a, 1, spec.c)}));
        u.push_back(span_over(spec.S, {spec.a, combine(f, t, spec.b, 1, spec.c)}));
    }
    v.push_back(span_over(spec.S, {spec.a}));
    u.push_back(span_over(spec.S, {spec.b}));

    SolutionPair p(SpaceTuple(std::move(u)), SpaceTuple(std::move(v)));
#ifndef NDEBUG
    debug_validate(p);
#endif
    return p;
}

SolutionPair build_type_c(const TypeCSpec& spec) {
    check_spec(spec.S, {spec.a, spec.b, spec.c, spec.d});
    const Field& f = spec.S.ambient().field;

    std::vector<Subspace> v;
    std::vector<Subspace> u;
    for (const ProjectivePoint& pt : f.projective_line()) {
        v.push_back(span_over(spec.S, {combine(f, pt.alpha, spec.a, pt.beta, spec.b),
                                       combine(f, pt.alpha, spec.c, pt.beta, spec.d)}));
        u.push_back(span_over(spec.S, {combine(f, pt.alpha, spec.a, pt.beta, spec.c),
                                       combine(f, pt.alpha, spec.b, pt.beta, spec.d)}));
    }

    SolutionPair p(SpaceTuple(std::move(u)), SpaceTuple(std::move(v)));
#ifndef NDEBUG
    debug_validate(p);
#endif
    return p;
}

}  // namespace isoeq
