#pragma once

#include "isoeq/equation.hpp"

namespace isoeq {

/// Parameters of the first canonical family: a core S plus two vectors a, b
/// spanning a plane meeting S trivially. One tuple repeats <S, a, b> q times
/// and ends with S; the partner is the pencil of all q+1 hyperplanes of
/// <S, a, b> through S.
struct TypeASpec {
    Subspace S;
    Vec a;
    Vec b;
};

/// Second family: independent a, b, c over a core S. The short spaces are
/// <S, a> and <S, b>; the tall members are <S, b, t*a + c> on one side and
/// <S, a, t*b + c> on the other, t running over the field in element order.
struct TypeBSpec {
    Subspace S;
    Vec a;
    Vec b;
    Vec c;
};

/// Third family: independent a, b, c, d over a core S, indexed by the
/// projective line. V_i = <S, x*a + y*b, x*c + y*d> and
/// U_i = <S, x*a + y*c, x*b + y*d> for the i-th point [x : y].
struct TypeCSpec {
    Subspace S;
    Vec a;
    Vec b;
    Vec c;
    Vec d;
};

/// Each builder returns a pair with m = q+1 that satisfies the isometry
/// equation and is nontrivial. Throws BadSpec when the vectors are not
/// independent over S, AmbientTooSmall when the ambient cannot hold the
/// required dimensions.
SolutionPair build_type_a(const TypeASpec& spec);
SolutionPair build_type_b(const TypeBSpec& spec);
SolutionPair build_type_c(const TypeCSpec& spec);

}  // namespace isoeq
