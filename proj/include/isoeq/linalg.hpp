#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isoeq/gf.hpp"

namespace isoeq {

inline constexpr std::uint64_t kDefaultMaxPoints = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultMaxSubspaces = std::uint64_t{1} << 20;

/// The ambient space W = K^dim.
struct Ambient {
    Field field;
    int dim = 1;

    bool operator==(const Ambient& other) const noexcept {
        return dim == other.dim && field == other.field;
    }
    bool operator!=(const Ambient& other) const noexcept { return !(*this == other); }
};

Ambient make_ambient(Field field, int dim);  // dim >= 1

/// Coordinate vector in the ambient space, entries are field element indices.
using Vec = std::vector<Elem>;

Vec vec_add(const Field& f, const Vec& x, const Vec& y);
Vec vec_scaled(const Field& f, Elem c, const Vec& x);
void vec_add_scaled_inplace(const Field& f, Vec& y, Elem c, const Vec& x);  // y += c*x
bool vec_is_zero(const Vec& x);

/// Subspace of an ambient space, stored as its reduced row-echelon basis.
/// The RREF basis is a canonical form: two Subspace values are equal as sets
/// of points exactly when their basis matrices are identical, so equality,
/// hashing and multiset comparisons reduce to raw comparisons.
class Subspace {
  public:
    static Subspace zero(const Ambient& amb);
    static Subspace full(const Ambient& amb);
    static Subspace span(const Ambient& amb, const std::vector<Vec>& generators);

    /// Accepts an already-reduced basis; throws NotCanonical when the rows
    /// are not in strict RREF (non-unit pivot, unsorted pivots, nonzero
    /// entries above/below a pivot, zero rows).
    static Subspace from_rref(const Ambient& amb, const std::vector<Vec>& rows);

    const Ambient& ambient() const noexcept { return amb_; }
    int ambient_dim() const noexcept { return amb_.dim; }
    int dim() const noexcept { return k_; }
    bool is_zero() const noexcept { return k_ == 0; }

    Vec row(int i) const;
    std::vector<Vec> rows() const;
    const std::vector<int>& pivots() const noexcept { return pivots_; }

    /// Residual of x after elimination against the basis; zero iff x lies
    /// in the subspace.
    Vec reduce(Vec x) const;

    bool contains(const Vec& x) const;
    bool contains(const Subspace& other) const;

    /// Total-order key: (dim, basis entries). Used wherever a deterministic
    /// order on subspaces is needed.
    std::vector<Elem> encoding() const;

    std::uint64_t point_count() const;  // q^dim, throws TooLarge past 2^63

    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }
    bool operator<(const Subspace& other) const { return encoding() < other.encoding(); }

  private:
    Subspace(Ambient amb, int k, std::vector<Elem> flat, std::vector<int> pivots)
        : amb_(std::move(amb)), k_(k), flat_(std::move(flat)), pivots_(std::move(pivots)) {}

    Ambient amb_;
    int k_ = 0;
    std::vector<Elem> flat_;  // row-major k x dim
    std::vector<int> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum_spaces(const Subspace& a, const Subspace& b);

/// Coefficients expressing target in the given (independent or not) basis,
/// or nullopt when target is outside the span.
std::optional<Vec> solve_coordinates(const Field& f, const std::vector<Vec>& basis, const Vec& target);

/// Basis of a complement of S inside V (S must be contained in V); the
/// returned rows together with a basis of S span V.
std::vector<Vec> complement_basis(const Subspace& V, const Subspace& S);

/// All q^dim points of V, deterministic order, zero vector first.
std::vector<Vec> enumerate_points(const Subspace& V, std::uint64_t max_points = kDefaultMaxPoints);

/// Gaussian binomial [dim choose k]_q by the exact product formula.
std::uint64_t count_subspaces(const Ambient& amb, int k);

/// Every k-dimensional subspace exactly once, by direct RREF enumeration
/// over pivot-column choices; deterministic order.
std::vector<Subspace> enumerate_subspaces(const Ambient& amb, int k,
                                          std::uint64_t max_subspaces = kDefaultMaxSubspaces);

/// All subspaces of every dimension 0..dim.
std::vector<Subspace> enumerate_all_subspaces(const Ambient& amb,
                                              std::uint64_t max_subspaces = kDefaultMaxSubspaces);

/// All subspaces contained in J, sorted by encoding.
std::vector<Subspace> enumerate_subspaces_within(const Subspace& J,
                                                 std::uint64_t max_subspaces = kDefaultMaxSubspaces);

/// The q+1 spaces H with S < H < V and dim H = dim V - 1, for S of
/// codimension 2 in V; ordered by the projective line of the field.
/// Their union is V and pairwise intersections all equal S.
std::vector<Subspace> hyperplanes_through(const Subspace& V, const Subspace& S);

/// Chart for the quotient W/S: projection onto the complement coordinates
/// of S together with a linear section. Spaces containing S map to their
/// images, and images lift back to preimages containing S.
class QuotientChart {
  public:
    QuotientChart(const Ambient& amb, Subspace S);

    const Ambient& domain() const noexcept { return dom_; }
    const Ambient& quotient() const noexcept { return quo_; }
    const Subspace& kernel() const noexcept { return s_; }

    Vec project(const Vec& x) const;
    Vec lift(const Vec& y) const;

    Subspace map(const Subspace& T) const;  // throws NotContained unless S <= T
    Subspace lift_subspace(const Subspace& T) const;

  private:
    Ambient dom_;
    Ambient quo_;
    Subspace s_;
    std::vector<int> comp_cols_;
};

}  // namespace isoeq
