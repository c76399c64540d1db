#include "isoeq/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace isoeq {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::string dim_str(int d) { return std::to_string(d); }

// RREF in place; returns pivot columns. Rows left after the returned pivot
// count are all zero and get dropped by callers.
std::vector<int> rref_inplace(const Field& f, std::vector<Vec>& rows) {
    const int nr = static_cast<int>(rows.size());
    const int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int sel = -1;
        for (int i = r; i < nr; ++i) {
            if (rows[i][static_cast<std::size_t>(c)] != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(sel)]);
        Vec& pivot_row = rows[static_cast<std::size_t>(r)];
        const Elem pinv = f.inv(pivot_row[static_cast<std::size_t>(c)]);
        if (pivot_row[static_cast<std::size_t>(c)] != 1) {
            for (Elem& x : pivot_row) x = f.mul(x, pinv);
        }
        for (int i = 0; i < nr; ++i) {
            if (i == r) continue;
            const Elem fac = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (fac == 0) continue;
            vec_add_scaled_inplace(f, rows[static_cast<std::size_t>(i)], f.neg(fac), pivot_row);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(static_cast<std::size_t>(r));
    return pivots;
}

u64 checked_pow(u64 base, int exp, u64 limit, const char* what) {
    u64 r = 1;
    for (int i = 0; i < exp; ++i) {
        require(r <= limit / base, Errc::TooLarge, std::string(what) + " exceeds supported range");
        r *= base;
    }
    return r;
}

}  // namespace

Ambient make_ambient(Field field, int dim) {
    require(dim >= 1, Errc::Precondition, "ambient dimension must be at least 1");
    return Ambient{std::move(field), dim};
}

Vec vec_add(const Field& f, const Vec& x, const Vec& y) {
    require(x.size() == y.size(), Errc::DimensionMismatch, "vector lengths differ");
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.add(x[i], y[i]);
    return r;
}

Vec vec_scaled(const Field& f, Elem c, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = f.mul(c, x[i]);
    return r;
}

void vec_add_scaled_inplace(const Field& f, Vec& y, Elem c, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.add(y[i], f.mul(c, x[i]));
}

bool vec_is_zero(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](Elem e) { return e == 0; });
}

Subspace Subspace::zero(const Ambient& amb) { return Subspace(amb, 0, {}, {}); }

Subspace Subspace::full(const Ambient& amb) {
    std::vector<Elem> flat(static_cast<std::size_t>(amb.dim) * static_cast<std::size_t>(amb.dim), 0);
    std::vector<int> pivots(static_cast<std::size_t>(amb.dim));
    for (int i = 0; i < amb.dim; ++i) {
        flat[static_cast<std::size_t>(i) * amb.dim + i] = 1;
        pivots[static_cast<std::size_t>(i)] = i;
    }
    return Subspace(amb, amb.dim, std::move(flat), std::move(pivots));
}

Subspace Subspace::span(const Ambient& amb, const std::vector<Vec>& generators) {
    std::vector<Vec> rows;
    rows.reserve(generators.size());
    for (const Vec& g : generators) {
        require(static_cast<int>(g.size()) == amb.dim, Errc::DimensionMismatch,
                "generator length " + dim_str(static_cast<int>(g.size())) + " != ambient dim " +
                    dim_str(amb.dim));
        rows.push_back(g);
    }
    std::vector<int> pivots = rref_inplace(amb.field, rows);
    const int k = static_cast<int>(rows.size());
    std::vector<Elem> flat;
    flat.reserve(static_cast<std::size_t>(k) * amb.dim);
    for (const Vec& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return Subspace(amb, k, std::move(flat), std::move(pivots));
}

Subspace Subspace::from_rref(const Ambient& amb, const std::vector<Vec>& rows) {
    std::vector<int> pivots;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Vec& r = rows[i];
        require(static_cast<int>(r.size()) == amb.dim, Errc::NotCanonical,
                "basis row " + std::to_string(i) + " has length " + dim_str(static_cast<int>(r.size())) +
                    ", expected " + dim_str(amb.dim));
        int pivot = -1;
        for (int c = 0; c < amb.dim; ++c) {
            if (r[static_cast<std::size_t>(c)] != 0) {
                pivot = c;
                break;
            }
        }
        require(pivot >= 0, Errc::NotCanonical, "basis row " + std::to_string(i) + " is zero");
        require(r[static_cast<std::size_t>(pivot)] == 1, Errc::NotCanonical,
                "basis row " + std::to_string(i) + " pivot entry is not 1");
        require(pivots.empty() || pivot > pivots.back(), Errc::NotCanonical,
                "basis row " + std::to_string(i) + " pivot column out of order");
        pivots.push_back(pivot);
    }
    // Pivot columns must be zero in every other row.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (i == j) continue;
            require(rows[j][static_cast<std::size_t>(pivots[i])] == 0, Errc::NotCanonical,
                    "basis row " + std::to_string(j) + " has a nonzero entry in pivot column " +
                        std::to_string(pivots[i]));
        }
    }
    for (const Vec& r : rows) {
        for (Elem x : r) {
            require(x < amb.field.q(), Errc::Malformed,
                    "basis entry " + std::to_string(x) + " out of range for q = " +
                        std::to_string(amb.field.q()));
        }
    }
    std::vector<Elem> flat;
    flat.reserve(rows.size() * static_cast<std::size_t>(amb.dim));
    for (const Vec& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return Subspace(amb, static_cast<int>(rows.size()), std::move(flat), std::move(pivots));
}

Vec Subspace::row(int i) const {
    const std::size_t d = static_cast<std::size_t>(amb_.dim);
    return Vec(flat_.begin() + static_cast<std::ptrdiff_t>(i * amb_.dim),
               flat_.begin() + static_cast<std::ptrdiff_t>(i * amb_.dim) + static_cast<std::ptrdiff_t>(d));
}

std::vector<Vec> Subspace::rows() const {
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) out.push_back(row(i));
    return out;
}

Vec Subspace::reduce(Vec x) const {
    require(static_cast<int>(x.size()) == amb_.dim, Errc::DimensionMismatch,
            "point length does not match ambient dimension");
    const Field& f = amb_.field;
    for (int i = 0; i < k_; ++i) {
        const Elem c = x[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
        if (c == 0) continue;
        const Elem nc = f.neg(c);
        const std::size_t base = static_cast<std::size_t>(i) * amb_.dim;
        for (int j = 0; j < amb_.dim; ++j) {
            x[static_cast<std::size_t>(j)] =
                f.add(x[static_cast<std::size_t>(j)], f.mul(nc, flat_[base + static_cast<std::size_t>(j)]));
        }
    }
    return x;
}

bool Subspace::contains(const Vec& x) const { return vec_is_zero(reduce(x)); }

bool Subspace::contains(const Subspace& other) const {
    require(amb_ == other.amb_, Errc::DimensionMismatch, "subspaces live in different ambients");
    if (other.k_ > k_) return false;
    for (int i = 0; i < other.k_; ++i) {
        if (!contains(other.row(i))) return false;
    }
    return true;
}

std::vector<Elem> Subspace::encoding() const {
    std::vector<Elem> enc;
    enc.reserve(flat_.size() + 1);
    enc.push_back(static_cast<Elem>(k_));
    enc.insert(enc.end(), flat_.begin(), flat_.end());
    return enc;
}

std::uint64_t Subspace::point_count() const {
    return checked_pow(static_cast<u64>(amb_.field.q()), k_, u64{1} << 62, "point count");
}

bool Subspace::operator==(const Subspace& other) const {
    return amb_ == other.amb_ && k_ == other.k_ && flat_ == other.flat_;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require(a.ambient() == b.ambient(), Errc::DimensionMismatch,
            "subspaces live in different ambients");
    const Ambient& amb = a.ambient();
    const int d = amb.dim;
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(amb);

    // Zassenhaus: rows (x | x) for x in a's basis and (y | 0) for y in b's.
    // After elimination the rows with zero left half carry an intersection
    // basis in their right half.
    std::vector<Vec> rows;
    rows.reserve(static_cast<std::size_t>(a.dim() + b.dim()));
    for (int i = 0; i < a.dim(); ++i) {
        Vec r(static_cast<std::size_t>(2 * d), 0);
        const Vec x = a.row(i);
        std::copy(x.begin(), x.end(), r.begin());
        std::copy(x.begin(), x.end(), r.begin() + d);
        rows.push_back(std::move(r));
    }
    for (int i = 0; i < b.dim(); ++i) {
        Vec r(static_cast<std::size_t>(2 * d), 0);
        const Vec y = b.row(i);
        std::copy(y.begin(), y.end(), r.begin());
        rows.push_back(std::move(r));
    }
    rref_inplace(amb.field, rows);

    std::vector<Vec> inter;
    for (const Vec& r : rows) {
        const bool left_zero =
            std::all_of(r.begin(), r.begin() + d, [](Elem e) { return e == 0; });
        if (left_zero) inter.emplace_back(r.begin() + d, r.end());
    }
    return Subspace::span(amb, inter);
}

Subspace sum_spaces(const Subspace& a, const Subspace& b) {
    require(a.ambient() == b.ambient(), Errc::DimensionMismatch,
            "subspaces live in different ambients");
    std::vector<Vec> gens = a.rows();
    const std::vector<Vec> rb = b.rows();
    gens.insert(gens.end(), rb.begin(), rb.end());
    return Subspace::span(a.ambient(), gens);
}

std::optional<Vec> solve_coordinates(const Field& f, const std::vector<Vec>& basis, const Vec& target) {
    const int k = static_cast<int>(basis.size());
    const int d = static_cast<int>(target.size());
    // Augmented system [basis^T | target], one row per coordinate.
    std::vector<Vec> m(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(k) + 1, 0));
    for (int i = 0; i < k; ++i) {
        require(static_cast<int>(basis[static_cast<std::size_t>(i)].size()) == d,
                Errc::DimensionMismatch, "basis vector length mismatch");
        for (int r = 0; r < d; ++r) {
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
                basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        }
    }
    for (int r = 0; r < d; ++r) {
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = target[static_cast<std::size_t>(r)];
    }
    std::vector<int> pivots = rref_inplace(f, m);
    Vec coeffs(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == k) return std::nullopt;  // inconsistent
        coeffs[static_cast<std::size_t>(pivots[i])] = m[i][static_cast<std::size_t>(k)];
    }
    return coeffs;
}

std::vector<Vec> complement_basis(const Subspace& V, const Subspace& S) {
    require(V.ambient() == S.ambient(), Errc::DimensionMismatch,
            "subspaces live in different ambients");
    require(V.contains(S), Errc::NotContained, "complement requested for a non-subspace");
    std::vector<Vec> reduced;
    for (int i = 0; i < V.dim(); ++i) {
        Vec r = S.reduce(V.row(i));
        if (!vec_is_zero(r)) reduced.push_back(std::move(r));
    }
    Subspace c = Subspace::span(V.ambient(), reduced);
    assert(c.dim() == V.dim() - S.dim());
    return c.rows();
}

std::vector<Vec> enumerate_points(const Subspace& V, std::uint64_t max_points) {
    const u64 total = V.point_count();
    require(total <= max_points, Errc::TooLarge,
            "subspace has " + std::to_string(total) + " points, cap is " + std::to_string(max_points));
    const Field& f = V.ambient().field;
    const int k = V.dim();
    const int d = V.ambient_dim();
    const std::vector<Vec> basis = V.rows();

    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(total));
    std::vector<Elem> c(static_cast<std::size_t>(k), 0);
    while (true) {
        Vec x(static_cast<std::size_t>(d), 0);
        for (int i = 0; i < k; ++i) {
            if (c[static_cast<std::size_t>(i)] != 0) {
                vec_add_scaled_inplace(f, x, c[static_cast<std::size_t>(i)],
                                       basis[static_cast<std::size_t>(i)]);
            }
        }
        pts.push_back(std::move(x));
        int i = 0;
        while (i < k) {
            c[static_cast<std::size_t>(i)] =
                static_cast<Elem>((c[static_cast<std::size_t>(i)] + 1) % f.q());
            if (c[static_cast<std::size_t>(i)] != 0) break;
            ++i;
        }
        if (i == k) break;
    }
    return pts;
}

std::uint64_t count_subspaces(const Ambient& amb, int k) {
    require(k >= 0 && k <= amb.dim, Errc::Precondition,
            "subspace dimension out of range [0, " + dim_str(amb.dim) + "]");
    const u128 q = static_cast<u128>(amb.field.q());
    // Stepwise product formula; every partial product is itself a Gaussian
    // binomial, so the division at each step is exact.
    u128 result = 1;
    for (int i = 0; i < k; ++i) {
        u128 qn = 1;
        for (int t = 0; t < amb.dim - i; ++t) {
            require(qn <= (~u128{0}) / q, Errc::TooLarge, "Gaussian binomial overflow");
            qn *= q;
        }
        u128 qk = 1;
        for (int t = 0; t < i + 1; ++t) qk *= q;
        const u128 num = qn - 1;
        require(result <= (~u128{0}) / num, Errc::TooLarge, "Gaussian binomial overflow");
        result = result * num / (qk - 1);
    }
    require(result <= static_cast<u128>(~u64{0}), Errc::TooLarge, "Gaussian binomial overflow");
    return static_cast<u64>(result);
}

std::vector<Subspace> enumerate_subspaces(const Ambient& amb, int k, std::uint64_t max_subspaces) {
    const u64 total = count_subspaces(amb, k);
    require(total <= max_subspaces, Errc::TooLarge,
            std::to_string(total) + " subspaces exceed cap " + std::to_string(max_subspaces));
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(total));
    if (k == 0) {
        out.push_back(Subspace::zero(amb));
        return out;
    }
    const Field& f = amb.field;
    const int d = amb.dim;

    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    while (true) {
        std::fill(is_pivot.begin(), is_pivot.end(), false);
        for (int c : comb) is_pivot[static_cast<std::size_t>(c)] = true;

        // Free positions: in row i, every non-pivot column right of comb[i].
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < k; ++i) {
            for (int c = comb[static_cast<std::size_t>(i)] + 1; c < d; ++c) {
                if (!is_pivot[static_cast<std::size_t>(c)]) free_pos.emplace_back(i, c);
            }
        }

        std::vector<Elem> vals(free_pos.size(), 0);
        while (true) {
            std::vector<Vec> rows(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(d), 0));
            for (int i = 0; i < k; ++i) {
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])] = 1;
            }
            for (std::size_t t = 0; t < free_pos.size(); ++t) {
                rows[static_cast<std::size_t>(free_pos[t].first)][static_cast<std::size_t>(free_pos[t].second)] =
                    vals[t];
            }
            out.push_back(Subspace::from_rref(amb, rows));

            std::size_t i = 0;
            while (i < vals.size()) {
                vals[i] = static_cast<Elem>((vals[i] + 1) % f.q());
                if (vals[i] != 0) break;
                ++i;
            }
            if (i == vals.size()) break;
        }

        // Next pivot-column combination, lexicographic.
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == d - k + i) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    assert(out.size() == total);
    return out;
}

std::vector<Subspace> enumerate_all_subspaces(const Ambient& amb, std::uint64_t max_subspaces) {
    u64 total = 0;
    for (int k = 0; k <= amb.dim; ++k) total += count_subspaces(amb, k);
    require(total <= max_subspaces, Errc::TooLarge,
            std::to_string(total) + " subspaces exceed cap " + std::to_string(max_subspaces));
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(total));
    for (int k = 0; k <= amb.dim; ++k) {
        std::vector<Subspace> part = enumerate_subspaces(amb, k, max_subspaces);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<Subspace> enumerate_subspaces_within(const Subspace& J, std::uint64_t max_subspaces) {
    const Ambient& amb = J.ambient();
    if (J.dim() == amb.dim) {
        std::vector<Subspace> out = enumerate_all_subspaces(amb, max_subspaces);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (J.dim() == 0) return {Subspace::zero(amb)};

    // Subspaces of J correspond to subspaces of K^{dim J} through the basis
    // of J; embed each inner basis row back into the ambient coordinates.
    const Ambient inner{amb.field, J.dim()};
    const std::vector<Vec> jrows = J.rows();
    std::vector<Subspace> out;
    for (const Subspace& t : enumerate_all_subspaces(inner, max_subspaces)) {
        std::vector<Vec> gens;
        gens.reserve(static_cast<std::size_t>(t.dim()));
        for (int i = 0; i < t.dim(); ++i) {
            Vec y = t.row(i);
            Vec x(static_cast<std::size_t>(amb.dim), 0);
            for (int j = 0; j < J.dim(); ++j) {
                if (y[static_cast<std::size_t>(j)] != 0) {
                    vec_add_scaled_inplace(amb.field, x, y[static_cast<std::size_t>(j)],
                                           jrows[static_cast<std::size_t>(j)]);
                }
            }
            gens.push_back(std::move(x));
        }
        out.push_back(Subspace::span(amb, gens));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> hyperplanes_through(const Subspace& V, const Subspace& S) {
    require(V.ambient() == S.ambient(), Errc::DimensionMismatch,
            "subspaces live in different ambients");
    require(V.contains(S), Errc::BadCodimension, "core is not contained in the covered space");
    require(S.dim() == V.dim() - 2, Errc::BadCodimension,
            "core must have codimension 2 in the covered space (got " + dim_str(V.dim() - S.dim()) +
                ")");
    const Field& f = V.ambient().field;
    const std::vector<Vec> comp = complement_basis(V, S);  // two rows
    std::vector<Vec> base = S.rows();
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(f.q()) + 1);
    for (const ProjectivePoint& pt : f.projective_line()) {
        Vec g(static_cast<std::size_t>(V.ambient_dim()), 0);
        vec_add_scaled_inplace(f, g, pt.alpha, comp[0]);
        vec_add_scaled_inplace(f, g, pt.beta, comp[1]);
        std::vector<Vec> gens = base;
        gens.push_back(std::move(g));
        Subspace h = Subspace::span(V.ambient(), gens);
        assert(h.dim() == V.dim() - 1);
        out.push_back(std::move(h));
    }
    return out;
}

QuotientChart::QuotientChart(const Ambient& amb, Subspace S)
    : dom_(amb), quo_{amb.field, amb.dim - S.dim()}, s_(std::move(S)) {
    require(s_.ambient() == amb, Errc::DimensionMismatch, "kernel lives in a different ambient");
    const std::vector<int>& piv = s_.pivots();
    std::size_t pi = 0;
    for (int c = 0; c < amb.dim; ++c) {
        if (pi < piv.size() && piv[pi] == c) {
            ++pi;
        } else {
            comp_cols_.push_back(c);
        }
    }
}

Vec QuotientChart::project(const Vec& x) const {
    Vec r = s_.reduce(x);
    Vec y;
    y.reserve(comp_cols_.size());
    for (int c : comp_cols_) y.push_back(r[static_cast<std::size_t>(c)]);
    return y;
}

Vec QuotientChart::lift(const Vec& y) const {
    require(y.size() == comp_cols_.size(), Errc::DimensionMismatch,
            "quotient vector length does not match chart");
    Vec x(static_cast<std::size_t>(dom_.dim), 0);
    for (std::size_t i = 0; i < comp_cols_.size(); ++i) {
        x[static_cast<std::size_t>(comp_cols_[i])] = y[i];
    }
    return x;
}

Subspace QuotientChart::map(const Subspace& T) const {
    require(T.ambient() == dom_, Errc::DimensionMismatch, "space lives in a different ambient");
    require(T.contains(s_), Errc::NotContained, "mapped space does not contain the chart kernel");
    std::vector<Vec> gens;
    gens.reserve(static_cast<std::size_t>(T.dim()));
    for (int i = 0; i < T.dim(); ++i) gens.push_back(project(T.row(i)));
    Subspace img = Subspace::span(quo_, gens);
    assert(img.dim() == T.dim() - s_.dim());
    return img;
}

Subspace QuotientChart::lift_subspace(const Subspace& T) const {
    require(T.ambient() == quo_, Errc::DimensionMismatch, "space lives outside the quotient");
    std::vector<Vec> gens = s_.rows();
    for (int i = 0; i < T.dim(); ++i) gens.push_back(lift(T.row(i)));
    return Subspace::span(dom_, gens);
}

}  // namespace isoeq
