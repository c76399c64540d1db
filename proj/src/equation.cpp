#include "isoeq/equation.hpp"

#include <algorithm>
#include <string>

namespace isoeq {
namespace {

using u64 = std::uint64_t;

// Indicator weights stay below 2^48 so a full side (m terms) fits u64.
u64 weight_pow(int q, int exp) {
    u64 r = 1;
    for (int i = 0; i < exp; ++i) {
        require(r <= (u64{1} << 48) / static_cast<u64>(q), Errc::TooLarge,
                "indicator weight q^" + std::to_string(exp) + " exceeds supported range");
        r *= static_cast<u64>(q);
    }
    return r;
}

}  // namespace

SpaceTuple::SpaceTuple(std::vector<Subspace> spaces) : spaces_(std::move(spaces)) {
    require(!spaces_.empty(), Errc::Precondition, "a space tuple needs at least one member");
    for (const Subspace& s : spaces_) {
        require(s.ambient() == spaces_.front().ambient(), Errc::DimensionMismatch,
                "tuple members live in different ambients");
    }
}

int SpaceTuple::max_dim() const {
    int n = 0;
    for (const Subspace& s : spaces_) n = std::max(n, s.dim());
    return n;
}

std::vector<int> SpaceTuple::dims() const {
    std::vector<int> out;
    out.reserve(spaces_.size());
    for (const Subspace& s : spaces_) out.push_back(s.dim());
    return out;
}

Subspace SpaceTuple::join() const {
    Subspace j = spaces_.front();
    for (std::size_t i = 1; i < spaces_.size(); ++i) j = sum_spaces(j, spaces_[i]);
    return j;
}

Subspace SpaceTuple::meet() const {
    Subspace m = spaces_.front();
    for (std::size_t i = 1; i < spaces_.size(); ++i) m = intersect(m, spaces_[i]);
    return m;
}

std::vector<std::vector<Elem>> SpaceTuple::sorted_encodings() const {
    std::vector<std::vector<Elem>> enc;
    enc.reserve(spaces_.size());
    for (const Subspace& s : spaces_) enc.push_back(s.encoding());
    std::sort(enc.begin(), enc.end());
    return enc;
}

SpaceTuple SpaceTuple::sorted() const {
    std::vector<Subspace> copy = spaces_;
    std::sort(copy.begin(), copy.end(),
              [](const Subspace& a, const Subspace& b) { return a.encoding() < b.encoding(); });
    return SpaceTuple(std::move(copy));
}

SolutionPair::SolutionPair(SpaceTuple u, SpaceTuple v) : U(std::move(u)), V(std::move(v)) {
    require(U.size() == V.size(), Errc::Precondition, "tuples have different lengths");
    require(U.ambient() == V.ambient(), Errc::DimensionMismatch,
            "tuples live in different ambients");
}

SolutionPair swapped(const SolutionPair& p) { return SolutionPair(p.V, p.U); }

ScaledIndicatorSum ScaledIndicatorSum::from_tuple(const SpaceTuple& t, int scale_exponent) {
    require(scale_exponent >= t.max_dim(), Errc::Precondition,
            "scale exponent below the largest member dimension");
    const int q = t.ambient().field.q();
    ScaledIndicatorSum s;
    s.scale_exponent = scale_exponent;
    s.terms.reserve(static_cast<std::size_t>(t.size()));
    for (const Subspace& v : t.spaces()) {
        s.terms.emplace_back(v, weight_pow(q, scale_exponent - v.dim()));
    }
    return s;
}

std::uint64_t ScaledIndicatorSum::eval(const Vec& x) const {
    u64 total = 0;
    for (const auto& [space, weight] : terms) {
        if (space.contains(x)) total += weight;
    }
    return total;
}

std::uint64_t eval_side(const SpaceTuple& t, const Vec& x, int scale_exponent) {
    return ScaledIndicatorSum::from_tuple(t, scale_exponent).eval(x);
}

bool verify_equation(const SolutionPair& p, const VerifyOptions& opts) {
    if (opts.factor_by_common_meet) {
        const Subspace meet = common_meet(p);
        if (meet.dim() > 0) {
            VerifyOptions inner = opts;
            inner.factor_by_common_meet = false;  // factored pair has trivial meet
            return verify_equation(factor_pair(p, meet).pair, inner);
        }
    }
    const Subspace joint = sum_spaces(p.U.join(), p.V.join());
    const int scale = std::max(p.U.max_dim(), p.V.max_dim());
    const ScaledIndicatorSum lhs = ScaledIndicatorSum::from_tuple(p.U, scale);
    const ScaledIndicatorSum rhs = ScaledIndicatorSum::from_tuple(p.V, scale);
    for (const Vec& x : enumerate_points(joint, opts.max_points)) {
        if (lhs.eval(x) != rhs.eval(x)) return false;
    }
    return true;
}

bool tuples_equivalent(const SpaceTuple& a, const SpaceTuple& b) {
    require(a.ambient() == b.ambient(), Errc::DimensionMismatch,
            "tuples live in different ambients");
    if (a.size() != b.size()) return false;
    return a.sorted_encodings() == b.sorted_encodings();
}

bool pairs_equivalent(const SolutionPair& a, const SolutionPair& b) {
    require(a.ambient() == b.ambient(), Errc::DimensionMismatch,
            "pairs live in different ambients");
    if (a.size() != b.size()) return false;
    const auto au = a.U.sorted_encodings();
    const auto av = a.V.sorted_encodings();
    const auto bu = b.U.sorted_encodings();
    const auto bv = b.V.sorted_encodings();
    return (au == bu && av == bv) || (au == bv && av == bu);
}

bool is_trivial_solution(const SolutionPair& p, const VerifyOptions& opts) {
    require(verify_equation(p, opts), Errc::NotASolution,
            "triviality is defined only for solutions");
    return tuples_equivalent(p.U, p.V);
}

Subspace common_meet(const SolutionPair& p) {
    Subspace m = p.U[0];
    for (int i = 1; i < p.U.size(); ++i) m = intersect(m, p.U[i]);
    for (int i = 0; i < p.V.size(); ++i) m = intersect(m, p.V[i]);
    return m;
}

FactoredPair factor_pair(const SolutionPair& p, const Subspace& S) {
    QuotientChart chart(p.ambient(), S);
    std::vector<Subspace> u;
    std::vector<Subspace> v;
    u.reserve(static_cast<std::size_t>(p.size()));
    v.reserve(static_cast<std::size_t>(p.size()));
    for (const Subspace& s : p.U.spaces()) u.push_back(chart.map(s));
    for (const Subspace& s : p.V.spaces()) v.push_back(chart.map(s));
    return FactoredPair{std::move(chart), SolutionPair(SpaceTuple(std::move(u)), SpaceTuple(std::move(v)))};
}

}  // namespace isoeq
