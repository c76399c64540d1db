#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "isoeq/errors.hpp"

namespace isoeq {

/// Field elements are indices 0..q-1. For an extension field GF(p^e) the
/// index is the base-p encoding of the coefficient vector of the residue
/// polynomial, little-endian: index = c0 + c1*p + ... + c_{e-1}*p^{e-1}.
/// This makes 0 the additive and 1 the multiplicative identity in every
/// field, and fixes the total element order used by all enumerations.
using Elem = std::uint16_t;

/// Point of the projective line over GF(q), canonical form [alpha : 1] or [1 : 0].
struct ProjectivePoint {
    Elem alpha = 0;
    Elem beta = 0;

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// Exact arithmetic in GF(q), q = p^e, backed by tables built once at
/// construction. For e > 1 the modulus is the monic irreducible polynomial
/// of degree e over GF(p) whose coefficient vector has the smallest base-p
/// encoding, so element order is reproducible across runs and platforms.
///
/// Copies share the underlying tables; a Field is immutable after
/// construction and safe to use from multiple threads.
class Field {
  public:
    /// Builds GF(p^e). Throws NotPrime, Precondition (e < 1), TooLarge
    /// (p^e > 2^16), NoIrreducibleFound (internal failure only).
    static Field make(int p, int e);

    int p() const noexcept;
    int e() const noexcept;
    int q() const noexcept;

    /// Monic irreducible modulus, little-endian coefficients, size e+1.
    /// Empty for prime fields (e == 1).
    const std::vector<int>& modulus() const noexcept;

    Elem add(Elem x, Elem y) const noexcept;
    Elem sub(Elem x, Elem y) const noexcept;
    Elem neg(Elem x) const noexcept;
    Elem mul(Elem x, Elem y) const noexcept;
    Elem inv(Elem x) const;  // throws ZeroInverse on x == 0

    /// Coefficient vector of an element over GF(p), little-endian, length e.
    std::vector<int> coefficients(Elem x) const;

    /// All q elements in index order; this order is the meaning of
    /// "i-th element of the field" everywhere downstream.
    std::vector<Elem> elements() const;

    /// The q+1 points [alpha : 1] in element order followed by [1 : 0].
    std::vector<ProjectivePoint> projective_line() const;

    /// Canonical representative of [alpha : beta]; (0, 0) is rejected.
    ProjectivePoint projective_canonical(Elem alpha, Elem beta) const;

    bool operator==(const Field& other) const noexcept;
    bool operator!=(const Field& other) const noexcept { return !(*this == other); }

  private:
    struct Tables;
    explicit Field(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

    std::shared_ptr<const Tables> tables_;
};

}  // namespace isoeq
