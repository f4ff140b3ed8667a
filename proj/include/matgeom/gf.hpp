#pragma once

// Small Galois fields GF(p^k) with precomputed arithmetic tables.
//
// An element is stored as its index: the coefficient vector of the residue
// polynomial sum a_i x^i read as the base-p number sum a_i p^i. Index 0 is
// zero and index 1 is one. These indices are the on-disk encoding used by
// every file format in the toolkit, so the moduli for the built-in orders
// are fixed:
//
//   GF(4): x^2 + x + 1     GF(8): x^3 + x + 1     GF(9): x^2 + 1
//
// Fields are immutable after construction and shared through FieldPtr.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace matgeom {

using Elem = std::uint8_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    /// Orders with a built-in modulus.
    static const std::vector<int>& supported_orders();

    /// Field of order q using the canonical modulus. Throws PreconditionError
    /// for unsupported q.
    static FieldPtr make(int q);

    /// Field GF(p)[x]/(modulus). `modulus` lists coefficients lowest degree
    /// first and must be monic and irreducible; p^deg must not exceed 256.
    static FieldPtr make(int p, std::vector<int> modulus);

    int p() const noexcept { return p_; }
    int k() const noexcept { return k_; }
    int q() const noexcept { return q_; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }
    std::string modulus_string() const;

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    /// Throws PreconditionError on zero.
    Elem inv(Elem a) const;
    /// a^(p^j), j taken mod k.
    Elem frobenius(int j, Elem a) const noexcept { return frob_[(j % k_) * q_ + a]; }

    bool contains(int index) const noexcept { return index >= 0 && index < q_; }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

private:
    Field(int p, std::vector<int> modulus);

    int p_;
    int k_;
    int q_;
    std::vector<int> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, frob_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;

/// Trial division by every monic polynomial of degree 1..deg/2 over GF(p).
bool is_irreducible(int p, const std::vector<int>& poly);

bool is_prime(int n) noexcept;

struct FieldElem {
    FieldPtr field;
    Elem index = 0;

    FieldElem() = default;
    FieldElem(FieldPtr f, int idx);

    bool is_zero() const noexcept { return index == 0; }
    friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
        return a.index == b.index && same_field(a.field, b.field);
    }
};

struct FieldAutomorphism {
    FieldPtr field;
    int frobenius_power = 0;  // j in [0, k); the map is x -> x^(p^j)

    bool is_identity() const noexcept { return frobenius_power == 0; }
    /// The automorphism undoing this one (power k - j).
    FieldAutomorphism inverse() const;
    /// (*this) after `other`: x -> this(other(x)).
    FieldAutomorphism after(const FieldAutomorphism& other) const;

    friend bool operator==(const FieldAutomorphism& a, const FieldAutomorphism& b) noexcept {
        return a.frobenius_power == b.frobenius_power && same_field(a.field, b.field);
    }
};

FieldElem add(const FieldElem& a, const FieldElem& b);
FieldElem sub(const FieldElem& a, const FieldElem& b);
FieldElem mul(const FieldElem& a, const FieldElem& b);
FieldElem inv(const FieldElem& a);
FieldElem apply_automorphism(const FieldAutomorphism& sigma, const FieldElem& a);

std::vector<FieldElem> enumerate_elements(const FieldPtr& field);
std::vector<FieldAutomorphism> automorphism_group(const FieldPtr& field);

}  // namespace matgeom
