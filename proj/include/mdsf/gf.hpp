// Arithmetic in the binary-extension Galois fields F_{2^m}, 1 <= m <= 8.
//
// Elements are stored in polynomial basis as plain integers below q = 2^m.
// Multiplication and inversion go through log/antilog tables built from a
// primitive modulus, so x (value 2) generates the multiplicative group.

#pragma once

#include <array>
#include <cstdint>
#include <memory>

namespace mdsf {

/// One field element. Valid values are 0 .. q-1 for the field in use.
using gf_t = std::uint8_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    /// Field of degree m with the module's fixed default modulus.
    static FieldPtr make(unsigned degree);
    /// Field of degree m with an explicit modulus (bit-encoded polynomial).
    /// The modulus must be irreducible and, for m >= 2, primitive.
    static FieldPtr make(unsigned degree, unsigned modulus);

    unsigned degree() const noexcept { return m_; }
    unsigned order() const noexcept { return q_; }
    unsigned modulus() const noexcept { return poly_; }

    /// Primitive element alpha: x (value 2) for m >= 2, 1 for F_2.
    gf_t generator() const noexcept { return m_ == 1 ? gf_t{1} : gf_t{2}; }

    /// Characteristic-2 addition; subtraction is the same operation.
    static gf_t add(gf_t a, gf_t b) noexcept { return a ^ b; }

    gf_t mul(gf_t a, gf_t b) const noexcept {
        if (a == 0 || b == 0) return 0;
        if (m_ == 1) return 1;
        return exp_[static_cast<unsigned>(log_[a]) + static_cast<unsigned>(log_[b])];
    }

    gf_t inv(gf_t a) const {  // throws std::domain_error for a == 0
        if (a == 0) throw_no_inverse();
        if (m_ == 1) return 1;
        return exp_[q_ - 1 - log_[a]];
    }

    gf_t div(gf_t a, gf_t b) const {  // throws std::domain_error for b == 0
        if (b == 0) throw_div_by_zero();
        if (a == 0) return 0;
        if (m_ == 1) return a;
        return exp_[static_cast<unsigned>(log_[a]) + (q_ - 1) - log_[b]];
    }

    gf_t pow(gf_t a, long long e) const;

    /// alpha^i (any i >= 0); 1 for F_2.
    gf_t exp_at(unsigned i) const noexcept { return m_ == 1 ? gf_t{1} : exp_[i % (q_ - 1)]; }

    /// Discrete log base alpha; throws std::domain_error for a == 0.
    unsigned log_of(gf_t a) const;

    bool contains(unsigned v) const noexcept { return v < q_; }
    bool same_as(const Field& other) const noexcept {
        return m_ == other.m_ && poly_ == other.poly_;
    }

private:
    Field(unsigned degree, unsigned modulus);

    [[noreturn]] static void throw_no_inverse();
    [[noreturn]] static void throw_div_by_zero();

    unsigned m_;
    unsigned q_;
    unsigned poly_;
    // exp_ holds two periods so products of two logs index without a modulo.
    std::array<gf_t, 510> exp_{};
    std::array<std::uint8_t, 256> log_{};
};

/// Fixed default modulus per degree (see gf.cpp for the table).
unsigned default_modulus(unsigned degree);

/// Exhaustive trial-division irreducibility test over F_2, degree <= 8.
bool is_irreducible(unsigned poly, unsigned degree) noexcept;

}  // namespace mdsf
