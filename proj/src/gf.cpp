#include "mdsf/gf.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

namespace mdsf {

namespace {

unsigned poly_degree(unsigned p) noexcept {
    return p == 0 ? 0 : static_cast<unsigned>(std::bit_width(p)) - 1;
}

// Remainder of a modulo b in F_2[x].
unsigned poly_mod(unsigned a, unsigned b) noexcept {
    const unsigned db = poly_degree(b);
    while (a != 0 && poly_degree(a) >= db) {
        a ^= b << (poly_degree(a) - db);
    }
    return a;
}

void check_degree(unsigned degree) {
    if (degree < 1 || degree > 8) {
        throw std::invalid_argument("field degree must be in [1, 8], got " +
                                    std::to_string(degree));
    }
}

}  // namespace

bool is_irreducible(unsigned poly, unsigned degree) noexcept {
    if (degree == 0 || poly_degree(poly) != degree) return false;
    if (degree == 1) return true;
    if ((poly & 1u) == 0) return false;  // divisible by x
    // Any factorization contains a factor of degree <= degree/2.
    for (unsigned d = 1; d <= degree / 2; ++d) {
        for (unsigned f = 1u << d; f < (2u << d); ++f) {
            if (poly_mod(poly, f) == 0) return false;
        }
    }
    return true;
}

unsigned default_modulus(unsigned degree) {
    check_degree(degree);
    // x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x^3+1,
    // x^8+x^4+x^3+x^2+1. All primitive, so the generated tables are canonical.
    static constexpr unsigned kModuli[9] = {0,     0b11,      0b111,      0b1011, 0b10011,
                                            0b100101, 0b1000011, 0b10001001, 0x11D};
    return kModuli[degree];
}

FieldPtr Field::make(unsigned degree) { return make(degree, default_modulus(degree)); }

FieldPtr Field::make(unsigned degree, unsigned modulus) {
    return FieldPtr(new Field(degree, modulus));
}

Field::Field(unsigned degree, unsigned modulus)
    : m_(degree), q_(1u << degree), poly_(modulus) {
    check_degree(degree);
    if (!is_irreducible(modulus, degree)) {
        throw std::invalid_argument("modulus " + std::to_string(modulus) +
                                    " is not an irreducible polynomial of degree " +
                                    std::to_string(degree));
    }
    if (m_ == 1) return;  // F_2 needs no tables

    const unsigned period = q_ - 1;
    unsigned b = 1;
    for (unsigned i = 0; i < period; ++i) {
        exp_[i] = static_cast<gf_t>(b);
        exp_[i + period] = static_cast<gf_t>(b);
        log_[b] = static_cast<std::uint8_t>(i);
        b <<= 1;
        if (b & q_) b ^= poly_;
        if (b == 1 && i + 1 != period) {
            throw std::invalid_argument(
                "modulus " + std::to_string(modulus) +
                " is irreducible but not primitive; x must generate the "
                "multiplicative group for the log tables to be valid");
        }
    }
    assert(b == 1);  // x^(q-1) = 1 once no shorter period fired
}

void Field::throw_no_inverse() {
    throw std::domain_error("zero has no multiplicative inverse");
}

void Field::throw_div_by_zero() {
    throw std::domain_error("division by zero in the field");
}

gf_t Field::pow(gf_t a, long long e) const {
    if (e == 0) return 1;
    if (a == 0) {
        if (e < 0) throw std::domain_error("zero has no multiplicative inverse");
        return 0;
    }
    if (m_ == 1) return 1;  // a == 1
    const long long period = q_ - 1;
    long long r = e % period;
    if (r < 0) r += period;
    return exp_[(static_cast<unsigned>(log_[a]) * static_cast<unsigned>(r)) % (q_ - 1)];
}

unsigned Field::log_of(gf_t a) const {
    if (a == 0) throw std::domain_error("zero has no discrete logarithm");
    if (m_ == 1) return 0;
    return log_[a];
}

}  // namespace mdsf
