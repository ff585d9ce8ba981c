#include "eiscong/arith/field.hpp"

namespace eiscong::arith {

PrimeFieldElement::PrimeFieldElement(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 2 || !is_prime(static_cast<std::uint64_t>(modulus))) throw Error("modulus must be prime");
  value_ = mod(value, modulus);
}

void PrimeFieldElement::check(const PrimeFieldElement& o) const {
  if (o.modulus_ != modulus_) throw Error("mismatched moduli");
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement& o) const {
  check(o);
  return {value_ + o.value_, modulus_};
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement& o) const {
  check(o);
  return {value_ - o.value_, modulus_};
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement& o) const {
  check(o);
  return {static_cast<std::int64_t>(mulmod(value_, o.value_, modulus_)), modulus_};
}

PrimeFieldElement PrimeFieldElement::inverse() const { return {invmod(value_, modulus_), modulus_}; }

PrimeFieldElement PrimeFieldElement::pow(std::uint64_t e) const {
  return {static_cast<std::int64_t>(powmod(value_, e, modulus_)), modulus_};
}

}  // namespace eiscong::arith
