#pragma once

#include <string>

#include "unicrit/number_field.hpp"

namespace unicrit {

// f(x) = x^d + c with c in K and d >= 2.
class UnicriticalMap {
 public:
  UnicriticalMap(unsigned long d, FieldElement c);

  unsigned long d() const { return d_; }
  const FieldElement& c() const { return c_; }
  const NumberField& field() const { return c_.field(); }

  FieldElement operator()(const FieldElement& x) const { return x.pow(d_) + c_; }

  std::string to_string(const std::string& gen = "a") const;
  friend bool operator==(const UnicriticalMap& a, const UnicriticalMap& b) {
    return a.d_ == b.d_ && a.c_ == b.c_;
  }

 private:
  unsigned long d_;
  FieldElement c_;
};

}  // namespace unicrit
