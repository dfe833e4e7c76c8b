#pragma once

#include <optional>
#include <vector>

#include "structcat/concrete.hpp"

namespace structcat {

// Legs out of the apex for products; for coproducts the same data read in
// the original category, i.e. legs into the apex.
struct Cone {
  Obj apex;
  std::vector<Mor> legs;
  friend bool operator==(const Cone&, const Cone&) = default;
};

struct ProductReport {
  std::vector<Obj> factors;
  std::optional<Cone> product;     // canonical: least apex, then least legs
  std::vector<Cone> all_products;
  std::optional<bool> concrete;    // only when a concrete category is given
};

// Universal property: for every object W, composing with the legs is a
// bijection hom(W, apex) -> prod_i hom(W, factor_i).
bool is_product_cone(const FinCategory& cat, const std::vector<Obj>& factors, const Cone& cone);

ProductReport find_products(const FinCategory& cat, const std::vector<Obj>& factors);
ProductReport find_products(const ConcreteCategory& cc, const std::vector<Obj>& factors);

// Whether U maps the product cone to a product cone in X. Throws NotAProduct
// unless the cone is a product in C.
bool is_concrete_product(const ConcreteCategory& cc, const std::vector<Obj>& factors, const Cone& cone);

// Products in the opposite category, legs reported under the original ids.
ProductReport find_coproducts(const FinCategory& cat, const std::vector<Obj>& factors);
ProductReport find_coproducts(const ConcreteCategory& cc, const std::vector<Obj>& factors);
bool is_concrete_coproduct(const ConcreteCategory& cc, const std::vector<Obj>& factors, const Cone& cocone);

// The unique morphism u : from.apex -> to.apex with to.legs[i] . u = from.legs[i],
// when it exists.
std::optional<Mor> mediating_morphism(const FinCategory& cat, const Cone& from, const Cone& to);

}  // namespace structcat
