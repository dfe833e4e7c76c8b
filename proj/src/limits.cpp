#include "structcat/limits.hpp"

#include <algorithm>

#include "structcat/error.hpp"
#include "structcat/parallel.hpp"

namespace structcat {

bool is_product_cone(const FinCategory& cat, const std::vector<Obj>& factors, const Cone& cone) {
  if (cone.legs.size() != factors.size()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (cat.dom(cone.legs[i]) != cone.apex || cat.cod(cone.legs[i]) != factors[i]) return false;

  std::vector<bool> seen;
  std::vector<std::uint64_t> radix(factors.size());
  for (std::uint32_t w = 0; w < cat.object_count(); ++w) {
    const Obj W{w};
    auto maps = cat.hom_indices(W, cone.apex);
    // saturate above |hom(W, apex)|; any such total is a mismatch anyway
    const std::uint64_t cap = std::uint64_t{maps.size()} + 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      radix[i] = total;
      total = std::min(cap, total * cat.hom_size(W, factors[i]));
    }
    if (total != maps.size()) return false;
    seen.assign(total, false);
    for (auto u : maps) {
      std::uint64_t slot = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        auto composite = cat.compose(cone.legs[i], Mor{u});
        if (!composite) return false;
        slot += radix[i] * cat.hom_position(*composite);
      }
      if (seen[slot]) return false;
      seen[slot] = true;
    }
  }
  return true;
}

ProductReport find_products(const FinCategory& cat, const std::vector<Obj>& factors) {
  ProductReport report;
  report.factors = factors;
  const std::size_t n = cat.object_count();
  std::vector<std::vector<Cone>> per_apex(n);
  parallel_for(n, [&](std::size_t p) {
    const Obj P{static_cast<std::uint32_t>(p)};
    std::vector<std::vector<Mor>> choices;
    for (Obj f : factors) {
      choices.push_back(cat.hom(P, f));
      if (choices.back().empty()) return;
    }
    std::vector<std::size_t> at(factors.size(), 0);
    while (true) {
      Cone cone{P, {}};
      for (std::size_t i = 0; i < factors.size(); ++i) cone.legs.push_back(choices[i][at[i]]);
      if (is_product_cone(cat, factors, cone)) per_apex[p].push_back(std::move(cone));
      std::size_t i = factors.size();
      while (i > 0 && ++at[i - 1] == choices[i - 1].size()) at[--i] = 0;
      if (i == 0) break;
    }
  });
  for (auto& cones : per_apex)
    for (auto& c : cones) report.all_products.push_back(std::move(c));
  if (!report.all_products.empty()) report.product = report.all_products.front();
  return report;
}

bool is_concrete_product(const ConcreteCategory& cc, const std::vector<Obj>& factors, const Cone& cone) {
  if (!is_product_cone(cc.C(), factors, cone))
    throw NotAProduct("cone at " + cc.C().object_name(cone.apex) + " is not a product in " + cc.C().name());
  const auto& U = cc.U();
  Cone image{U(cone.apex), {}};
  for (Mor leg : cone.legs) image.legs.push_back(U(leg));
  std::vector<Obj> image_factors;
  for (Obj f : factors) image_factors.push_back(U(f));
  return is_product_cone(cc.X(), image_factors, image);
}

ProductReport find_products(const ConcreteCategory& cc, const std::vector<Obj>& factors) {
  ProductReport report = find_products(cc.C(), factors);
  if (report.product) report.concrete = is_concrete_product(cc, factors, *report.product);
  return report;
}

ProductReport find_coproducts(const FinCategory& cat, const std::vector<Obj>& factors) {
  return find_products(cat.opposite(), factors);
}

ProductReport find_coproducts(const ConcreteCategory& cc, const std::vector<Obj>& factors) {
  return find_products(cc.opposite(), factors);
}

bool is_concrete_coproduct(const ConcreteCategory& cc, const std::vector<Obj>& factors, const Cone& cocone) {
  return is_concrete_product(cc.opposite(), factors, cocone);
}

std::optional<Mor> mediating_morphism(const FinCategory& cat, const Cone& from, const Cone& to) {
  if (from.legs.size() != to.legs.size()) return std::nullopt;
  for (auto u : cat.hom_indices(from.apex, to.apex)) {
    bool commutes = true;
    for (std::size_t i = 0; i < to.legs.size() && commutes; ++i)
      commutes = cat.compose(to.legs[i], Mor{u}) == from.legs[i];
    if (commutes) return Mor{u};
  }
  return std::nullopt;
}

}  // namespace structcat
