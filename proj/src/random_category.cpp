#include "structcat/random_category.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "structcat/error.hpp"
#include "structcat/instances.hpp"

namespace structcat {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (index * 0xd1342543de82ef95ULL);
  splitmix64(state);
  return splitmix64(state);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection keeps the draw unbiased.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

namespace {

std::uint32_t compose_codes(std::uint32_t g, std::uint32_t f, int n, int m, int k) {
  auto fi = decode_function(f, n, m);
  auto gi = decode_function(g, m, k);
  std::vector<int> h(n);
  for (int i = 0; i < n; ++i) h[i] = gi[fi[i]];
  return encode_function(h, k);
}

std::uint32_t identity_code(int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  return encode_function(id, n);
}

std::string padded(std::size_t i, std::size_t width) {
  std::string s = std::to_string(i);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

}  // namespace

ConcreteCategory random_concrete_category(std::uint64_t seed, const RandomCategoryConfig& config) {
  if (config.max_objects == 0 || config.max_morphisms == 0)
    throw std::invalid_argument("random category bounds must be positive");
  if (config.max_carrier < 0 || config.max_carrier > 3)
    throw BoundExceeded("random category carriers must lie in 0..3");

  std::uint64_t state = seed;
  std::mt19937_64 rng(splitmix64(state));
  std::size_t objects = 1 + uniform_below(rng, std::min(config.max_objects, config.max_morphisms));
  std::vector<int> carrier(objects);
  for (auto& c : carrier) c = static_cast<int>(uniform_below(rng, config.max_carrier + 1));

  const std::size_t n = objects;
  std::vector<std::uint32_t> hom;
  std::uint64_t per_mille = 100 + 100 * uniform_below(rng, 6);
  for (int attempt = 0;; ++attempt) {
    hom.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) hom[a * n + a] |= 1u << identity_code(carrier[a]);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::uint32_t code = 0; code < function_count(carrier[a], carrier[b]); ++code)
          if (uniform_below(rng, 1000) < per_mille) hom[a * n + b] |= 1u << code;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            for (std::uint32_t f = 0; f < 32; ++f) {
              if (!((hom[a * n + b] >> f) & 1u)) continue;
              for (std::uint32_t g = 0; g < 32; ++g) {
                if (!((hom[b * n + c] >> g) & 1u)) continue;
                std::uint32_t h = compose_codes(g, f, carrier[a], carrier[b], carrier[c]);
                if (!((hom[a * n + c] >> h) & 1u)) {
                  hom[a * n + c] |= 1u << h;
                  changed = true;
                }
              }
            }
    }
    std::size_t total = 0;
    for (auto h : hom) total += static_cast<std::size_t>(__builtin_popcount(h));
    if (total <= config.max_morphisms) break;
    per_mille = attempt < 6 ? per_mille / 2 : 0;
  }

  std::size_t width = std::to_string(n - 1).size();
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) names[a] = "o" + padded(a, width);
  auto morphism_name = [&](std::size_t a, std::size_t b, std::uint32_t code) {
    if (a == b && code == identity_code(carrier[a])) return "id_" + names[a];
    std::string digits;
    for (int v : decode_function(code, carrier[a], carrier[b])) digits.push_back(static_cast<char>('0' + v));
    return "f_" + names[a] + "_" + names[b] + "_" + digits;
  };

  CategoryBuilder builder("Rand");
  for (const auto& name : names) builder.add_object(name);
  for (std::size_t a = 0; a < n; ++a) {
    builder.set_identity(names[a], "id_" + names[a]);
    for (std::size_t b = 0; b < n; ++b)
      for (std::uint32_t code = 0; code < 32; ++code)
        if ((hom[a * n + b] >> code) & 1u) builder.add_morphism(morphism_name(a, b, code), names[a], names[b]);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::uint32_t f = 0; f < 32; ++f) {
          if (!((hom[a * n + b] >> f) & 1u)) continue;
          for (std::uint32_t g = 0; g < 32; ++g) {
            if (!((hom[b * n + c] >> g) & 1u)) continue;
            std::uint32_t h = compose_codes(g, f, carrier[a], carrier[b], carrier[c]);
            builder.set_composite(morphism_name(b, c, g), morphism_name(a, b, f), morphism_name(a, c, h));
          }
        }
  FinCategory C = builder.build();
  FinCategory X = build_set_fin(config.max_carrier);

  std::vector<Obj> object_map(C.object_count());
  for (std::uint32_t a = 0; a < C.object_count(); ++a) {
    // names sort like indices, so C's object a is names[a]
    object_map[a] = X.object("S" + std::to_string(carrier[a]));
  }
  std::vector<Mor> morphism_map(C.morphism_count());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::uint32_t code = 0; code < 32; ++code)
        if ((hom[a * n + b] >> code) & 1u) {
          Mor m = C.morphism(morphism_name(a, b, code));
          morphism_map[m.index] = *X.find_by_code(object_map[a], object_map[b], code);
        }
  Functor U("U", C.name(), X.name(), std::move(object_map), std::move(morphism_map));
  return ConcreteCategory(std::move(C), std::move(X), std::move(U));
}

}  // namespace structcat
