#pragma once

// Helpers shared by the test binaries. The topology and preorder helpers
// here are deliberately naive so they can serve as oracles.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "structcat/concrete.hpp"
#include "structcat/instances.hpp"

namespace support {

using namespace structcat;

inline FinCategory terminal(const std::string& name = "One") {
  CategoryBuilder b(name);
  b.add_object("A");
  return b.build();
}

inline std::uint32_t preimage(const std::vector<int>& f, std::uint32_t subset) {
  std::uint32_t out = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if ((subset >> f[x]) & 1u) out |= 1u << x;
  return out;
}

inline bool continuous(const std::vector<int>& f, const Topology& src, const Topology& tgt) {
  for (auto u : tgt.opens)
    if (!std::binary_search(src.opens.begin(), src.opens.end(), preimage(f, u))) return false;
  return true;
}

// Every family of subsets of an n-set, filtered by the topology axioms.
inline std::vector<std::vector<std::uint32_t>> brute_topologies(int n) {
  const std::uint32_t subsets = 1u << n;
  const std::uint32_t full = subsets - 1;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
    if (!(family & 1u) || !((family >> full) & 1u)) continue;
    bool ok = true;
    for (std::uint32_t a = 0; a < subsets && ok; ++a) {
      if (!((family >> a) & 1u)) continue;
      for (std::uint32_t b = 0; b < subsets && ok; ++b)
        if ((family >> b) & 1u) ok = ((family >> (a | b)) & 1u) && ((family >> (a & b)) & 1u);
    }
    if (!ok) continue;
    std::vector<std::uint32_t> opens;
    for (std::uint32_t a = 0; a < subsets; ++a)
      if ((family >> a) & 1u) opens.push_back(a);
    out.push_back(opens);
  }
  return out;
}

inline bool contains_all(const std::vector<std::uint32_t>& big, const std::vector<std::uint32_t>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::vector<std::vector<int>> all_functions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n > 0 && m == 0) return out;
  std::vector<int> f(n, 0);
  while (true) {
    out.push_back(f);
    int i = n - 1;
    while (i >= 0 && ++f[i] == m) f[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// A table-form category made concrete over Set_fin(max_carrier). carriers
// gives each object's set size; functions gives each declared morphism's
// images. Builder-made identities id_<obj> map to identity functions.
inline ConcreteCategory over_sets(const FinCategory& C, int max_carrier, const std::map<std::string, int>& carriers,
                                  const std::map<std::string, std::vector<int>>& functions) {
  FinCategory X = build_set_fin(max_carrier);
  std::vector<Obj> objects;
  for (std::uint32_t a = 0; a < C.object_count(); ++a)
    objects.push_back(X.object("S" + std::to_string(carriers.at(C.object_name(Obj{a})))));
  std::vector<Mor> morphisms;
  for (std::uint32_t m = 0; m < C.morphism_count(); ++m) {
    Mor f{m};
    int n = carriers.at(C.object_name(C.dom(f)));
    int k = carriers.at(C.object_name(C.cod(f)));
    std::vector<int> images;
    if (auto it = functions.find(C.morphism_name(f)); it != functions.end()) {
      images = it->second;
    } else {
      for (int i = 0; i < n; ++i) images.push_back(i);
    }
    Obj xd = X.object("S" + std::to_string(n));
    Obj xc = X.object("S" + std::to_string(k));
    morphisms.push_back(*X.find_by_code(xd, xc, encode_function(images, k)));
  }
  Functor U("U", C.name(), X.name(), objects, morphisms);
  return new_concrete(C, X, U);
}

// A scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("structcat-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Sets an environment variable for the lifetime of the guard.
class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    if (value) ::setenv(name, value, 1);
    else ::unsetenv(name);
  }
  ~EnvGuard() {
    if (old_) ::setenv(name_, old_->c_str(), 1);
    else ::unsetenv(name_);
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace support
