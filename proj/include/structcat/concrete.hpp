#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "structcat/fincat.hpp"

namespace structcat {

namespace detail {
struct LiftIndex;
struct OppositeSlot;
}  // namespace detail

// A category C together with a faithful functor U : C -> X. Construction
// validates C, X and U and rejects non-faithful U with NotFaithful.
class ConcreteCategory {
 public:
  ConcreteCategory(FinCategory C, FinCategory X, Functor U);

  const FinCategory& C() const { return c_; }
  const FinCategory& X() const { return x_; }
  const Functor& U() const { return u_; }

  // The unique m : B -> A in C with U(m) = f. Throws DomainMismatch unless
  // f : U(B) -> U(A).
  std::optional<Mor> lift(Mor f, Obj B, Obj A) const;
  // Existence of the lift only; same precondition, unchecked.
  bool liftable(Mor f, Obj B, Obj A) const;

  std::span<const Obj> fiber(Obj x0) const;

  // (C^op, U^op, X^op), built on first use and shared by copies.
  const ConcreteCategory& opposite() const;

 private:
  ConcreteCategory(FinCategory C, FinCategory X, Functor U,
                   std::shared_ptr<const detail::LiftIndex> index, bool flipped);

  FinCategory c_;
  FinCategory x_;
  Functor u_;
  std::shared_ptr<const detail::LiftIndex> index_;
  bool flipped_ = false;
  std::shared_ptr<detail::OppositeSlot> opposite_;
};

inline ConcreteCategory new_concrete(FinCategory C, FinCategory X, Functor U) {
  return ConcreteCategory(std::move(C), std::move(X), std::move(U));
}

inline std::optional<Mor> lift(const ConcreteCategory& cc, Mor f, Obj B, Obj A) {
  return cc.lift(f, B, A);
}

inline std::vector<Obj> fiber(const ConcreteCategory& cc, Obj x0) {
  auto f = cc.fiber(x0);
  return {f.begin(), f.end()};
}

}  // namespace structcat
