#include "structcat/concrete.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "structcat/error.hpp"

namespace structcat {

namespace detail {

// Lift lookups, laid out in the orientation C had at construction. The
// opposite concrete category reads the same index with (B, A) swapped.
struct LiftIndex {
  std::size_t n = 0;
  std::vector<std::uint32_t> pair_offset;  // n*n + 1
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;  // (U m, m)
  std::vector<std::uint64_t> bit_offset;   // n*n
  std::vector<std::uint64_t> bits;
  std::vector<std::vector<Obj>> fibers;    // per X object
};

struct OppositeSlot {
  std::once_flag once;
  std::unique_ptr<ConcreteCategory> value;
};

}  // namespace detail

namespace {

std::string describe(const Violation& v) {
  std::string s = v.law;
  for (const auto& w : v.witness) s += " " + w;
  return s;
}

std::shared_ptr<const detail::LiftIndex> build_index(const FinCategory& C, const FinCategory& X,
                                                     const Functor& U) {
  auto idx = std::make_shared<detail::LiftIndex>();
  const std::size_t n = C.object_count();
  idx->n = n;
  idx->pair_offset.assign(n * n + 1, 0);
  idx->bit_offset.assign(n * n, 0);
  idx->entries.reserve(C.morphism_count());
  std::uint64_t bit_total = 0;
  for (std::uint32_t b = 0; b < n; ++b) {
    for (std::uint32_t a = 0; a < n; ++a) {
      std::size_t slot = std::size_t{b} * n + a;
      idx->bit_offset[slot] = bit_total;
      bit_total += X.hom_size(U(Obj{b}), U(Obj{a}));
      std::size_t start = idx->entries.size();
      for (auto m : C.hom_indices(Obj{b}, Obj{a})) idx->entries.emplace_back(U(Mor{m}).index, m);
      std::sort(idx->entries.begin() + static_cast<std::ptrdiff_t>(start), idx->entries.end());
      idx->pair_offset[slot + 1] = static_cast<std::uint32_t>(idx->entries.size());
    }
  }
  idx->bits.assign((bit_total + 63) / 64, 0);
  for (std::uint32_t b = 0; b < n; ++b) {
    for (std::uint32_t a = 0; a < n; ++a) {
      std::size_t slot = std::size_t{b} * n + a;
      for (std::uint32_t e = idx->pair_offset[slot]; e < idx->pair_offset[slot + 1]; ++e) {
        std::uint64_t bit = idx->bit_offset[slot] + X.hom_position(Mor{idx->entries[e].first});
        idx->bits[bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
    }
  }
  idx->fibers.resize(X.object_count());
  for (std::uint32_t a = 0; a < n; ++a) idx->fibers[U(Obj{a}).index].push_back(Obj{a});
  return idx;
}

}  // namespace

ConcreteCategory::ConcreteCategory(FinCategory C, FinCategory X, Functor U)
    : c_(std::move(C)), x_(std::move(X)), u_(std::move(U)),
      opposite_(std::make_shared<detail::OppositeSlot>()) {
  auto rc = validate_category(c_);
  if (!rc.valid()) throw InvalidCategory(c_.name() + ": " + describe(rc.violations.front()));
  auto rx = validate_category(x_);
  if (!rx.valid()) throw InvalidCategory(x_.name() + ": " + describe(rx.violations.front()));
  auto ru = validate_functor(u_, c_, x_);
  if (!ru.valid()) throw InvalidFunctor(u_.name() + ": " + describe(ru.violations.front()));
  auto faithful = is_faithful(u_, c_);
  if (!faithful.faithful)
    throw NotFaithful(u_.name() + " identifies " + c_.morphism_name(faithful.witness->first) + " and " +
                      c_.morphism_name(faithful.witness->second));
  index_ = build_index(c_, x_, u_);
}

ConcreteCategory::ConcreteCategory(FinCategory C, FinCategory X, Functor U,
                                   std::shared_ptr<const detail::LiftIndex> index, bool flipped)
    : c_(std::move(C)), x_(std::move(X)), u_(std::move(U)), index_(std::move(index)),
      flipped_(flipped), opposite_(std::make_shared<detail::OppositeSlot>()) {}

bool ConcreteCategory::liftable(Mor f, Obj B, Obj A) const {
  const auto& idx = *index_;
  std::size_t slot = flipped_ ? std::size_t{A.index} * idx.n + B.index : std::size_t{B.index} * idx.n + A.index;
  std::uint64_t bit = idx.bit_offset[slot] + x_.hom_position(f);
  return (idx.bits[bit / 64] >> (bit % 64)) & 1u;
}

std::optional<Mor> ConcreteCategory::lift(Mor f, Obj B, Obj A) const {
  if (x_.dom(f) != u_(B) || x_.cod(f) != u_(A))
    throw DomainMismatch(x_.morphism_name(f) + " is not a morphism " + x_.object_name(u_(B)) + " -> " +
                         x_.object_name(u_(A)));
  const auto& idx = *index_;
  std::size_t slot = flipped_ ? std::size_t{A.index} * idx.n + B.index : std::size_t{B.index} * idx.n + A.index;
  auto first = idx.entries.begin() + idx.pair_offset[slot];
  auto last = idx.entries.begin() + idx.pair_offset[slot + 1];
  auto it = std::lower_bound(first, last, std::make_pair(f.index, std::uint32_t{0}));
  if (it == last || it->first != f.index) return std::nullopt;
  if (std::next(it) != last && std::next(it)->first == f.index)
    throw std::logic_error("lift is not unique; forgetful functor not faithful");
  return Mor{it->second};
}

std::span<const Obj> ConcreteCategory::fiber(Obj x0) const { return index_->fibers.at(x0.index); }

const ConcreteCategory& ConcreteCategory::opposite() const {
  std::call_once(opposite_->once, [this] {
    FinCategory cop = c_.opposite();
    FinCategory xop = x_.opposite();
    Functor uop = u_.opposite(cop, xop);
    opposite_->value.reset(new ConcreteCategory(cop, xop, uop, index_, !flipped_));
  });
  return *opposite_->value;
}

}  // namespace structcat
