#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taam {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured bound.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgebraOptions {
  std::size_t max_props = 20;
  // Permits an algebra over zero props (a single atom, carrier {0, 1}).
  bool allow_trivial = false;
};

/// Hard ceiling on props regardless of options: elements are 2^k-bit sets.
inline constexpr std::size_t kHardPropLimit = 26;

/// Default bound on explicitly enumerated element collections.
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

namespace detail {
struct Signature {
  std::vector<std::string> props;
};
}  // namespace detail

class Element;
using ElementSet = std::set<Element>;

/// Free Boolean algebra over named propositions. Minterm m assigns prop i
/// the value of bit i of m.
class Algebra {
 public:
  explicit Algebra(std::vector<std::string> props, const AlgebraOptions& options = {});

  const std::vector<std::string>& props() const { return sig_->props; }
  std::size_t prop_count() const { return sig_->props.size(); }
  std::uint64_t minterm_count() const { return std::uint64_t{1} << prop_count(); }
  std::optional<std::size_t> prop_index(std::string_view name) const;

  Element bottom() const;
  Element top() const;
  Element prop(std::size_t index) const;
  /// Throws AlgebraError on an unknown name.
  Element prop(std::string_view name) const;
  Element atom(std::uint64_t minterm) const;

  /// Two handles are interchangeable when they name the same props in order.
  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  explicit Algebra(std::shared_ptr<const detail::Signature> sig) : sig_(std::move(sig)) {}
  std::shared_ptr<const detail::Signature> sig_;
  friend class Element;
};

/// An element of an Algebra, stored as its set of minterms.
class Element {
 public:
  Algebra algebra() const { return Algebra(sig_); }
  bool is_bottom() const;
  bool is_top() const;
  bool has_minterm(std::uint64_t m) const { return (bits_[m >> 6] >> (m & 63)) & 1U; }
  std::uint64_t popcount() const;
  std::vector<std::uint64_t> minterms() const;
  const std::vector<std::uint64_t>& words() const { return bits_; }
  bool same_algebra(const Element& other) const;

  friend Element meet(const Element& a, const Element& b);
  friend Element join(const Element& a, const Element& b);
  friend Element complement(const Element& a);
  friend bool leq(const Element& a, const Element& b);

  friend bool operator==(const Element& a, const Element& b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    return a.bits_ <=> b.bits_;
  }

  Element operator&(const Element& o) const { return meet(*this, o); }
  Element operator|(const Element& o) const { return join(*this, o); }
  Element operator~() const { return complement(*this); }

 private:
  Element(std::shared_ptr<const detail::Signature> sig, std::vector<std::uint64_t> bits)
      : sig_(std::move(sig)), bits_(std::move(bits)) {}
  std::shared_ptr<const detail::Signature> sig_;
  std::vector<std::uint64_t> bits_;
  friend class Algebra;
  friend Element cofactor(const Element&, std::size_t, bool);
  friend Element from_minterm_list(const Algebra&, std::span<const std::uint64_t>);
  friend Element embed_into(const Algebra&, std::size_t, std::size_t, const Element&);
};

Element meet(const Element& a, const Element& b);
Element join(const Element& a, const Element& b);
Element complement(const Element& a);
bool leq(const Element& a, const Element& b);
inline bool less(const Element& a, const Element& b) { return leq(a, b) && !(a == b); }
inline bool comparable(const Element& a, const Element& b) { return leq(a, b) || leq(b, a); }

Element from_minterm_list(const Algebra& algebra, std::span<const std::uint64_t> minterms);

/// Whether flipping prop `prop` can change membership of some minterm.
bool depends_on(const Element& e, std::size_t prop);
/// Shannon cofactor: e with prop fixed to `value`, no longer depending on it.
Element cofactor(const Element& e, std::size_t prop, bool value);

ElementSet downset(const ElementSet& s, std::size_t cap = kDefaultEnumerationCap);
ElementSet upset(const ElementSet& s, std::size_t cap = kDefaultEnumerationCap);
bool in_downset(const Element& x, const ElementSet& s);
bool in_upset(const Element& x, const ElementSet& s);

/// Meet of all members; top for the empty set.
Element inf_set(const Algebra& algebra, const ElementSet& s);
/// Join of all members; bottom for the empty set.
Element sup_set(const Algebra& algebra, const ElementSet& s);

/// Every element of the algebra. Only feasible for at most 4 props.
ElementSet carrier(const Algebra& algebra);
ElementSet atoms(const Algebra& algebra);
/// Searched from the definition over the carrier, so bounded like carrier().
ElementSet join_irreducibles(const Algebra& algebra);
/// Atoms below `a`.
ElementSet eta(const Element& a);

bool is_subalgebra(const ElementSet& s, const Algebra& algebra);

/// Elements showing why `s` is not a subalgebra, with a short reason.
struct SubalgebraDefect {
  std::string reason;
  std::vector<Element> elements;
};
std::optional<SubalgebraDefect> subalgebra_defect(const ElementSet& s, const Algebra& algebra);

struct ProductAlgebra {
  Algebra algebra;
  std::vector<Algebra> parts;
  std::vector<std::size_t> offsets;

  /// Cylindrical image of an element of parts[part].
  Element embed(std::size_t part, const Element& e) const;
};

ProductAlgebra disjoint_product(std::span<const Algebra> parts,
                                const AlgebraOptions& options = {});

/// A collection of elements standing for I(T, omega): either a listed set or
/// the subalgebra generated by some elements, which is kept symbolic because
/// its size is doubly exponential in the generators.
class AspectSpace {
 public:
  AspectSpace() = default;
  static AspectSpace listed(ElementSet members);
  static AspectSpace generated(const Algebra& algebra, const ElementSet& generators);
  /// Entire algebra, i.e. generated by every prop.
  static AspectSpace all(const Algebra& algebra);

  bool is_generated() const { return generated_; }
  bool empty() const { return !generated_ && members_.empty(); }
  bool contains(const Element& x) const;
  bool is_subalgebra() const;
  std::optional<SubalgebraDefect> subalgebra_defect() const;

  /// Some member of *this that `other` lacks, if any.
  std::optional<Element> missing_from(const AspectSpace& other) const;

  /// All members, or nullopt when there are more than `cap`.
  std::optional<ElementSet> enumerate(std::size_t cap = kDefaultEnumerationCap) const;

  const ElementSet& members() const { return members_; }
  const ElementSet& generators() const { return generators_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Element>& blocks() const { return blocks_; }

 private:
  bool generated_ = false;
  ElementSet members_;
  ElementSet generators_;
  std::optional<Algebra> algebra_;
  // Atoms of the generated subalgebra and, per minterm, the atom holding it.
  std::vector<Element> blocks_;
  std::vector<std::uint32_t> block_of_;
  // Set when every generator is a prop: membership reduces to independence.
  std::optional<std::vector<bool>> prop_mask_;
};

}  // namespace taam
