#include "taam/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <unordered_map>

namespace taam {

namespace {

constexpr std::uint64_t kPropPattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::size_t word_count(std::size_t k) { return k < 6 ? 1 : std::size_t{1} << (k - 6); }

std::uint64_t valid_mask(std::size_t k) {
  return k < 6 ? (std::uint64_t{1} << (std::uint64_t{1} << k)) - 1 : ~std::uint64_t{0};
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
  });
}

void require_same(const Element& a, const Element& b) {
  if (!a.same_algebra(b)) throw AlgebraError("algebra mismatch");
}

}  // namespace

Algebra::Algebra(std::vector<std::string> props, const AlgebraOptions& options) {
  if (props.empty() && !options.allow_trivial)
    throw AlgebraError("algebra needs at least one prop");
  if (props.size() > options.max_props || props.size() > kHardPropLimit)
    throw AlgebraError("prop cap exceeded: " + std::to_string(props.size()) + " > " +
                       std::to_string(std::min(options.max_props, kHardPropLimit)));
  std::set<std::string> seen;
  for (const auto& p : props) {
    if (!valid_identifier(p)) throw AlgebraError("invalid prop name '" + p + "'");
    if (!seen.insert(p).second) throw AlgebraError("duplicate prop '" + p + "'");
  }
  sig_ = std::make_shared<const detail::Signature>(detail::Signature{std::move(props)});
}

std::optional<std::size_t> Algebra::prop_index(std::string_view name) const {
  const auto& ps = sig_->props;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (ps[i] == name) return i;
  return std::nullopt;
}

Element Algebra::bottom() const {
  return Element(sig_, std::vector<std::uint64_t>(word_count(prop_count()), 0));
}

Element Algebra::top() const {
  return Element(sig_, std::vector<std::uint64_t>(word_count(prop_count()), valid_mask(prop_count())));
}

Element Algebra::prop(std::size_t index) const {
  const std::size_t k = prop_count();
  if (index >= k) throw AlgebraError("prop index out of range");
  std::vector<std::uint64_t> bits(word_count(k));
  if (index < 6) {
    for (auto& w : bits) w = kPropPattern[index] & valid_mask(k);
  } else {
    for (std::size_t w = 0; w < bits.size(); ++w)
      bits[w] = ((w >> (index - 6)) & 1U) ? ~std::uint64_t{0} : 0;
  }
  return Element(sig_, std::move(bits));
}

Element Algebra::prop(std::string_view name) const {
  auto i = prop_index(name);
  if (!i) throw AlgebraError("unknown prop '" + std::string(name) + "'");
  return prop(*i);
}

Element Algebra::atom(std::uint64_t minterm) const {
  if (minterm >= minterm_count()) throw AlgebraError("minterm out of range");
  auto e = bottom();
  e.bits_[minterm >> 6] |= std::uint64_t{1} << (minterm & 63);
  return e;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.sig_ == b.sig_ || a.sig_->props == b.sig_->props;
}

bool Element::same_algebra(const Element& other) const {
  return sig_ == other.sig_ || sig_->props == other.sig_->props;
}

bool Element::is_bottom() const {
  return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
}

bool Element::is_top() const {
  auto mask = valid_mask(sig_->props.size());
  return std::all_of(bits_.begin(), bits_.end(), [mask](auto w) { return w == mask; });
}

std::uint64_t Element::popcount() const {
  std::uint64_t n = 0;
  for (auto w : bits_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

std::vector<std::uint64_t> Element::minterms() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    auto word = bits_[w];
    while (word) {
      out.push_back((w << 6) | static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

Element meet(const Element& a, const Element& b) {
  require_same(a, b);
  auto bits = a.bits_;
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] &= b.bits_[i];
  return Element(a.sig_, std::move(bits));
}

Element join(const Element& a, const Element& b) {
  require_same(a, b);
  auto bits = a.bits_;
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] |= b.bits_[i];
  return Element(a.sig_, std::move(bits));
}

Element complement(const Element& a) {
  auto mask = valid_mask(a.sig_->props.size());
  auto bits = a.bits_;
  for (auto& w : bits) w = ~w & mask;
  return Element(a.sig_, std::move(bits));
}

bool leq(const Element& a, const Element& b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.bits_.size(); ++i)
    if (a.bits_[i] & ~b.bits_[i]) return false;
  return true;
}

Element from_minterm_list(const Algebra& algebra, std::span<const std::uint64_t> minterms) {
  auto e = algebra.bottom();
  for (auto m : minterms) {
    if (m >= algebra.minterm_count()) throw AlgebraError("minterm out of range");
    e.bits_[m >> 6] |= std::uint64_t{1} << (m & 63);
  }
  return e;
}

bool depends_on(const Element& e, std::size_t prop) {
  const auto& w = e.words();
  if (prop < 6) {
    const unsigned shift = 1U << prop;
    const auto low = ~kPropPattern[prop];
    return std::any_of(w.begin(), w.end(),
                       [&](auto word) { return ((word >> shift) ^ word) & low; });
  }
  const std::size_t stride = std::size_t{1} << (prop - 6);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(i & stride) && w[i] != w[i | stride]) return true;
  return false;
}

Element cofactor(const Element& e, std::size_t prop, bool value) {
  auto bits = e.bits_;
  if (prop < 6) {
    const unsigned shift = 1U << prop;
    const auto pat = kPropPattern[prop];
    const auto mask = valid_mask(e.sig_->props.size());
    for (auto& w : bits) {
      if (value) {
        auto hi = w & pat;
        w = (hi | (hi >> shift)) & mask;
      } else {
        auto lo = w & ~pat;
        w = (lo | (lo << shift)) & mask;
      }
    }
  } else {
    const std::size_t stride = std::size_t{1} << (prop - 6);
    for (std::size_t i = 0; i < bits.size(); ++i)
      bits[i] = e.bits_[value ? (i | stride) : (i & ~stride)];
  }
  return Element(e.sig_, std::move(bits));
}

namespace {

// Every element whose minterms are `fixed` plus a subset of `free`.
void enumerate_between(const Element& fixed, const std::vector<std::uint64_t>& free,
                       ElementSet& out, std::size_t cap) {
  if (free.size() >= 63 || (std::uint64_t{1} << free.size()) > cap)
    throw CapExceeded("enumeration exceeds cap of " + std::to_string(cap) + " elements");
  const std::uint64_t n = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::vector<std::uint64_t> chosen;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((mask >> i) & 1U) chosen.push_back(free[i]);
    auto e = join(fixed, from_minterm_list(fixed.algebra(), chosen));
    out.insert(std::move(e));
    if (out.size() > cap)
      throw CapExceeded("enumeration exceeds cap of " + std::to_string(cap) + " elements");
  }
}

}  // namespace

ElementSet downset(const ElementSet& s, std::size_t cap) {
  ElementSet out;
  for (const auto& a : s) enumerate_between(a.algebra().bottom(), a.minterms(), out, cap);
  return out;
}

ElementSet upset(const ElementSet& s, std::size_t cap) {
  ElementSet out;
  for (const auto& a : s) enumerate_between(a, complement(a).minterms(), out, cap);
  return out;
}

bool in_downset(const Element& x, const ElementSet& s) {
  return std::any_of(s.begin(), s.end(), [&](const Element& a) { return leq(x, a); });
}

bool in_upset(const Element& x, const ElementSet& s) {
  return std::any_of(s.begin(), s.end(), [&](const Element& a) { return leq(a, x); });
}

Element inf_set(const Algebra& algebra, const ElementSet& s) {
  auto acc = algebra.top();
  for (const auto& e : s) acc = meet(acc, e);
  return acc;
}

Element sup_set(const Algebra& algebra, const ElementSet& s) {
  auto acc = algebra.bottom();
  for (const auto& e : s) acc = join(acc, e);
  return acc;
}

namespace {

constexpr std::size_t kCarrierPropLimit = 4;

void require_carrier(const Algebra& algebra) {
  if (algebra.prop_count() > kCarrierPropLimit)
    throw CapExceeded("carrier enumeration needs at most " + std::to_string(kCarrierPropLimit) +
                      " props");
}

Element element_from_mask(const Algebra& algebra, std::uint32_t mask) {
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 0; m < algebra.minterm_count(); ++m)
    if ((mask >> m) & 1U) ms.push_back(m);
  return from_minterm_list(algebra, ms);
}

}  // namespace

ElementSet carrier(const Algebra& algebra) {
  require_carrier(algebra);
  ElementSet out;
  const std::uint64_t n = std::uint64_t{1} << algebra.minterm_count();
  for (std::uint64_t mask = 0; mask < n; ++mask)
    out.insert(element_from_mask(algebra, static_cast<std::uint32_t>(mask)));
  return out;
}

ElementSet atoms(const Algebra& algebra) {
  ElementSet out;
  for (std::uint64_t m = 0; m < algebra.minterm_count(); ++m) out.insert(algebra.atom(m));
  return out;
}

ElementSet join_irreducibles(const Algebra& algebra) {
  require_carrier(algebra);
  // x = y v z forces y, z <= x, so the search stays inside the downset of x.
  ElementSet out;
  const std::uint64_t n = std::uint64_t{1} << algebra.minterm_count();
  for (std::uint64_t x = 1; x < n; ++x) {
    bool reducible = false;
    for (std::uint64_t y = (x - 1) & x;; y = (y - 1) & x) {
      for (std::uint64_t z = (x - 1) & x;; z = (z - 1) & x) {
        if ((y | z) == x) {
          reducible = true;
          break;
        }
        if (z == 0) break;
      }
      if (reducible || y == 0) break;
    }
    if (!reducible) out.insert(element_from_mask(algebra, static_cast<std::uint32_t>(x)));
  }
  return out;
}

ElementSet eta(const Element& a) {
  ElementSet out;
  auto algebra = a.algebra();
  for (auto m : a.minterms()) out.insert(algebra.atom(m));
  return out;
}

std::optional<SubalgebraDefect> subalgebra_defect(const ElementSet& s, const Algebra& algebra) {
  if (!s.contains(algebra.bottom())) return SubalgebraDefect{"bottom missing", {algebra.bottom()}};
  if (!s.contains(algebra.top())) return SubalgebraDefect{"top missing", {algebra.top()}};
  for (const auto& x : s) {
    auto nx = complement(x);
    if (!s.contains(nx)) return SubalgebraDefect{"not closed under complement", {x, nx}};
  }
  for (auto i = s.begin(); i != s.end(); ++i) {
    for (auto j = std::next(i); j != s.end(); ++j) {
      auto m = meet(*i, *j);
      if (!s.contains(m)) return SubalgebraDefect{"not closed under meet", {*i, *j, m}};
      auto v = join(*i, *j);
      if (!s.contains(v)) return SubalgebraDefect{"not closed under join", {*i, *j, v}};
    }
  }
  return std::nullopt;
}

bool is_subalgebra(const ElementSet& s, const Algebra& algebra) {
  for (const auto& e : s)
    if (!(e.algebra() == algebra)) throw AlgebraError("algebra mismatch");
  return !subalgebra_defect(s, algebra).has_value();
}

Element embed_into(const Algebra& target, std::size_t offset, std::size_t width,
                   const Element& e) {
  auto out = target.bottom();
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  for (std::uint64_t m = 0; m < target.minterm_count(); ++m)
    if (e.has_minterm((m >> offset) & mask)) out.bits_[m >> 6] |= std::uint64_t{1} << (m & 63);
  return out;
}

Element ProductAlgebra::embed(std::size_t part, const Element& e) const {
  if (part >= parts.size()) throw AlgebraError("no such product part");
  if (!(e.algebra() == parts[part])) throw AlgebraError("algebra mismatch");
  return embed_into(algebra, offsets[part], parts[part].prop_count(), e);
}

ProductAlgebra disjoint_product(std::span<const Algebra> parts, const AlgebraOptions& options) {
  std::vector<std::string> props;
  std::vector<std::size_t> offsets;
  std::set<std::string> seen;
  for (const auto& part : parts) {
    offsets.push_back(props.size());
    for (const auto& p : part.props()) {
      if (!seen.insert(p).second) throw AlgebraError("prop name clash '" + p + "'");
      props.push_back(p);
    }
  }
  auto opts = options;
  opts.allow_trivial = true;
  return ProductAlgebra{Algebra(std::move(props), opts),
                        std::vector<Algebra>(parts.begin(), parts.end()), std::move(offsets)};
}

// AspectSpace

AspectSpace AspectSpace::listed(ElementSet members) {
  AspectSpace s;
  s.members_ = std::move(members);
  return s;
}

AspectSpace AspectSpace::generated(const Algebra& algebra, const ElementSet& generators) {
  AspectSpace s;
  s.generated_ = true;
  s.generators_ = generators;
  s.algebra_ = algebra;
  const std::size_t k = algebra.prop_count();

  std::vector<bool> prop_mask(k, false);
  bool all_props = true;
  for (const auto& g : generators) {
    if (!(g.algebra() == algebra)) throw AlgebraError("algebra mismatch");
    bool matched = false;
    for (std::size_t i = 0; i < k && !matched; ++i)
      if (g == algebra.prop(i)) prop_mask[i] = matched = true;
    all_props = all_props && matched;
  }
  if (all_props) s.prop_mask_ = prop_mask;

  // Atoms of the generated subalgebra: minterms grouped by their generator signature.
  std::vector<Element> gens(generators.begin(), generators.end());
  std::map<std::vector<bool>, std::uint32_t> ids;
  std::vector<std::vector<std::uint64_t>> cells;
  s.block_of_.resize(algebra.minterm_count());
  for (std::uint64_t m = 0; m < algebra.minterm_count(); ++m) {
    std::vector<bool> sig(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) sig[g] = gens[g].has_minterm(m);
    auto [it, fresh] = ids.try_emplace(std::move(sig), static_cast<std::uint32_t>(cells.size()));
    if (fresh) cells.emplace_back();
    cells[it->second].push_back(m);
    s.block_of_[m] = it->second;
  }
  for (const auto& c : cells) s.blocks_.push_back(from_minterm_list(algebra, c));
  return s;
}

AspectSpace AspectSpace::all(const Algebra& algebra) {
  ElementSet gens;
  for (std::size_t i = 0; i < algebra.prop_count(); ++i) gens.insert(algebra.prop(i));
  return generated(algebra, gens);
}

bool AspectSpace::contains(const Element& x) const {
  if (!generated_) return members_.contains(x);
  if (!(x.algebra() == *algebra_)) throw AlgebraError("algebra mismatch");
  if (prop_mask_) {
    for (std::size_t i = 0; i < prop_mask_->size(); ++i)
      if (!(*prop_mask_)[i] && depends_on(x, i)) return false;
    return true;
  }
  std::vector<signed char> seen(blocks_.size(), -1);
  for (std::uint64_t m = 0; m < block_of_.size(); ++m) {
    signed char bit = x.has_minterm(m) ? 1 : 0;
    auto& slot = seen[block_of_[m]];
    if (slot == -1)
      slot = bit;
    else if (slot != bit)
      return false;
  }
  return true;
}

bool AspectSpace::is_subalgebra() const {
  if (generated_) return true;
  if (members_.empty()) return false;
  return !subalgebra_defect().has_value();
}

std::optional<SubalgebraDefect> AspectSpace::subalgebra_defect() const {
  if (generated_) return std::nullopt;
  if (members_.empty()) return SubalgebraDefect{"empty", {}};
  return taam::subalgebra_defect(members_, members_.begin()->algebra());
}

std::optional<Element> AspectSpace::missing_from(const AspectSpace& other) const {
  if (!generated_) {
    for (const auto& x : members_)
      if (!other.contains(x)) return x;
    return std::nullopt;
  }
  if (other.generated_) {
    if (!(*algebra_ == *other.algebra_)) throw AlgebraError("algebra mismatch");
    // Included iff each block of `other` sits inside one block of *this.
    std::unordered_map<std::uint32_t, std::uint32_t> owner;
    for (std::uint64_t m = 0; m < block_of_.size(); ++m) {
      auto [it, fresh] = owner.try_emplace(other.block_of_[m], block_of_[m]);
      if (!fresh && it->second != block_of_[m]) return blocks_[it->second];
    }
    return std::nullopt;
  }
  // Generated into listed: enumerate just past the listed size.
  const std::size_t limit = other.members_.size() + 1;
  const std::size_t b = blocks_.size();
  for (std::uint64_t mask = 0; mask < limit && (b >= 63 || mask < (std::uint64_t{1} << b));
       ++mask) {
    auto e = algebra_->bottom();
    for (std::size_t i = 0; i < b && i < 64; ++i)
      if ((mask >> i) & 1U) e = join(e, blocks_[i]);
    if (!other.contains(e)) return e;
  }
  return std::nullopt;
}

std::optional<ElementSet> AspectSpace::enumerate(std::size_t cap) const {
  if (!generated_) return members_;
  const std::size_t b = blocks_.size();
  if (b >= 63 || (std::uint64_t{1} << b) > cap) return std::nullopt;
  ElementSet out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b); ++mask) {
    auto e = algebra_->bottom();
    for (std::size_t i = 0; i < b; ++i)
      if ((mask >> i) & 1U) e = join(e, blocks_[i]);
    out.insert(std::move(e));
  }
  return out;
}

}  // namespace taam
