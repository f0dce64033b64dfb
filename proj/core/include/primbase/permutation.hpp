#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "primbase/bigint.hpp"

namespace primbase {

using point_t = std::uint32_t;

/// A bijection of {0, ..., n-1}, stored as its image list.
///
/// Products follow the left-to-right convention used throughout the library:
/// compose(p, q) applies p first and then q.
class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Throws Error unless `images` is a bijection of {0, ..., size-1}.
  explicit Permutation(std::vector<point_t> images);
  Permutation(std::initializer_list<point_t> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds a permutation from disjoint cycles of 0-based points.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<point_t>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  point_t operator()(point_t i) const noexcept { return images_[i]; }
  point_t operator[](point_t i) const noexcept { return images_[i]; }
  std::span<const point_t> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  std::size_t fixed_count() const noexcept;
  std::size_t support_size() const noexcept { return degree() - fixed_count(); }

  /// Image-list notation, e.g. "[1,0,2]".
  std::string to_string() const;
  /// Cycle notation without fixed points, e.g. "(0,1)(2,3,4)"; "()" for identity.
  std::string cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(Unchecked, std::vector<point_t> images) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend Permutation inverse(const Permutation& p);
  friend Permutation power(const Permutation& p, const BigInt& exponent);

  std::vector<point_t> images_;
};

/// i -> q(p(i)). Throws DegreeMismatch on unequal degrees.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

/// Moved points in increasing order.
std::vector<point_t> support(const Permutation& p);
std::vector<point_t> fixed_points(const Permutation& p);

/// Cycle lengths (including 1-cycles) in order of first point.
std::vector<std::size_t> cycle_lengths(const Permutation& p);

Permutation power(const Permutation& p, const BigInt& exponent);
BigInt element_order(const Permutation& p);

/// For p != 1 of order o, returns p^(o/r) with r the smallest prime dividing o.
/// The result has prime order and fixes every point p fixes.
Permutation reduce_to_prime_order(const Permutation& p);

/// p^-1 q^-1 p q
Permutation commutator(const Permutation& p, const Permutation& q);

/// q^-1 p q
Permutation conjugate(const Permutation& p, const Permutation& q);

}  // namespace primbase
