#include "primbase/permutation.hpp"

#include <numeric>
#include <sstream>

#include "primbase/error.hpp"

namespace primbase {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), point_t{0});
}

Permutation::Permutation(std::vector<point_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (point_t x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error("not a permutation: " + to_string());
    }
    seen[x] = true;
  }
}

Permutation::Permutation(std::initializer_list<point_t> images)
    : Permutation(std::vector<point_t>(images)) {}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<point_t>>& cycles) {
  std::vector<point_t> img(degree);
  std::iota(img.begin(), img.end(), point_t{0});
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= degree || used[c[i]]) throw Error("invalid cycle list");
      used[c[i]] = true;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(Unchecked{}, std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::size_t Permutation::fixed_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) n += (images_[i] == i);
  return n;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i];
  }
  os << ']';
  return os.str();
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (point_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    point_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ',';
      os << j;
      first = false;
      j = images_[j];
    }
    os << ')';
  }
  auto s = os.str();
  return s.empty() ? "()" : s;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DegreeMismatch("compose: degree " + std::to_string(p.degree()) + " vs " +
                         std::to_string(q.degree()));
  }
  std::vector<point_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q.images_[p.images_[i]];
  return Permutation(Permutation::Unchecked{}, std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<point_t> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[p.images_[i]] = static_cast<point_t>(i);
  return Permutation(Permutation::Unchecked{}, std::move(img));
}

std::vector<point_t> support(const Permutation& p) {
  std::vector<point_t> out;
  for (point_t i = 0; i < p.degree(); ++i) {
    if (p(i) != i) out.push_back(i);
  }
  return out;
}

std::vector<point_t> fixed_points(const Permutation& p) {
  std::vector<point_t> out;
  for (point_t i = 0; i < p.degree(); ++i) {
    if (p(i) == i) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> cycle_lengths(const Permutation& p) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(p.degree(), false);
  for (point_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (point_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

Permutation power(const Permutation& p, const BigInt& exponent) {
  const std::size_t n = p.degree();
  std::vector<point_t> img(n);
  std::vector<bool> seen(n, false);
  std::vector<point_t> cyc;
  for (point_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    cyc.clear();
    for (point_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      cyc.push_back(j);
    }
    const BigInt len = cyc.size();
    BigInt r = exponent % len;
    if (r < 0) r += len;
    const auto shift = static_cast<std::size_t>(r);
    for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + shift) % cyc.size()];
  }
  return Permutation(Permutation::Unchecked{}, std::move(img));
}

BigInt element_order(const Permutation& p) {
  BigInt o = 1;
  for (std::size_t len : cycle_lengths(p)) {
    const BigInt l = len;
    o = o / boost::multiprecision::gcd(o, l) * l;
  }
  return o;
}

Permutation reduce_to_prime_order(const Permutation& p) {
  if (p.is_identity()) return p;
  std::size_t smallest_prime = 0;
  for (std::size_t len : cycle_lengths(p)) {
    if (len == 1) continue;
    std::size_t x = len;
    for (std::size_t d = 2; d * d <= x; ++d) {
      if (x % d == 0) {
        x = d;
        break;
      }
    }
    if (smallest_prime == 0 || x < smallest_prime) smallest_prime = x;
  }
  return power(p, element_order(p) / smallest_prime);
}

Permutation commutator(const Permutation& p, const Permutation& q) {
  return compose(compose(inverse(p), inverse(q)), compose(p, q));
}

Permutation conjugate(const Permutation& p, const Permutation& q) {
  return compose(compose(inverse(q), p), q);
}

}  // namespace primbase
