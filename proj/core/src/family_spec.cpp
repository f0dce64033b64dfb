#include "primbase/family_spec.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <utility>
#include <vector>

#include "primbase/error.hpp"

namespace primbase {

namespace {

constexpr std::array<std::pair<Family, const char*>, 20> kNames{{
    {Family::SymSubsets, "SymSubsets"},
    {Family::AltSubsets, "AltSubsets"},
    {Family::SymPartitions, "SymPartitions"},
    {Family::Affine, "Affine"},
    {Family::LinearOnPk, "LinearOnPk"},
    {Family::SpOnSk, "SpOnSk"},
    {Family::SpOnGOCosets, "SpOnGOCosets"},
    {Family::GOOnS1, "GOOnS1"},
    {Family::GOOnN1, "GOOnN1"},
    {Family::OmegaOnS1, "OmegaOnS1"},
    {Family::OmegaOnN1, "OmegaOnN1"},
    {Family::UnitaryOnS1, "UnitaryOnS1"},
    {Family::UnitaryOnN1, "UnitaryOnN1"},
    {Family::WreathProduct, "WreathProduct"},
    {Family::Mathieu24, "Mathieu24"},
    {Family::UnitaryOnSk, "UnitaryOnSk"},
    {Family::OrthogonalOnSk, "OrthogonalOnSk"},
    {Family::LinearOnPairs1, "LinearOnPairs1"},
    {Family::LinearOnPairs2, "LinearOnPairs2"},
    {Family::Triality, "Triality"},
}};

std::optional<int>* int_slot(FamilySpec& s, std::string_view key) {
  if (key.size() != 1) return nullptr;
  switch (key[0]) {
    case 'm': return &s.m;
    case 'k': return &s.k;
    case 'a': return &s.a;
    case 'b': return &s.b;
    case 'd': return &s.d;
    case 'q': return &s.q;
    case 'r': return &s.r;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on whitespace outside parentheses.
std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    const std::size_t start = i;
    int depth = 0;
    for (; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth < 0) throw Error("unbalanced ')' in family spec");
      if (depth == 0 && std::isspace(static_cast<unsigned char>(s[i]))) break;
    }
    if (depth != 0) throw Error("unbalanced '(' in family spec");
    out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string to_string(Family f) {
  for (auto [tag, name] : kNames) {
    if (tag == f) return name;
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (auto [tag, name] : kNames) {
    if (s == name) return tag;
  }
  return std::nullopt;
}

bool is_constructible(Family f) { return static_cast<int>(f) <= static_cast<int>(Family::Mathieu24); }

int FamilySpec::need(char key) const {
  auto* slot = int_slot(const_cast<FamilySpec&>(*this), std::string_view(&key, 1));
  if (!slot || !*slot) {
    throw Error(primbase::to_string(family) + " needs parameter " + std::string(1, key));
  }
  return **slot;
}

std::string FamilySpec::to_string() const {
  std::string out = primbase::to_string(family);
  const std::pair<char, const std::optional<int>*> ints[] = {
      {'m', &m}, {'k', &k}, {'a', &a}, {'b', &b}, {'d', &d}, {'q', &q}, {'r', &r}};
  for (auto [key, v] : ints) {
    if (*v) out += std::string(" ") + key + "=" + std::to_string(**v);
  }
  if (sign != gf::Sign::None) out += " sign=" + gf::to_string(sign);
  if (cls != gf::PointClass::Any) out += " cls=" + gf::to_string(cls);
  if (group != AffinePart::Full) out += " group=sl";
  if (inner) out += " inner=(" + inner->to_string() + ")";
  return out;
}

bool operator==(const FamilySpec& x, const FamilySpec& y) {
  if (x.family != y.family || x.m != y.m || x.k != y.k || x.a != y.a || x.b != y.b ||
      x.d != y.d || x.q != y.q || x.r != y.r || x.sign != y.sign || x.cls != y.cls ||
      x.group != y.group) {
    return false;
  }
  if (!x.inner || !y.inner) return !x.inner && !y.inner;
  return *x.inner == *y.inner;
}

FamilySpec parse_family_spec(std::string_view text) {
  const auto toks = tokens(trim(text));
  if (toks.empty()) throw Error("empty family spec");
  FamilySpec s;
  const auto fam = parse_family(toks[0]);
  if (!fam) throw Error("unknown family '" + std::string(toks[0]) + "'");
  s.family = *fam;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto tok = toks[i];
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error("expected key=value, got '" + std::string(tok) + "'");
    }
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (auto* slot = int_slot(s, key)) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || ptr != val.data() + val.size()) {
        throw Error("bad integer for " + std::string(key) + ": '" + std::string(val) + "'");
      }
      *slot = v;
    } else if (key == "sign") {
      s.sign = gf::parse_sign(std::string(val));
    } else if (key == "cls") {
      s.cls = gf::parse_point_class(std::string(val));
    } else if (key == "group") {
      if (val == "full") {
        s.group = AffinePart::Full;
      } else if (val == "sl") {
        s.group = AffinePart::Special;
      } else {
        throw Error("group must be full or sl");
      }
    } else if (key == "inner") {
      if (val.size() < 2 || val.front() != '(' || val.back() != ')') {
        throw Error("inner spec must be parenthesised");
      }
      s.inner = std::make_shared<const FamilySpec>(parse_family_spec(val.substr(1, val.size() - 2)));
    } else {
      throw Error("unknown key '" + std::string(key) + "'");
    }
  }
  return s;
}

}  // namespace primbase
