#include "sumprod/subset_spec.hpp"

#include <charconv>
#include <string>

#include "sumprod/errors.hpp"
#include "sumprod/random.hpp"

namespace sumprod {

namespace {

std::uint64_t parse_number(std::string_view text, std::string_view whole) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("malformed subset spec: '" + std::string(whole) + "'");
  }
  return value;
}

Index checked_index(std::uint64_t value, std::size_t universe, std::string_view whole) {
  if (value >= universe) {
    throw ParseError("index " + std::to_string(value) + " out of range in subset spec '" + std::string(whole) + "'");
  }
  return static_cast<Index>(value);
}

}  // namespace

IndexSet parse_index_set(std::string_view spec, std::size_t universe, const FiniteField* field) {
  const std::string_view whole = spec;
  if (spec == "all") return IndexSet::full(universe);
  if (spec == "none" || spec == "empty" || spec.empty()) return IndexSet(universe);
  if (spec == "qr") {
    if (field == nullptr || field->order() != universe) throw ParseError("'qr' needs a field universe");
    const auto residues = field->quadratic_residues();
    return IndexSet::from_indices(universe, residues);
  }
  if (spec.substr(0, 9) == "interval:") {
    const std::string_view body = spec.substr(9);
    const auto dots = body.find("..");
    if (dots == std::string_view::npos) throw ParseError("malformed subset spec: '" + std::string(whole) + "'");
    const auto lo = checked_index(parse_number(body.substr(0, dots), whole), universe, whole);
    const auto hi = checked_index(parse_number(body.substr(dots + 2), whole), universe, whole);
    IndexSet out(universe);
    for (Index i = lo; i <= hi; ++i) out.insert(i);
    return out;
  }
  if (spec.substr(0, 7) == "random:") {
    const std::string_view body = spec.substr(7);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError("malformed subset spec: '" + std::string(whole) + "'");
    const auto k = parse_number(body.substr(0, colon), whole);
    const auto seed = parse_number(body.substr(colon + 1), whole);
    if (k > universe) throw ParseError("random subset larger than the universe: '" + std::string(whole) + "'");
    Rng rng(seed);
    const auto picks = rng.sample(static_cast<std::uint32_t>(universe), static_cast<std::uint32_t>(k));
    return IndexSet::from_indices(universe, picks);
  }
  IndexSet out(universe);
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    out.insert(checked_index(parse_number(spec.substr(0, comma), whole), universe, whole));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return out;
}

Subset parse_subset(const FiniteField& field, std::string_view spec) {
  return Subset(field, parse_index_set(spec, field.order(), &field));
}

}  // namespace sumprod
