#pragma once

// Navigation-axis label alphabet shared by grammars, nre and the axis graph.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cfpq {

/// `Nest` is not a navigation axis: it tags synthetic labels that compiled
/// nre plans attach to materialized nesting relations.
enum class Axis : std::uint8_t { Self, Next, Edge, Node, Nest };

std::string_view axis_name(Axis axis);
std::optional<Axis> parse_axis_name(std::string_view name);

/// A textual axis label: `next`, `next-1`, `edge::IRI`, `self::IRI`, ...
/// An empty qualifier means the bare axis. Qualifiers name constants by
/// their stored lexical form, so the label resolves against any graph.
struct AxisLabel {
  Axis axis = Axis::Self;
  bool inverse = false;
  std::string qualifier;

  bool qualified() const { return !qualifier.empty(); }

  auto operator<=>(const AxisLabel&) const = default;
};

/// Renders as in the grammar file format; IRIs containing characters that
/// would end a token are wrapped in angle brackets.
std::string to_string(const AxisLabel& label);

/// Parses one axis token (`next-1::IRI`, `self`, ...). Angle brackets around
/// the qualifier are stripped. Returns nullopt for anything else, including
/// the reserved `nest` axis.
std::optional<AxisLabel> parse_axis_label(std::string_view token);

/// The synthetic label used for the k-th materialized nesting.
AxisLabel nest_label(std::uint32_t k);

}  // namespace cfpq
