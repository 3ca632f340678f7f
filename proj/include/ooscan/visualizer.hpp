#pragma once

// Graphviz documents for the organization, inheritance, invocation and
// polymetric views; SVG plus a CSV table for the identifier tag cloud.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ooscan/analyzer.hpp"
#include "ooscan/model.hpp"

namespace ooscan {

enum class VisualKind { Organization, Inheritance, Invocation, Polymetric, TagCloud };

/// Fixed workspace file name of a view.
std::string_view file_name(VisualKind kind);

struct GraphDoc {
  VisualKind kind = VisualKind::Organization;
  std::string body;
};

GraphDoc emit_organization(const CodeModel& model);

/// Extends edges are solid, implements edges dashed. Supertypes that are not
/// classes of the model become external nodes.
GraphDoc emit_inheritance(const CodeModel& model);

/// Nodes are "Class.method" (overloads share a node). Calls are matched by
/// name: a unique match gives a direct edge, no match goes to an external
/// node per callee name, several matches go through one ambiguity node per
/// callee name with dotted edges to every candidate. Edge labels carry call
/// counts and add up to the number of invocation records.
GraphDoc emit_invocation(const CodeModel& model);

inline constexpr double kPolymetricWidthPerClass = 0.75;
inline constexpr double kPolymetricHeightPerMethod = 0.25;

/// width = max(1, 0.75 * NOC), height = max(1, 0.25 * NOM), in inches.
GraphDoc emit_polymetric(std::span<const PackageMetrics> packages);

enum class TagCategory { Package, Class, Attribute, Method };
std::string_view to_string(TagCategory category);

struct TagEntry {
  std::string tag;
  std::size_t frequency = 0;
  TagCategory category = TagCategory::Package;

  friend bool operator==(const TagEntry&, const TagEntry&) = default;
};

/// One entry per (simple name, category): declarations of that name in that
/// category plus the number of access and invocation records using the name.
/// Sorted by descending frequency, then tag, then category.
std::vector<TagEntry> tag_entries(const CodeModel& model);

struct TagCloudOptions {
  double min_font = 10.0;
  double max_font = 40.0;
  double width = 800.0;
};

struct TagCloud {
  GraphDoc doc;
  std::vector<TagEntry> entries;
};

TagCloud emit_tagcloud(const CodeModel& model, const TagCloudOptions& options = {});

/// "tag,frequency,category" table.
std::string tagcloud_csv(std::span<const TagEntry> entries);

}  // namespace ooscan
