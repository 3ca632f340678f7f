#pragma once

// Size metrics, per-package metric vectors and precision/recall evaluation.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ooscan/model.hpp"
#include "ooscan/source.hpp"
#include "ooscan/xmlio.hpp"

namespace ooscan {

struct MetricsReport {
  std::string project_name;
  bool loc_available = true;  // false when the model came from a code file
  std::size_t loc = 0;
  std::size_t nop = 0;
  std::size_t noc = 0;
  std::size_t noa = 0;
  std::size_t nom = 0;
  std::size_t noco = 0;
  std::size_t nolv = 0;
  std::size_t noin = 0;
  std::size_t noi = 0;
  std::size_t noac = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct PackageMetrics {
  std::string package_name;
  std::size_t loc = 0;
  std::size_t noc = 0;
  std::size_t noa = 0;
  std::size_t nom = 0;
  std::size_t noco = 0;
  std::size_t nolv = 0;
  std::size_t noin = 0;  // edges whose subclass lives in this package
  std::size_t noi = 0;
  std::size_t noac = 0;

  friend bool operator==(const PackageMetrics&, const PackageMetrics&) = default;
};

/// LOC is the sum of the units' code lines.
MetricsReport compute_metrics(const CodeModel& model, std::span<const SourceUnit> units);
/// Without source units: LOC is 0 and loc_available is false.
MetricsReport compute_metrics(const CodeModel& model);

/// One entry per package, in model order. A unit's lines count toward the
/// package named in its package_name.
std::vector<PackageMetrics> compute_package_metrics(const CodeModel& model,
                                                    std::span<const SourceUnit> units = {});
/// Reference kernel; same result as compute_package_metrics.
std::vector<PackageMetrics> compute_package_metrics_serial(const CodeModel& model,
                                                           std::span<const SourceUnit> units = {});

std::string metrics_file_text(const MetricsReport& report, const WriteOptions& options = {});
std::size_t write_metrics_file(const MetricsReport& report, std::ostream& out,
                               const WriteOptions& options = {});

enum class Category { Packages, Classes, Attributes, Methods, Inheritance, Invocations, Accesses };
inline constexpr std::size_t kCategoryCount = 7;
inline constexpr std::array<Category, kCategoryCount> kCategories = {
    Category::Packages, Category::Classes,     Category::Attributes, Category::Methods,
    Category::Inheritance, Category::Invocations, Category::Accesses};

std::string_view to_string(Category category);

struct Score {
  std::size_t extracted = 0;
  std::size_t golden = 0;
  std::size_t matched = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 1.0;
};

/// Precision/recall/F from counts. Both sides empty scores 1; one side empty
/// scores 0.
Score make_score(std::size_t extracted, std::size_t golden, std::size_t matched);

struct EvaluationReport {
  std::array<Score, kCategoryCount> categories;
  Score micro;

  const Score& operator[](Category c) const { return categories[static_cast<std::size_t>(c)]; }
};

/// Identity keys of every element of a category. Repeated keys get an
/// occurrence suffix so the result is a set.
std::vector<std::string> identity_keys(const CodeModel& model, Category category);

EvaluationReport evaluate(const CodeModel& extracted, const CodeModel& golden);

std::string evaluation_file_text(const EvaluationReport& report, std::string_view project_name,
                                 const WriteOptions& options = {});

}  // namespace ooscan
