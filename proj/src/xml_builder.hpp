#pragma once

// Small indented XML emitter shared by the code-file, metrics and
// evaluation writers. Tabs, LF, one level per depth.

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace ooscan::detail {

using XmlAttrs = std::initializer_list<std::pair<std::string_view, std::string_view>>;

std::string escape_xml(std::string_view text);

class XmlBuilder {
 public:
  /// `spaced_empty` renders empty elements as `<X />` instead of `<X/>`.
  explicit XmlBuilder(bool spaced_empty) : spaced_empty_(spaced_empty) {}

  void comment(std::string_view text);
  void open(std::string_view name, XmlAttrs attrs = {});
  void leaf(std::string_view name, XmlAttrs attrs = {});
  void close(std::string_view name);

  std::string take() { return std::move(out_); }

 private:
  void start(std::string_view name, XmlAttrs attrs);

  bool spaced_empty_;
  int depth_ = 0;
  std::string out_;
};

}  // namespace ooscan::detail
