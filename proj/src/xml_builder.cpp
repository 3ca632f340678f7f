#include "xml_builder.hpp"

namespace ooscan::detail {

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += "\xEF\xBF\xBD";  // not representable in XML 1.0
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void XmlBuilder::comment(std::string_view text) {
  std::string body(text);
  for (auto pos = body.find("--"); pos != std::string::npos; pos = body.find("--", pos)) {
    body.replace(pos, 2, "- -");
  }
  if (!body.empty() && body.back() == '-') body += ' ';
  out_.append(static_cast<std::size_t>(depth_), '\t');
  out_ += "<!--" + body + "-->\n";
}

void XmlBuilder::start(std::string_view name, XmlAttrs attrs) {
  out_.append(static_cast<std::size_t>(depth_), '\t');
  out_ += '<';
  out_ += name;
  for (const auto& [key, value] : attrs) {
    out_ += ' ';
    out_ += key;
    out_ += "=\"";
    out_ += escape_xml(value);
    out_ += '"';
  }
}

void XmlBuilder::open(std::string_view name, XmlAttrs attrs) {
  start(name, attrs);
  out_ += ">\n";
  ++depth_;
}

void XmlBuilder::leaf(std::string_view name, XmlAttrs attrs) {
  start(name, attrs);
  out_ += spaced_empty_ ? " />\n" : "/>\n";
}

void XmlBuilder::close(std::string_view name) {
  --depth_;
  out_.append(static_cast<std::size_t>(depth_), '\t');
  out_ += "</";
  out_ += name;
  out_ += ">\n";
}

}  // namespace ooscan::detail
