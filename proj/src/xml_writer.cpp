#include <fstream>
#include <ostream>
#include <string>

#include "ooscan/xmlio.hpp"
#include "xml_builder.hpp"

namespace ooscan {

namespace {

using detail::XmlBuilder;

std::string_view flag(bool b) { return b ? "true" : "false"; }

void write_method(XmlBuilder& x, const MethodDecl& m) {
  x.open("Method", {{"Name", m.name},
                    {"AccessLevel", to_string(m.access)},
                    {"ReturnType", m.return_type},
                    {"isStatic", flag(m.is_static)}});
  const auto count = std::to_string(m.parameters.size());
  if (m.parameters.empty()) {
    x.leaf("Parameters", {{"NumberOfParameters", count}});
  } else {
    x.open("Parameters", {{"NumberOfParameters", count}});
    for (const auto& p : m.parameters) x.leaf("Parameter", {{"Name", p.name}, {"Type", p.type}});
    x.close("Parameters");
  }

  auto section = [&x](std::string_view name, const auto& items, auto&& emit) {
    if (items.empty()) {
      x.leaf(name);
      return;
    }
    x.open(name);
    for (const auto& item : items) emit(item);
    x.close(name);
  };
  section("Comments", m.comments,
          [&](const std::string& c) { x.leaf("Comment", {{"CommentText", c}}); });
  section("LocalVariables", m.local_variables, [&](const LocalVariable& v) {
    x.leaf("LocalVariable", {{"Name", v.name}, {"Type", v.type}});
  });
  section("AttributeAccesses", m.accesses, [&](const AccessRecord& a) {
    x.leaf("Access", {{"Name", a.name}, {"Type", a.type}, {"HowIsItUsed", a.how_used}});
  });
  section("MethodInvocations", m.invocations, [&](const InvocationRecord& i) {
    x.leaf("MethodInvocation", {{"Name", i.name}, {"Arguments", i.arguments}});
  });
  section("MethodAssignments", m.assignments, [&](const AssignmentRecord& a) {
    x.leaf("Assignment", {{"LeftHandSide", a.lhs}, {"RightHandSide", a.rhs}});
  });
  section("MethodExceptions", m.exceptions,
          [&](const std::string& e) { x.leaf("Exception", {{"ExceptionType", e}}); });
  x.close("Method");
}

void write_class(XmlBuilder& x, const ClassDecl& c) {
  x.open("Class", {{"Name", c.name},
                   {"AccessLevel", to_string(c.access)},
                   {"isInterface", flag(c.is_interface)},
                   {"Superclass", c.superclass}});
  auto section = [&x](std::string_view name, const auto& items, auto&& emit) {
    if (items.empty()) {
      x.leaf(name);
      return;
    }
    x.open(name);
    for (const auto& item : items) emit(item);
    x.close(name);
  };
  section("SuperInterfaces", c.super_interfaces,
          [&](const std::string& i) { x.leaf("Interface", {{"InterfaceName", i}}); });
  section("Comments", c.comments,
          [&](const std::string& t) { x.leaf("Comment", {{"CommentText", t}}); });
  section("Attributes", c.attributes, [&](const AttributeDecl& a) {
    x.leaf("Attribute", {{"Name", a.name},
                         {"AccessLevel", to_string(a.access)},
                         {"Type", a.type},
                         {"isStatic", flag(a.is_static)}});
  });
  section("Methods", c.methods, [&](const MethodDecl& m) { write_method(x, m); });
  x.close("Class");
}

}  // namespace

std::string code_file_text(const CodeModel& model, const WriteOptions& options) {
  XmlBuilder x(false);
  x.comment(options.attribution);
  x.open("Project", {{"Name", model.project_name}});
  if (model.packages.empty()) {
    x.leaf("Packages");
  } else {
    x.open("Packages");
    for (const auto& pkg : model.packages) {
      x.open("Package", {{"Name", pkg.name}});
      if (pkg.classes.empty()) {
        x.leaf("Classes");
      } else {
        x.open("Classes");
        for (const auto& c : pkg.classes) write_class(x, c);
        x.close("Classes");
      }
      x.close("Package");
    }
    x.close("Packages");
  }
  x.close("Project");
  return x.take();
}

std::size_t write_all(std::ostream& out, std::string_view bytes) {
  constexpr std::size_t kChunk = 1 << 16;
  std::size_t written = 0;
  while (written < bytes.size()) {
    const auto n = std::min(kChunk, bytes.size() - written);
    out.write(bytes.data() + written, static_cast<std::streamsize>(n));
    if (!out) throw WriteError("write failed after " + std::to_string(written) + " bytes", written);
    written += n;
  }
  out.flush();
  if (!out) throw WriteError("flush failed after " + std::to_string(written) + " bytes", written);
  return written;
}

std::size_t write_code_file(const CodeModel& model, std::ostream& out,
                            const WriteOptions& options) {
  return write_all(out, code_file_text(model, options));
}

std::size_t write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  try {
    return write_all(out, bytes);
  } catch (const WriteError& e) {
    throw WriteError(path.string() + ": " + e.what(), e.bytes_written());
  }
}

}  // namespace ooscan
