#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "helpers.hpp"
#include "ooscan/parser.hpp"

using namespace ooscan;
using namespace ooscan::testing;

TEST_CASE("BaseThread unit yields the reference records") {
  const auto u = parse_text(slurp(fixture("mobilephoto/ubc/midp/mobilephoto/core/threads/BaseThread.java")));
  CHECK(u.diagnostics.empty());
  REQUIRE(u.fragment.packages.size() == 1);
  CHECK(u.fragment.packages[0].name == "ubc.midp.mobilephoto.core.threads");
  const auto& c = only_class(u);
  CHECK(c.name == "BaseThread");
  CHECK(c.access == AccessLevel::Public);
  CHECK(c.superclass == "Object");
  CHECK(c.comments == std::vector<std::string>{"Start the thread running"});
  REQUIRE(c.methods.size() == 2);
  CHECK(c.methods[0].name == "BaseThread");
  CHECK(c.methods[0].return_type == "void");
  CHECK(c.methods[0].invocations ==
        std::vector<InvocationRecord>{{"println", "[BaseThread:: 0 Param Constructor used ... ]"}});
  CHECK(c.methods[1].invocations ==
        std::vector<InvocationRecord>{{"println", "[Starting BaseThread::run()]"}});
  CHECK(c.methods[1].accesses.empty());
}

TEST_CASE("package handling") {
  SUBCASE("no package declaration") {
    const auto u = parse_text("class A {}");
    REQUIRE(u.fragment.packages.size() == 1);
    CHECK(u.fragment.packages[0].name == "default");
  }
  SUBCASE("package-info only") {
    const auto u = parse_text("/** docs */\npackage a.b;\n");
    REQUIRE(u.fragment.packages.size() == 1);
    CHECK(u.fragment.packages[0].classes.empty());
    CHECK(u.dropped_comments == 1);
  }
  SUBCASE("neither package nor classes") {
    CHECK(parse_text("import java.util.List;\n").fragment.packages.empty());
  }
}

TEST_CASE("class header and member defaults") {
  const auto u = parse_text(R"(package p;
public abstract class Box<T extends Comparable<T>> extends Base<T> implements Runnable, java.io.Serializable {
  int a, b[];
  private static final java.util.Map<String, java.util.List<Integer>> cache = null;
  protected Box(T... items) {}
  T get() { return null; }
  public static <R> R convert(Object o, int[][] grid) { return null; }
  abstract void draw();
})");
  CHECK(u.diagnostics.empty());
  const auto& c = only_class(u);
  CHECK(c.superclass == "Base<T>");
  CHECK(c.super_interfaces == std::vector<std::string>{"Runnable", "java.io.Serializable"});
  REQUIRE(c.attributes.size() == 3);
  CHECK(c.attributes[0] == AttributeDecl{"a", AccessLevel::Default, "int", false});
  CHECK(c.attributes[1] == AttributeDecl{"b", AccessLevel::Default, "int[]", false});
  CHECK(c.attributes[2] == AttributeDecl{"cache", AccessLevel::Private,
                                         "java.util.Map<String, java.util.List<Integer>>", true});
  REQUIRE(c.methods.size() == 4);
  CHECK(c.methods[0].signature() == "Box(T...)");
  CHECK(c.methods[0].access == AccessLevel::Protected);
  CHECK(c.methods[0].return_type == "void");
  CHECK(c.methods[1].return_type == "T");
  CHECK(c.methods[2].signature() == "convert(Object,int[][])");
  CHECK(c.methods[2].is_static);
  CHECK(c.methods[3].name == "draw");
}

TEST_CASE("interfaces, enums, records and annotation types") {
  SUBCASE("interface") {
    const auto u = parse_text(
        "package p; interface Shape extends Scalable, Cloneable { int SIDES = 3; void draw(); "
        "default int area() { return 0; } }");
    const auto& c = only_class(u);
    CHECK(c.is_interface);
    CHECK(c.superclass == "Object");
    CHECK(c.super_interfaces == std::vector<std::string>{"Scalable", "Cloneable"});
    CHECK(c.attributes[0] == AttributeDecl{"SIDES", AccessLevel::Public, "int", true});
    CHECK(c.methods[0].access == AccessLevel::Public);
    CHECK(c.methods[1].name == "area");
  }
  SUBCASE("enum") {
    const auto u = parse_text(
        "package p; public enum Color { RED(1), GREEN(2) { int f() { return 0; } }; "
        "private final int code; Color(int c) { code = c; } }");
    CHECK(u.diagnostics.empty());
    const auto& c = only_class(u);
    REQUIRE(c.attributes.size() == 3);
    CHECK(c.attributes[0] == AttributeDecl{"RED", AccessLevel::Public, "Color", true});
    CHECK(c.attributes[1] == AttributeDecl{"GREEN", AccessLevel::Public, "Color", true});
    CHECK(c.attributes[2].name == "code");
    REQUIRE(c.methods.size() == 1);
    CHECK(c.methods[0].accesses.size() == 2);  // code, c
  }
  SUBCASE("record") {
    const auto u = parse_text(
        "package p; public record Point(int x, int y) implements Cmp { Point { if (x < 0) throw "
        "new IllegalArgumentException(); } int sum() { return x + y; } }");
    CHECK(u.diagnostics.empty());
    const auto& c = only_class(u);
    CHECK(c.attributes == std::vector<AttributeDecl>{{"x", AccessLevel::Private, "int", false},
                                                     {"y", AccessLevel::Private, "int", false}});
    CHECK(c.super_interfaces == std::vector<std::string>{"Cmp"});
    REQUIRE(c.methods.size() == 2);
    CHECK(c.methods[0].signature() == "Point(int,int)");
    CHECK(c.methods[1].accesses.size() == 2);
  }
  SUBCASE("annotation type") {
    const auto u = parse_text("package p; public @interface Tag { String value() default \"\"; }");
    CHECK(u.diagnostics.empty());
    const auto& c = only_class(u);
    CHECK(c.is_interface);
    CHECK(c.methods[0].name == "value");
  }
}

TEST_CASE("nested classes follow their outer class") {
  const auto u = parse_text(
      "package p; class A { class B { class C {} } static class D {} void f() {} } class E {}");
  std::vector<std::string> names;
  for (const auto& c : u.fragment.packages[0].classes) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"A", "A.B", "A.B.C", "A.D", "E"});
}

TEST_CASE("anonymous and local classes feed the enclosing method") {
  const auto u = parse_text(R"(package p;
class A {
  int hits;
  void f() {
    Runnable r = new Runnable() {
      int local = 1;
      public void run() { int n = 2; hits = n; }
    };
    class Helper { void g() { hits++; } }
  }
})");
  CHECK(u.diagnostics.empty());
  REQUIRE(u.fragment.packages[0].classes.size() == 1);
  const auto& f = only_class(u).methods.at(0);
  CHECK(f.local_variables == std::vector<LocalVariable>{{"r", "Runnable"}, {"n", "int"}});
  CHECK(f.invocations == std::vector<InvocationRecord>{{"Runnable", "[]"}});
  CHECK(f.assignments == std::vector<AssignmentRecord>{{"hits", "n"}});
  REQUIRE(f.accesses.size() == 3);
  CHECK(f.accesses[0] == AccessRecord{"hits", "int", "hits = n"});
  CHECK(f.accesses[1] == AccessRecord{"n", "int", "hits = n"});
  CHECK(f.accesses[2] == AccessRecord{"hits", "int", "hits++"});
}

TEST_CASE("initializer blocks merge into one method") {
  SUBCASE("all static") {
    const auto u = parse_text("class A { static int x; static { x = 1; } static { x = 2; } }");
    const auto& c = only_class(u);
    REQUIRE(c.methods.size() == 1);
    CHECK(c.methods[0].name == "<init-block>");
    CHECK(c.methods[0].is_static);
    CHECK(c.methods[0].assignments.size() == 2);
  }
  SUBCASE("mixed") {
    const auto u = parse_text("class A { int y; { y = 1; } static { } void f() {} }");
    const auto& c = only_class(u);
    REQUIRE(c.methods.size() == 2);
    CHECK(c.methods[0].name == "<init-block>");
    CHECK_FALSE(c.methods[0].is_static);
  }
}

TEST_CASE("invocation naming") {
  const auto u = parse_text(R"(package p;
class Child extends q.Parent {
  Child() { this(1); }
  Child(int a) { super(a); }
  void f(java.util.List<String> xs) {
    super.f(xs);
    xs.forEach(System.out::println);
    Collections.<String>emptyList();
    new java.util.ArrayList<String>(4).add("z");
    Outer.this.g();
  }
})");
  CHECK(u.diagnostics.empty());
  const auto& c = only_class(u);
  CHECK(c.methods[0].invocations == std::vector<InvocationRecord>{{"Child", "[1]"}});
  CHECK(c.methods[1].invocations == std::vector<InvocationRecord>{{"Parent", "[a]"}});
  const std::vector<InvocationRecord> expected = {{"f", "[xs]"},
                                                  {"forEach", "[System.out::println]"},
                                                  {"emptyList", "[]"},
                                                  {"ArrayList", "[4]"},
                                                  {"add", "[z]"},
                                                  {"g", "[]"}};
  CHECK(c.methods[2].invocations == expected);
}

TEST_CASE("super() without an explicit superclass names Object") {
  const auto u = parse_text("class A { A() { super(); } }");
  CHECK(only_class(u).methods[0].invocations == std::vector<InvocationRecord>{{"Object", "[]"}});
}

TEST_CASE("arguments keep source spacing and strip string delimiters") {
  const auto u = parse_text(
      "class A { void f() { g(a,b ,  c/*x*/+1, \"s, t\", 'q', \"\"\"\n  block\"\"\"); } }");
  CHECK(only_class(u).methods[0].invocations[0].arguments == "[a,b , c +1, s, t, 'q', \n  block]");
}

TEST_CASE("assignments") {
  const auto u = parse_text(
      "class A { int x; int[] a; void f() { x = 1; x += 2; a[0] <<= x; x++; --x; int y = x = 3; "
      "String s = \"q\"; s = \"r\"; } }");
  const std::vector<AssignmentRecord> expected = {
      {"x", "1"}, {"x", "+= 2"}, {"a[0]", "<<= x"}, {"x", "3"}, {"s", "\"r\""}};
  CHECK(only_class(u).methods[0].assignments == expected);
}

TEST_CASE("local variables") {
  const auto u = parse_text(R"(class A {
  void f(java.util.List<String> xs) throws java.io.IOException {
    int a = 0, b;
    for (int i = 0, j = 1; i < j; i++) {}
    for (final String s : xs) {}
    try (var in = open(); java.io.Reader r = in) {
    } catch (IllegalStateException | java.io.IOException e) {
      log(e);
    }
    xs.forEach(x -> use(x));
    if (xs instanceof java.util.ArrayList<String> al) { al.clear(); }
  }
})");
  CHECK(u.diagnostics.empty());
  const auto& f = only_class(u).methods[0];
  const std::vector<LocalVariable> expected = {{"a", "int"},     {"b", "int"},  {"i", "int"},
                                               {"j", "int"},     {"s", "String"}, {"in", "var"},
                                               {"r", "java.io.Reader"}};
  CHECK(f.local_variables == expected);
  CHECK(f.exceptions == std::vector<std::string>{"java.io.IOException"});
  auto type_of = [&](const std::string& name) {
    for (const auto& a : f.accesses) {
      if (a.name == name) return a.type;
    }
    return std::string("<none>");
  };
  CHECK(type_of("e") == "IllegalStateException | java.io.IOException");
  CHECK(type_of("x") == "unknown");
  CHECK(type_of("al") == "java.util.ArrayList<String>");
}

TEST_CASE("access records: what counts and how it is used") {
  const auto u = parse_text(R"(package p;
class A {
  int size;
  static final int MAX = 3;
  void f(int n) {
    if (n > size) { return; }
    while (n < MAX) n++;
    switch (n) { case MAX: size = n; break; default: }
    synchronized (this) { this.size = other.size; }
    Math.max(n, unknownName);
  }
})");
  const auto& f = only_class(u).methods[0];
  const std::vector<AccessRecord> expected = {
      {"n", "int", "n > size"},
      {"size", "int", "n > size"},
      {"n", "int", "n < MAX"},
      {"MAX", "int", "n < MAX"},
      {"n", "int", "n++"},
      {"n", "int", "n"},
      {"MAX", "int", "MAX"},
      {"size", "int", "size = n"},
      {"n", "int", "size = n"},
      {"size", "int", "this.size = other.size"},
      {"size", "int", "this.size = other.size"},
      {"n", "int", "Math.max(n, unknownName)"},
  };
  CHECK(f.accesses == expected);
}

TEST_CASE("locals shadow fields and scopes end with their block") {
  const auto u = parse_text(
      "class A { String v; void f() { { int v = 1; use(v); } use(v); } }");
  const auto& acc = only_class(u).methods[0].accesses;
  REQUIRE(acc.size() == 2);
  CHECK(acc[0].type == "int");
  CHECK(acc[1].type == "String");
}

TEST_CASE("fields of other classes in the same file are recognized") {
  const auto u = parse_text("class A { void f() { B.count++; } } class B { static int count; }");
  CHECK(u.fragment.packages[0].classes[0].methods[0].accesses ==
        std::vector<AccessRecord>{{"count", "int", "B.count++"}});
}

TEST_CASE("comment attachment") {
  const auto u = parse_text(R"(// file header
package p;
/** The class. */
class A {
  // about the field
  int x;
  /** About f. */
  void f() {
    // inside f
  }
  /* trailing */
}
// after everything
)");
  const auto& c = only_class(u);
  CHECK(c.comments == std::vector<std::string>{"file header", "The class.", "trailing"});
  CHECK(c.methods[0].comments ==
        std::vector<std::string>{"about the field", "About f.", "inside f"});
  CHECK(u.dropped_comments == 1);
}

TEST_CASE("comments before annotations attach to the annotated method") {
  const auto u = parse_text("class A { void g() {} /** doc */ @Override public String toString() { return \"\"; } }");
  CHECK(only_class(u).methods[1].comments == std::vector<std::string>{"doc"});
}

TEST_CASE("syntax errors skip the member, lexical errors skip the file") {
  const auto u = parse_text("package p; class A { int ok; void broken(int) { } void fine() { x(); } }",
                            "p/A.java");
  REQUIRE_FALSE(u.diagnostics.empty());
  CHECK(u.diagnostics[0].severity == Severity::Error);
  CHECK(u.diagnostics[0].file_path == "p/A.java");
  CHECK_FALSE(u.skipped);
  const auto& c = only_class(u);
  CHECK(c.attributes.size() == 1);
  REQUIRE(c.methods.size() == 1);
  CHECK(c.methods[0].name == "fine");

  const auto bad = parse_text("package p; class A { String s = \"unterminated; }");
  CHECK(bad.skipped);
  CHECK(bad.fragment.packages.empty());
  CHECK_FALSE(bad.diagnostics.empty());
}

TEST_CASE("broken statement inside a body keeps the rest of the class") {
  const auto u = parse_text("class A { void f() { int = ; } void g() {} }");
  CHECK_FALSE(u.diagnostics.empty());
  REQUIRE(only_class(u).methods.size() == 1);
  CHECK(only_class(u).methods[0].name == "g");
}

TEST_CASE("duplicates are dropped with warnings") {
  const auto u = parse_text("class A { int x; int x; void f() {} void f() {} } class A {}");
  const auto& pkg = u.fragment.packages[0];
  CHECK(pkg.classes.size() == 1);
  CHECK(pkg.classes[0].attributes.size() == 1);
  CHECK(pkg.classes[0].methods.size() == 1);
  CHECK(u.diagnostics.size() == 3);
  for (const auto& d : u.diagnostics) CHECK(d.severity == Severity::Warning);
}

TEST_CASE("modern syntax parses without diagnostics") {
  const auto u = parse_text(R"(package p;
sealed interface S permits A, B {}
final class A implements S {}
non-sealed class B implements S {
  int k(Object o) {
    var r = switch (o) {
      case Integer i when i > 0 -> i;
      case String s -> { yield s.length(); }
      case Pair(Integer a, var b) when a > 0 -> a;
      default -> 0;
    };
    int[] arr = new int[] {1, 2};
    int[][] grid = new int[3][];
    Runnable q = () -> {};
    java.util.function.BiFunction<Integer, Integer, Integer> add = (Integer a, Integer b) -> a + b;
    label: for (;;) { break label; }
    do { r--; } while (r > 0);
    assert r == 0 : "bad";
    return (int) (long) r + arr.length + (grid != null ? 1 : 0);
  }
})");
  for (const auto& d : u.diagnostics) MESSAGE(d.format());
  CHECK(u.diagnostics.empty());
  CHECK(u.fragment.packages[0].classes.size() == 3);
}

TEST_CASE("generic casts and comparisons are told apart") {
  const auto u = parse_text(
      "class A { int a, b, c; void f() { boolean t = a < b && b > c; java.util.List<String> l = "
      "(java.util.List<String>) o; int shifted = a >> 2; } }");
  CHECK(u.diagnostics.empty());
  CHECK(only_class(u).methods[0].local_variables.size() == 3);
}

TEST_CASE("parse_project walks, filters and sorts") {
  const auto dir = make_temp_dir("ooscan-parse");
  std::filesystem::create_directories(dir / "b");
  std::filesystem::create_directories(dir / "a");
  std::ofstream(dir / "b" / "Z.java") << "package b; class Z {}";
  std::ofstream(dir / "a" / "Y.java") << "package a; class Y {}";
  std::ofstream(dir / "a" / "X.JAVA.txt") << "package a; class Ignored {}";
  std::ofstream(dir / "module-info.java") << "module m { requires java.base; }";
  std::ofstream(dir / "a" / "Bad.java") << "package a; class Bad { \"";
  const auto r = parse_project(dir, "Proj");
  REQUIRE(r.units.size() == 3);
  CHECK(r.units[0].file_path == "a/Bad.java");
  CHECK(r.units[0].package_name.empty());
  CHECK(r.units[1].file_path == "a/Y.java");
  CHECK(r.units[2].package_name == "b");
  REQUIRE(r.model.packages.size() == 2);
  CHECK(r.model.project_name == "Proj");
  CHECK(r.model.packages[0].classes.size() == 1);
  CHECK_FALSE(r.diagnostics.empty());

  ParseOptions txt;
  txt.extensions = {".txt"};
  CHECK(parse_project(dir, "Proj", txt).model.packages.at(0).classes.at(0).name == "Ignored");
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(parse_project(dir / "missing", "X"), IoError);
}

TEST_CASE("classes repeated across files are dropped at merge") {
  const auto dir = make_temp_dir("ooscan-dup");
  std::ofstream(dir / "A.java") << "package p; class Same {}";
  std::ofstream(dir / "B.java") << "package p; class Same { int x; }";
  const auto r = parse_project(dir, "D");
  REQUIRE(r.model.packages.size() == 1);
  CHECK(r.model.packages[0].classes.size() == 1);
  CHECK(r.model.packages[0].classes[0].attributes.empty());
  CHECK(r.diagnostics.size() == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel kernel matches the serial reference") {
  SyntheticOptions o;
  o.classes = 60;
  o.packages = 7;
  o.methods_per_class = 3;
  const auto units = synthetic_units(o);
  const auto serial = parse_units_serial(units);
  const auto parallel = parse_units_parallel(units);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].fragment == parallel[i].fragment);
    CHECK(serial[i].diagnostics.size() == parallel[i].diagnostics.size());
  }
}

TEST_CASE("synthetic units parse cleanly") {
  SyntheticOptions o;
  o.classes = 20;
  for (const auto& u : parse_units_serial(synthetic_units(o))) {
    for (const auto& d : u.diagnostics) MESSAGE(d.format());
    CHECK(u.diagnostics.empty());
  }
}

TEST_CASE("MiniShapes parse: every record's how-used text comes from its file") {
  const auto r = parse_project(fixture("minishapes"), "MiniShapes");
  CHECK(r.diagnostics.empty());
  CHECK(validate(r.model).empty());
  for (const auto& pkg : r.model.packages) {
    for (const auto& cls : pkg.classes) {
      for (const auto& m : cls.methods) {
        for (const auto& a : m.accesses) {
          bool found = false;
          for (const auto& u : r.units) {
            if (u.package_name != pkg.name) continue;
            std::string collapsed;
            for (const char ch : u.content) {
              const bool space = ch == ' ' || ch == '\n' || ch == '\t';
              if (space && (collapsed.empty() || collapsed.back() == ' ')) continue;
              collapsed += space ? ' ' : ch;
            }
            found = found || collapsed.find(a.how_used) != std::string::npos;
          }
          CHECK_MESSAGE(found, a.how_used);
        }
      }
    }
  }
}

TEST_CASE("pattern bindings are typed in access records") {
  const auto u = parse_text(R"(class A {
  int f(Object o) {
    if (o instanceof Point(int px, var py)) { return px + py; }
    return switch (o) {
      case String s when s.isEmpty() -> 0;
      default -> 1;
    };
  }
})");
  CHECK(u.diagnostics.empty());
  const auto& acc = only_class(u).methods[0].accesses;
  const std::vector<AccessRecord> expected = {{"o", "Object", "o instanceof Point(int px, var py)"},
                                              {"px", "int", "return px + py"},
                                              {"py", "var", "return px + py"},
                                              {"o", "Object", "o"},
                                              {"s", "String", "String s when s.isEmpty()"}};
  CHECK(acc == expected);
}
