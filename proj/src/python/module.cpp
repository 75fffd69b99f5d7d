#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waccess/report.hpp"
#include "waccess/rules.hpp"
#include "waccess/style.hpp"

namespace py = pybind11;

namespace {

std::optional<waccess::RuleSet> to_rule_set(const std::optional<std::vector<std::string>>& ids) {
  if (!ids) return std::nullopt;
  waccess::RuleSet set;
  for (const auto& id : *ids) {
    if (!waccess::find_rule(id)) throw py::value_error("unknown rule id '" + id + "'");
    set.insert(id);
  }
  return set;
}

waccess::PageReport audit(const std::string& html, const std::string& url,
                          const std::optional<std::vector<std::string>>& rules, const std::string& fetched_at) {
  auto enabled = to_rule_set(rules);
  waccess::PageReport report;
  {
    py::gil_scoped_release release;
    report = waccess::audit_html(html, url, enabled);
  }
  if (!fetched_at.empty()) report.fetched_at = fetched_at;
  return report;
}

py::tuple rgb_tuple(const std::string& text) {
  waccess::Color c = waccess::parse_color(text);
  return py::make_tuple(c.r, c.g, c.b, c.alpha);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Static WCAG 2.0/2.1/2.2 accessibility auditor";

  py::register_exception<waccess::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<waccess::ColorParseError>(m, "ColorParseError", PyExc_ValueError);

  m.def(
      "audit_json",
      [](const std::string& html, const std::string& url, const std::optional<std::vector<std::string>>& rules,
         const std::string& fetched_at) { return waccess::emit_json(audit(html, url, rules, fetched_at)); },
      py::arg("html"), py::arg("url") = "", py::arg("rules") = py::none(), py::arg("fetched_at") = "",
      "Audit an HTML document and return the JSON report as a string.");

  m.def(
      "audit_console",
      [](const std::string& html, const std::string& url, const std::optional<std::vector<std::string>>& rules,
         const std::string& fetched_at) { return waccess::render_console(audit(html, url, rules, fetched_at)); },
      py::arg("html"), py::arg("url") = "", py::arg("rules") = py::none(), py::arg("fetched_at") = "",
      "Audit an HTML document and return the console report.");

  m.def("registry", [] {
    py::list out;
    for (const auto& r : waccess::registry()) {
      py::dict row;
      row["id"] = r.id;
      row["version"] = std::string(waccess::to_string(r.version));
      row["level"] = std::string(waccess::to_string(r.level));
      row["principle"] = std::string(waccess::to_string(r.principle));
      row["rule_class"] = std::string(waccess::to_string(r.rule_class));
      row["title"] = r.title;
      out.append(row);
    }
    return out;
  });

  m.def("parse_color", &rgb_tuple, py::arg("text"), "Parse a CSS color into (r, g, b, alpha).");
  m.def(
      "relative_luminance", [](const std::string& c) { return waccess::relative_luminance(waccess::parse_color(c)); },
      py::arg("color"));
  m.def(
      "contrast_ratio",
      [](const std::string& a, const std::string& b) {
        return waccess::contrast_ratio(waccess::parse_color(a), waccess::parse_color(b));
      },
      py::arg("a"), py::arg("b"));
}
