#include "slantgeom/manifest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "slantgeom/error.hpp"
#include "slantgeom/parse.hpp"

namespace slantgeom {

namespace {

struct Located {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;  // of the value
  std::size_t key_column = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, Located>> entries;
};

std::string_view trim(std::string_view s, std::size_t* offset = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (offset) *offset = b;
  return s.substr(b, e - b);
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view line = trim(raw, &lead);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, lead + 1, "section header must end with ']'");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ParseError(line_no, lead + 2, "empty section name");
      out.push_back(Section{std::string(name), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, lead + 1, "expected 'key = value'");
    if (out.empty()) throw ParseError(line_no, lead + 1, "entry before any [section]");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, lead + 1, "missing key before '='");
    std::size_t voff = 0;
    const std::string_view value = trim(line.substr(eq + 1), &voff);
    if (value.empty()) throw ParseError(line_no, lead + eq + 2, "missing value for '" + std::string(key) + "'");
    Located loc{std::string(value), line_no, lead + eq + 1 + voff + 1, lead + 1};
    if (key != "domain") {  // the one repeatable key
      for (const auto& [k, v] : out.back().entries)
        if (k == key)
          throw ParseError(line_no, lead + 1,
                           "duplicate key '" + std::string(key) + "' (first at line " + std::to_string(v.line) + ")");
    }
    out.back().entries.emplace_back(std::string(key), std::move(loc));
    if (end == text.size()) break;
  }
  return out;
}

Expr expr_of(const Located& v) { return parse_expr(v.text, v.line, v.column); }

double number_of(std::string_view text, std::size_t line, std::size_t column) {
  const std::string_view t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(line, column, "expected a number, got '" + std::string(t) + "'");
  }
  return v;
}

// Comma separated fields with the column of each field.
std::vector<std::pair<std::string_view, std::size_t>> fields(const Located& v) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::string_view s = v.text;
  std::size_t base = v.column;
  while (true) {
    const auto comma = s.find(',');
    std::size_t off = 0;
    const std::string_view f = trim(s.substr(0, comma), &off);
    out.emplace_back(f, base + off);
    if (comma == std::string_view::npos) break;
    base += comma + 1;
    s = s.substr(comma + 1);
  }
  return out;
}

std::optional<std::pair<int, int>> matrix_index(std::string_view key, std::string_view prefix) {
  if (key.size() != prefix.size() + 2 || key.substr(0, prefix.size()) != prefix) return std::nullopt;
  const char a = key[prefix.size()], b = key[prefix.size() + 1];
  if (a < '1' || a > '3' || b < '1' || b > '3') return std::nullopt;
  return std::pair<int, int>{a - '1', b - '1'};
}

std::optional<int> vector_index(std::string_view key, std::string_view prefix) {
  if (key.size() != prefix.size() + 1 || key.substr(0, prefix.size()) != prefix) return std::nullopt;
  const char a = key[prefix.size()];
  if (a < '1' || a > '3') return std::nullopt;
  return a - '1';
}

[[noreturn]] void unknown_key(const std::string& key, const Located& v, const std::string& section) {
  throw ParseError(v.line, v.key_column, "unknown key '" + key + "' in [" + section + "]");
}

void parse_chart(const Section& sec, Chart& chart) {
  for (const auto& [key, v] : sec.entries) {
    if (key == "coordinates") {
      const auto fs = fields(v);
      if (fs.size() != 3) throw ParseError(v.line, v.column, "expected three coordinate names");
      for (std::size_t i = 0; i < 3; ++i) {
        const auto [name, col] = fs[i];
        const Expr e = parse_expr(name, v.line, col);
        if (e.op() != Op::Variable) throw ParseError(v.line, col, "coordinate must be a plain name");
        chart.coordinates[i] = std::string(name);
      }
    } else if (key == "domain") {
      chart.domain.push_back(expr_of(v));
    } else if (key == "box") {
      const auto fs = fields(v);
      if (fs.size() != 6) throw ParseError(v.line, v.column, "box needs lo1, hi1, lo2, hi2, lo3, hi3");
      for (std::size_t i = 0; i < 3; ++i) {
        chart.box.lo[i] = number_of(fs[2 * i].first, v.line, fs[2 * i].second);
        chart.box.hi[i] = number_of(fs[2 * i + 1].first, v.line, fs[2 * i + 1].second);
        if (!(chart.box.lo[i] < chart.box.hi[i]))
          throw ParseError(v.line, fs[2 * i].second, "box bounds must satisfy lo < hi");
      }
    } else {
      unknown_key(key, v, sec.name);
    }
  }
}

Interval interval_of(const Located& v) {
  const std::string_view t = trim(v.text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError(v.line, v.column, "interval must look like (a, b)");
  Located inner = v;
  inner.text = std::string(t.substr(1, t.size() - 2));
  inner.column = v.column + 1;
  const auto fs = fields(inner);
  if (fs.size() != 2) throw ParseError(v.line, v.column, "interval needs two endpoints");
  Interval in{number_of(fs[0].first, v.line, fs[0].second), number_of(fs[1].first, v.line, fs[1].second)};
  if (!(in.lo < in.hi)) throw ParseError(v.line, v.column, "interval must satisfy a < b");
  return in;
}

}  // namespace

std::vector<std::string> Manifest::curve_names() const {
  std::vector<std::string> out;
  for (const auto& c : curves) out.push_back(c.name);
  return out;
}

Curve Manifest::curve(std::string_view name) const {
  for (const auto& c : curves)
    if (c.name == name) return Curve(structure, c.components, c.interval, c.parameter, c.name);
  throw Error(ErrorCode::InvalidCurve, "no curve named '" + std::string(name) + "' in the manifest");
}

Manifest parse_manifest(std::string_view text) {
  const std::vector<Section> sections = split_sections(text);
  Chart chart;
  MatExpr metric, phi;
  VecExpr xi, eta;
  std::array<std::array<std::optional<Located>, 3>, 3> g_src;
  std::array<bool, 3> xi_set{}, eta_set{};
  std::map<std::string, std::size_t> seen;
  const Section* metric_sec = nullptr;
  Manifest out;

  for (const Section& sec : sections) {
    if (auto [it, fresh] = seen.emplace(sec.name, sec.line); !fresh)
      throw ParseError(sec.line, 1, "duplicate section [" + sec.name + "] (first at line " + std::to_string(it->second) + ")");
    if (sec.name == "chart") {
      parse_chart(sec, chart);
    } else if (sec.name == "metric") {
      metric_sec = &sec;
      for (const auto& [key, v] : sec.entries) {
        const auto ij = matrix_index(key, "g");
        if (!ij) unknown_key(key, v, sec.name);
        g_src[ij->first][ij->second] = v;
      }
    } else if (sec.name == "phi") {
      for (const auto& [key, v] : sec.entries) {
        const auto ij = matrix_index(key, "phi");
        if (!ij) unknown_key(key, v, sec.name);
        phi[ij->first][ij->second] = expr_of(v);
      }
    } else if (sec.name == "xi" || sec.name == "eta") {
      const bool is_xi = sec.name == "xi";
      for (const auto& [key, v] : sec.entries) {
        const auto i = vector_index(key, sec.name);
        if (!i) unknown_key(key, v, sec.name);
        (is_xi ? xi : eta)[*i] = expr_of(v);
        (is_xi ? xi_set : eta_set)[*i] = true;
      }
    } else if (sec.name.rfind("curve.", 0) == 0) {
      CurveSpec spec;
      spec.name = sec.name.substr(6);
      if (spec.name.empty()) throw ParseError(sec.line, 1, "curve section needs a name: [curve.NAME]");
      std::array<std::optional<Located>, 3> comp;
      for (const auto& [key, v] : sec.entries) {
        if (key == "interval") {
          spec.interval = interval_of(v);
        } else if (key == "parameter") {
          const Expr e = expr_of(v);
          if (e.op() != Op::Variable) throw ParseError(v.line, v.column, "parameter must be a plain name");
          spec.parameter = e.name();
        } else {
          bool matched = false;
          for (std::size_t i = 0; i < 3; ++i) {
            if (key == chart.coordinates[i]) {
              comp[i] = v;
              matched = true;
            }
          }
          if (!matched) unknown_key(key, v, sec.name);
        }
      }
      for (std::size_t i = 0; i < 3; ++i) {
        if (!comp[i])
          throw ParseError(sec.line, 1, "curve '" + spec.name + "' is missing component '" + chart.coordinates[i] + "'");
        spec.components[i] = expr_of(*comp[i]);
        for (const auto& var : free_variables(spec.components[i])) {
          if (var != spec.parameter)
            throw ParseError(comp[i]->line, comp[i]->column,
                             "curve component depends on '" + var + "', not only on '" + spec.parameter + "'");
        }
      }
      out.curves.push_back(std::move(spec));
    } else {
      throw ParseError(sec.line, 1, "unknown section [" + sec.name + "]");
    }
  }

  for (const char* required : {"metric", "phi", "xi", "eta"})
    if (!seen.count(required)) throw ParseError(sections.empty() ? 1 : sections.back().line, 1,
                                                std::string("missing section [") + required + "]");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!xi_set[i]) throw ParseError(seen["xi"], 1, "missing xi" + std::to_string(i + 1));
    if (!eta_set[i]) throw ParseError(seen["eta"], 1, "missing eta" + std::to_string(i + 1));
  }

  // Metric: symmetric completion, and agreement where both halves are given.
  const Binding probe_base = [&] {
    Binding b;
    for (const auto& c : chart.coordinates) b[c] = 0.0;
    return b;
  }();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const auto& a = g_src[i][j];
      const auto& b = g_src[j][i];
      if (!a && !b) {
        metric[i][j] = metric[j][i] = Expr();
        continue;
      }
      const Expr ea = a ? expr_of(*a) : expr_of(*b);
      if (a && b && i != j) {
        const Expr eb = expr_of(*b);
        // compare on a few deterministic probe points inside the box
        for (int k = 0; k < 5; ++k) {
          Binding pb = probe_base;
          for (std::size_t c = 0; c < 3; ++c) {
            const double w = 0.17 + 0.15 * k + 0.11 * static_cast<double>(c);
            pb[chart.coordinates[c]] = chart.box.lo[c] + (chart.box.hi[c] - chart.box.lo[c]) * (w - std::floor(w));
          }
          double va = 0.0, vb = 0.0;
          try {
            va = evaluate(ea, pb);
            vb = evaluate(eb, pb);
          } catch (const Error&) {
            continue;
          }
          if (std::fabs(va - vb) > 1e-12 * std::max(1.0, std::fabs(va)))
            throw ParseError(b->line, b->key_column, "metric is not symmetric: g" + std::to_string(j + 1) +
                                                         std::to_string(i + 1) + " differs from g" +
                                                         std::to_string(i + 1) + std::to_string(j + 1));
        }
      }
      metric[i][j] = metric[j][i] = ea;
    }
  }

  for (const Expr& d : chart.domain)
    for (const auto& var : free_variables(d)) {
      bool known = false;
      for (const auto& c : chart.coordinates) known = known || c == var;
      if (!known) throw ParseError(seen.count("chart") ? seen["chart"] : 1, 1, "domain uses unknown variable '" + var + "'");
    }

  try {
    out.structure = std::make_shared<const ParacontactStructure>(chart, metric, phi, xi, eta);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(metric_sec ? metric_sec->line : 1, 1, e.what());
  }
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot read manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

std::string dump_manifest(const ParacontactStructure& s, const std::vector<Curve>& curves) {
  std::ostringstream os;
  const Chart& chart = s.chart();
  os << "[chart]\n";
  os << "coordinates = " << chart.coordinates[0] << ", " << chart.coordinates[1] << ", " << chart.coordinates[2] << "\n";
  for (const Expr& d : chart.domain) os << "domain = " << d.to_string() << "\n";
  os << "box = ";
  for (std::size_t i = 0; i < 3; ++i)
    os << number(chart.box.lo[i]) << ", " << number(chart.box.hi[i]) << (i < 2 ? ", " : "\n");

  os << "\n[metric]\n";
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) os << 'g' << i + 1 << j + 1 << " = " << s.metric()[i][j].to_string() << "\n";
  os << "\n[phi]\n";
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) os << "phi" << i + 1 << j + 1 << " = " << s.phi()[i][j].to_string() << "\n";
  os << "\n[xi]\n";
  for (std::size_t i = 0; i < 3; ++i) os << "xi" << i + 1 << " = " << s.xi()[i].to_string() << "\n";
  os << "\n[eta]\n";
  for (std::size_t i = 0; i < 3; ++i) os << "eta" << i + 1 << " = " << s.eta()[i].to_string() << "\n";

  for (const Curve& c : curves) {
    os << "\n[curve." << (c.name().empty() ? "unnamed" : c.name()) << "]\n";
    if (c.parameter() != "t") os << "parameter = " << c.parameter() << "\n";
    for (std::size_t i = 0; i < 3; ++i) os << chart.coordinates[i] << " = " << c.components()[i].to_string() << "\n";
    os << "interval = (" << number(c.interval().lo) << ", " << number(c.interval().hi) << ")\n";
  }
  return os.str();
}

}  // namespace slantgeom
