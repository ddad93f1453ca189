#include "lprkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lpr/errors.hpp"

namespace lprkit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

struct Row {
  double a;
  double b;
  std::size_t line;
};

std::vector<Row> parse_pairs(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  bool first_content = true;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty()) continue;

    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw lpr::ValidationError("line " + std::to_string(line_no) + ": expected 2 columns, found " +
                                 std::to_string(fields.size()));
    }
    double a = 0.0;
    double b = 0.0;
    const bool ok = parse_number(fields[0], a) && parse_number(fields[1], b);
    if (!ok) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      throw lpr::ValidationError("line " + std::to_string(line_no) + ": non-numeric value");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw lpr::ValidationError("line " + std::to_string(line_no) + ": non-finite value");
    }
    first_content = false;
    rows.push_back({a, b, line_no});
  }
  if (rows.empty()) throw lpr::ValidationError("no data rows");
  return rows;
}

void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) { return l.a < r.a; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].a == rows[i - 1].a) {
      throw lpr::ValidationError("line " + std::to_string(std::max(rows[i].line, rows[i - 1].line)) +
                                 ": duplicate x value " + format_double(rows[i].a));
    }
  }
}

std::vector<double> number_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw lpr::ValidationError(std::string("kernel file: missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw lpr::ValidationError(std::string("kernel file: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

void render(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        render(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      if (scalars) {
        out += "[";
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          render(e, out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        render(e, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lpr::ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvData parse_csv(std::string_view text) {
  auto rows = parse_pairs(text);
  sort_rows(rows);
  std::vector<double> x;
  std::vector<double> y;
  for (const Row& r : rows) {
    x.push_back(r.a);
    y.push_back(r.b);
  }
  lpr::Design design = lpr::validate_design(std::move(x));
  lpr::SampleSet samples(design, std::move(y));
  return CsvData{std::move(design), std::move(samples)};
}

CsvData load_csv(const std::string& path) { return parse_csv(read_file(path)); }

lpr::WeightScheme load_weight_table(const std::string& path) {
  auto rows = parse_pairs(read_file(path));
  sort_rows(rows);
  std::vector<std::pair<double, double>> table;
  for (const Row& r : rows) table.emplace_back(r.a, r.b);
  return lpr::WeightScheme::tabulated(std::move(table));
}

KernelFile parse_kernel_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw lpr::ValidationError(std::string("kernel file: ") + e.what());
  }
  if (!j.is_object()) throw lpr::ValidationError("kernel file: top level must be an object");
  for (const char* key : {"t", "q", "p", "h"}) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw lpr::ValidationError(std::string("kernel file: missing number '") + key + "'");
    }
  }
  std::vector<double> pts = number_array(j, "design");
  std::vector<double> values = number_array(j, "kernel");
  if (pts.size() != values.size()) throw lpr::ValidationError("kernel file: design and kernel lengths differ");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i] > pts[i - 1])) throw lpr::ValidationError("kernel file: design must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw lpr::ValidationError("kernel file: non-finite kernel value");
  }
  lpr::KernelVector k;
  k.values = std::move(values);
  k.t = j.at("t").get<double>();
  k.q = j.at("q").get<int>();
  k.p = j.at("p").get<int>();
  k.h = j.at("h").get<double>();
  if (!(k.h > 0.0)) throw lpr::ValidationError("kernel file: h must be positive");
  return KernelFile{lpr::validate_design(std::move(pts)), std::move(k)};
}

KernelFile load_kernel_json(const std::string& path) { return parse_kernel_json(read_file(path)); }

Json kernel_json(const lpr::Design& design, const lpr::KernelVector& kernel, const lpr::FactorPolynomial& poly) {
  Json j;
  j["t"] = kernel.t;
  j["q"] = kernel.q;
  j["p"] = kernel.p;
  j["h"] = kernel.h;
  j["design"] = std::vector<double>(design.points().begin(), design.points().end());
  j["kernel"] = kernel.values;
  j["factor_poly"] = poly.coeffs;
  return j;
}

std::string render_json(const Json& value) {
  std::string out;
  render(value, out, 0);
  out += '\n';
  return out;
}

}  // namespace lprkit
