#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lpr/design.hpp"
#include "lpr/lpr_engine.hpp"

namespace lprkit {

using Json = nlohmann::ordered_json;

struct CsvData {
  lpr::Design design;
  lpr::SampleSet samples;
};

/// Two numeric columns x,y. A non-numeric first row is taken as a header.
/// Rows are reordered by x. Errors carry 1-based line numbers.
CsvData parse_csv(std::string_view text);
CsvData load_csv(const std::string& path);

/// (y, W) table for a tabulated weight scheme, same CSV rules.
lpr::WeightScheme load_weight_table(const std::string& path);

/// Kernel file: {"t","q","p","h","design":[...],"kernel":[...],"factor_poly":[...]}.
struct KernelFile {
  lpr::Design design;
  lpr::KernelVector kernel;
};

KernelFile parse_kernel_json(std::string_view text);
KernelFile load_kernel_json(const std::string& path);

Json kernel_json(const lpr::Design& design, const lpr::KernelVector& kernel, const lpr::FactorPolynomial& poly);

/// Deterministic rendering: insertion-ordered keys, doubles printed with 17
/// significant digits, two-space indentation, trailing newline.
std::string render_json(const Json& value);

/// %.17g, with ".0" appended to integral values.
std::string format_double(double v);

std::string read_file(const std::string& path);

}  // namespace lprkit
