#include "sqz/xi_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqz/error.hpp"

namespace sqz {

SqueezingSpec parse_xi_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("xi file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries")) {
    throw InputError("xi file: expected an object with \"d\" and \"entries\"");
  }
  if (!doc["d"].is_number_integer() || doc["d"].get<long long>() <= 0) {
    throw InputError("xi file: \"d\" must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(doc["d"].get<long long>());
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != d * d) {
    throw InputError("xi file: \"entries\" must hold d*d [re, im] pairs");
  }
  std::vector<cplx> values;
  values.reserve(d * d);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InputError("xi file: each entry must be a [re, im] pair of numbers");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return SqueezingSpec(ComplexMatrix(d, d, std::move(values)));
  } catch (const InvalidArgument& e) {
    throw InputError(std::string("xi file: ") + e.what());
  }
}

SqueezingSpec load_xi_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open xi file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_xi_json(buf.str());
}

std::string to_xi_json(const SqueezingSpec& spec) {
  nlohmann::json doc;
  doc["d"] = spec.dim();
  auto entries = nlohmann::json::array();
  for (cplx z : spec.xi().entries()) entries.push_back({z.real(), z.imag()});
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace sqz
