#include "gtorus/cli_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gtorus/localization.hpp"

namespace gtorus::cli {

namespace {

RMatrix matrix_field(const Json& j, const char* key, int d) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidArgument, std::string("params: missing field '") + key + "'");
  const Json& v = j.at(key);
  RMatrix m = RMatrix::Zero(d, d);
  if (v.is_number()) {
    m.diagonal().setConstant(v.get<double>());
    return m;
  }
  if (!v.is_array()) throw Error(ErrorCode::InvalidArgument, std::string("params: '") + key + "' must be a number or array");
  if (!v.empty() && v.front().is_number()) {
    if (v.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorCode::InvalidArgument, std::string("params: diagonal '") + key + "' needs d entries");
    }
    for (int i = 0; i < d; ++i) m(i, i) = v.at(static_cast<std::size_t>(i)).get<double>();
    return m;
  }
  if (v.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::InvalidArgument, std::string("params: '") + key + "' must be d x d");
  }
  for (int r = 0; r < d; ++r) {
    const Json& row = v.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorCode::InvalidArgument, std::string("params: '") + key + "' must be d x d");
    }
    for (int c = 0; c < d; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

double parse_double(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

GaborConfig parse_params(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "params must be a JSON object");
  GaborConfig c;
  try {
    c.d = j.at("d").get<int>();
    c.N = j.at("N").get<int>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidArgument, "params: 'd' and 'N' must be integers");
  }
  if (c.d < 1 || c.d > 8) throw Error(ErrorCode::InvalidArgument, "params: d must be in [1, 8]");
  const RMatrix re = j.contains("omega_re") ? matrix_field(j, "omega_re", c.d) : RMatrix::Zero(c.d, c.d);
  const RMatrix im = matrix_field(j, "omega_im", c.d);
  c.omega = re.cast<cplx>() + kI * im.cast<cplx>();
  return c;
}

GaborParams load_params(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, "params file '" + path + "': " + e.what());
  }
  return validate(parse_params(j));
}

Json params_to_json(const GaborParams& params) {
  Json j;
  j["d"] = params.dim();
  j["N"] = params.samples();
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < params.dim(); ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (int c = 0; c < params.dim(); ++c) {
      rr.push_back(params.real_part()(r, c));
      ii.push_back(params.imag_part()(r, c));
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  j["omega_re"] = re;
  j["omega_im"] = im;
  return j;
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("complex list: ") + e.what());
    }
    // Output documents of this tool carry the list under a named key.
    if (j.is_object()) {
      if (j.contains("coefficients")) {
        j = j.at("coefficients");
      } else if (j.contains("signal")) {
        j = j.at("signal");
      } else {
        throw Error(ErrorCode::InvalidArgument, "complex list object needs a 'coefficients' or 'signal' array");
      }
    }
    std::vector<cplx> out;
    for (const Json& v : j) {
      if (v.is_number()) {
        out.emplace_back(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2) {
        out.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        throw Error(ErrorCode::InvalidArgument, "complex list entries must be numbers or [re, im]");
      }
    }
    return out;
  }
  std::vector<std::pair<long, cplx>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const std::vector<std::string> cols = split(line, ',');
    if (cols.size() != 3) throw Error(ErrorCode::InvalidArgument, "CSV rows must be index,re,im");
    try {
      rows.emplace_back(static_cast<long>(parse_double(cols[0])), cplx(parse_double(cols[1]), parse_double(cols[2])));
    } catch (const std::invalid_argument&) {
      if (rows.empty()) continue;  // header line
      throw Error(ErrorCode::InvalidArgument, "malformed CSV row '" + line + "'");
    }
  }
  std::vector<cplx> out(rows.size());
  for (const auto& [idx, v] : rows) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= rows.size()) {
      throw Error(ErrorCode::InvalidArgument, "CSV index " + std::to_string(idx) + " out of range");
    }
    out[static_cast<std::size_t>(idx)] = v;
  }
  return out;
}

Signal load_signal(const std::string& path, const GaborParams& params) {
  return Signal(params.dim(), params.samples(), parse_complex_list(read_file(path)));
}

std::vector<std::pair<std::size_t, std::size_t>> parse_points(const Json& j, const GaborParams& params) {
  const int d = params.dim();
  const IndexSpace space(d, params.samples());
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "points must be a JSON array of rows");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * d)) {
      throw Error(ErrorCode::InvalidArgument, "each point row needs " + std::to_string(2 * d) + " integers");
    }
    std::vector<long> k, l;
    for (int i = 0; i < d; ++i) k.push_back(row[static_cast<std::size_t>(i)].get<long>());
    for (int i = 0; i < d; ++i) l.push_back(row[static_cast<std::size_t>(d + i)].get<long>());
    for (long v : k) {
      if (v < 0 || v >= params.samples()) throw Error(ErrorCode::InvalidArgument, "point index outside [0, N)");
    }
    for (long v : l) {
      if (v < 0 || v >= params.samples()) throw Error(ErrorCode::InvalidArgument, "point index outside [0, N)");
    }
    out.emplace_back(space.flatten_mod(k), space.flatten_mod(l));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> load_points(const std::string& path, const GaborParams& params) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, "points file '" + path + "': " + e.what());
  }
  return parse_points(j, params);
}

CVector parse_complex_vector(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.empty() || parts.size() % 2 != 0) {
    throw std::invalid_argument("expected re,im pairs, got '" + text + "'");
  }
  CVector v(static_cast<Eigen::Index>(parts.size() / 2));
  for (std::size_t i = 0; i < parts.size(); i += 2) {
    v(static_cast<Eigen::Index>(i / 2)) = cplx(parse_double(parts[i]), parse_double(parts[i + 1]));
  }
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& p : split(text, ',')) {
    const double v = parse_double(p);
    if (v != static_cast<int>(v)) throw std::invalid_argument("not an integer: '" + p + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 1) return {parse_double(parts[0])};
  if (parts.size() != 3) throw std::invalid_argument("alpha grid must be from:to:step");
  const double from = parse_double(parts[0]), to = parse_double(parts[1]), step = parse_double(parts[2]);
  if (!(step > 0.0) || to < from) throw std::invalid_argument("alpha grid needs step > 0 and from <= to");
  return alpha_range(from, to, step);
}

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

Json complex_json(cplx v) { return Json::array({v.real(), v.imag()}); }

}  // namespace gtorus::cli
