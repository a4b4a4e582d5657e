#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symreach/errors.hpp"
#include "symreach/explorer.hpp"

namespace symreach {

namespace {

using nlohmann::json;

json to_json(const ReachRecord& r) {
  json j = {{"c", r.c},
            {"T", r.T},
            {"theta", r.theta},
            {"z", r.z},
            {"phi", r.phi},
            {"status", std::string(to_string(r.status))},
            {"seed", r.seed},
            {"wall_time", r.wall_time}};
  // JSON has no infinities; an overflowed objective is stored as null.
  j["epsilon"] = std::isfinite(r.epsilon) ? json(r.epsilon) : json(nullptr);
  if (r.pulse) j["pulse"] = *r.pulse;
  return j;
}

ReachRecord record_from_json(const json& j) {
  ReachRecord r;
  r.c = j.at("c").get<double>();
  r.T = j.at("T").get<double>();
  r.theta = j.at("theta").get<double>();
  r.z = j.at("z").get<double>();
  r.phi = j.at("phi").get<double>();
  r.status = parse_status(j.at("status").get<std::string>());
  const json& eps = j.at("epsilon");
  r.epsilon = eps.is_null() ? std::numeric_limits<double>::infinity() : eps.get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_time = j.at("wall_time").get<double>();
  if (j.contains("pulse")) r.pulse = j.at("pulse").get<std::vector<double>>();
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(std::string_view field) {
  const std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError("csv: bad number '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw DomainError("unknown format '" + std::string(s) + "'");
}

Format format_from_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".json") return Format::Json;
  if (ext == ".csv") return Format::Csv;
  throw DomainError("cannot infer format from '" + path.string() + "'");
}

std::string records_to_json(const std::vector<ReachRecord>& records) {
  json arr = json::array();
  for (const ReachRecord& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<ReachRecord> records_from_json(std::string_view text) {
  try {
    const json arr = json::parse(text);
    const json& list = arr.is_object() ? arr.at("records") : arr;
    std::vector<ReachRecord> out;
    out.reserve(list.size());
    for (const json& j : list) out.push_back(record_from_json(j));
    return out;
  } catch (const json::exception& e) {
    throw DomainError(std::string("records json: ") + e.what());
  }
}

std::string records_to_csv(const std::vector<ReachRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ReachRecord& r : records) {
    out += format_double(r.c) + ',' + format_double(r.T) + ',' + format_double(r.theta) +
           ',' + format_double(r.z) + ',' + format_double(r.phi) + ',' +
           std::string(to_string(r.status)) + ',' + format_double(r.epsilon) + ',' +
           std::to_string(r.seed) + ',' + format_double(r.wall_time) + '\n';
  }
  return out;
}

std::vector<ReachRecord> records_from_csv(std::string_view text) {
  std::vector<ReachRecord> out;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw DomainError("csv: unexpected header '" + std::string(line) + "'");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) throw DomainError("csv: expected 9 fields in '" + std::string(line) + "'");
    ReachRecord r;
    r.c = parse_double(f[0]);
    r.T = parse_double(f[1]);
    r.theta = parse_double(f[2]);
    r.z = parse_double(f[3]);
    r.phi = parse_double(f[4]);
    r.status = parse_status(f[5]);
    r.epsilon = parse_double(f[6]);
    const auto [ptr, ec] = std::from_chars(f[7].data(), f[7].data() + f[7].size(), r.seed);
    if (ec != std::errc() || ptr != f[7].data() + f[7].size()) {
      throw DomainError("csv: bad seed '" + std::string(f[7]) + "'");
    }
    r.wall_time = parse_double(f[8]);
    out.push_back(r);
  }
  if (header) throw DomainError("csv: missing header");
  return out;
}

void export_records(const std::vector<ReachRecord>& records,
                    const std::filesystem::path& path, Format format) {
  const std::string text =
      format == Format::Json ? records_to_json(records) : records_to_csv(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::vector<ReachRecord> import_records(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return format_from_path(path) == Format::Json ? records_from_json(text)
                                                : records_from_csv(text);
}

SweepSpec sweep_spec_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SweepSpec spec;
    spec.c_values = j.at("c").get<std::vector<double>>();
    spec.T_values = j.at("T").get<std::vector<double>>();
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      spec.grid.angular_step = get_or(g, "angular_step", spec.grid.angular_step);
      spec.grid.z_levels = get_or(g, "z_levels", spec.grid.z_levels);
      spec.grid.z_max = get_or(g, "z_max", spec.grid.z_max);
    }
    spec.grid.offsets.theta0 = get_or(j, "theta0", spec.grid.offsets.theta0);
    spec.grid.offsets.phi0 = get_or(j, "phi0", spec.grid.offsets.phi0);
    if (j.contains("problem")) {
      const json& p = j.at("problem");
      OptimSettings& s = spec.settings;
      s.slices = get_or(p, "Q", s.slices);
      s.u_max = get_or(p, "u_max", s.u_max);
      s.u_min = get_or(p, "u_min", -s.u_max);
      s.tol = get_or(p, "tol", s.tol);
      s.restarts = get_or(p, "restarts", s.restarts);
      s.wall_limit = get_or(p, "wall_limit", s.wall_limit);
      s.init_spread = get_or(p, "init_spread", s.init_spread);
    }
    spec.seed = get_or<std::uint64_t>(j, "seed", 0);
    spec.workers = get_or<std::size_t>(j, "workers", 1);
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("sweep config: ") + e.what());
  }
}

}  // namespace symreach
