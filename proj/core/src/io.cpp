#include "dynamap/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "dynamap/errors.hpp"

namespace dynamap {

using nlohmann::json;

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

namespace {

double parse_double(std::string_view field, std::size_t line_no, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line_no) + ": bad " + what + " value '" +
                     std::string(field) + "'");
  }
  return v;
}

long parse_int(std::string_view field, std::size_t line_no, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad " + what + " value '" +
                     std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Iterates non-empty lines, validating the header first.
class CsvReader {
 public:
  CsvReader(const std::string& text, std::string_view header) : text_(text) {
    if (!next_line()) throw InputError("empty file, expected header '" + std::string(header) + "'");
    if (line_ != header) {
      throw InputError("bad header '" + std::string(line_) + "', expected '" +
                       std::string(header) + "'");
    }
  }

  bool next_row(std::vector<std::string_view>& fields, std::size_t n_fields) {
    if (!next_line()) return false;
    fields = split(line_);
    if (fields.size() != n_fields) {
      throw InputError("line " + std::to_string(line_no_) + ": expected " +
                       std::to_string(n_fields) + " fields, got " + std::to_string(fields.size()));
    }
    return true;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  bool next_line() {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string::npos) end = text_.size();
      line_ = std::string_view(text_).substr(pos_, end - pos_);
      if (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);
      pos_ = end + 1;
      ++line_no_;
      if (!line_.empty()) return true;
    }
    return false;
  }

  const std::string& text_;
  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

json json_parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError(std::string("invalid JSON in ") + what);
  return j;
}

// Converts nlohmann type errors (wrong JSON value kinds) into InputError.
template <typename F>
auto guard_json(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double as_finite_double(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + ": value must be finite");
  return v;
}

}  // namespace

// --- radio map -------------------------------------------------------------

RadioMap parse_radio_map(const std::string& text) {
  json j = json_parse(text, "radio map");
  return guard_json("radio map", [&]() {
  RadioMap map;

  std::string prov = require(j, "provenance", "radio map").get<std::string>();
  if (prov == "static") {
    map.provenance = Provenance::static_survey;
  } else if (prov == "dynamic") {
    map.provenance = Provenance::dynamic_walk;
  } else {
    throw InputError("radio map: unknown provenance '" + prov + "'");
  }

  std::set<int> ids;
  for (const json& pj : require(j, "points", "radio map")) {
    ReferencePoint rp;
    rp.id = require(pj, "id", "reference point").get<int>();
    rp.position.x = as_finite_double(require(pj, "x", "reference point"), "reference point x");
    rp.position.y = as_finite_double(require(pj, "y", "reference point"), "reference point y");
    rp.floor = require(pj, "floor", "reference point").get<int>();
    rp.sample_count = require(pj, "sample_count", "reference point").get<int>();
    if (rp.sample_count < 1) throw InputError("reference point: sample_count must be >= 1");
    if (!ids.insert(rp.id).second) {
      throw InputError("radio map: duplicate reference point id " + std::to_string(rp.id));
    }
    for (const auto& [mac, rss] : require(pj, "fingerprint", "reference point").items()) {
      MacId id(mac);
      if (rp.fingerprint.contains(id)) {
        throw InputError("reference point " + std::to_string(rp.id) +
                         ": duplicate MAC '" + id.str() + "' after canonicalization");
      }
      rp.fingerprint.set(id, as_finite_double(rss, "fingerprint RSS"));
    }
    map.points.push_back(std::move(rp));
  }
  return map;
  });
}

std::string serialize_radio_map(const RadioMap& map) {
  json j;
  j["provenance"] = map.provenance == Provenance::static_survey ? "static" : "dynamic";
  j["points"] = json::array();
  for (const ReferencePoint& rp : map.points) {
    json pj;
    pj["id"] = rp.id;
    pj["x"] = rp.position.x;
    pj["y"] = rp.position.y;
    pj["floor"] = rp.floor;
    pj["sample_count"] = rp.sample_count;
    json fj = json::object();
    for (const auto& [mac, rss] : rp.fingerprint.readings()) fj[mac.str()] = rss;
    pj["fingerprint"] = std::move(fj);
    j["points"].push_back(std::move(pj));
  }
  return j.dump(2) + "\n";
}

// --- floorplan ---------------------------------------------------------------

Floorplan parse_floorplan(const std::string& text) {
  json j = json_parse(text, "floorplan");
  return guard_json("floorplan", [&]() {
  Floorplan plan;

  const json& bj = require(j, "bounds", "floorplan");
  plan.bounds.xmin = as_finite_double(require(bj, "xmin", "bounds"), "bounds xmin");
  plan.bounds.ymin = as_finite_double(require(bj, "ymin", "bounds"), "bounds ymin");
  plan.bounds.xmax = as_finite_double(require(bj, "xmax", "bounds"), "bounds xmax");
  plan.bounds.ymax = as_finite_double(require(bj, "ymax", "bounds"), "bounds ymax");
  if (plan.bounds.xmin >= plan.bounds.xmax || plan.bounds.ymin >= plan.bounds.ymax) {
    throw InputError("floorplan: bounds must have positive extent");
  }

  for (const json& wj : require(j, "walls", "floorplan")) {
    if (!wj.is_array() || wj.size() != 4) {
      throw InputError("floorplan: each wall must be [x1,y1,x2,y2]");
    }
    Segment wall{{as_finite_double(wj[0], "wall x1"), as_finite_double(wj[1], "wall y1")},
                 {as_finite_double(wj[2], "wall x2"), as_finite_double(wj[3], "wall y2")}};
    if (distance(wall.a, wall.b) <= 1e-12) throw InputError("floorplan: zero-length wall");
    if (!plan.bounds.contains(wall.a, 1e-9) || !plan.bounds.contains(wall.b, 1e-9)) {
      throw InputError("floorplan: wall endpoint outside bounds");
    }
    plan.walls.push_back(wall);
  }
  return plan;
  });
}

std::string serialize_floorplan(const Floorplan& plan) {
  json j;
  j["bounds"] = {{"xmin", plan.bounds.xmin},
                 {"ymin", plan.bounds.ymin},
                 {"xmax", plan.bounds.xmax},
                 {"ymax", plan.bounds.ymax}};
  j["walls"] = json::array();
  for (const Segment& wall : plan.walls) {
    j["walls"].push_back({wall.a.x, wall.a.y, wall.b.x, wall.b.y});
  }
  return j.dump(2) + "\n";
}

// --- scan log ----------------------------------------------------------------

std::vector<WifiScan> parse_scans_csv(const std::string& text) {
  CsvReader reader(text, "t,mac,rss");
  std::vector<WifiScan> scans;
  std::vector<std::string_view> fields;
  while (reader.next_row(fields, 3)) {
    double t = parse_double(fields[0], reader.line_no(), "t");
    if (t < 0.0) throw InputError("line " + std::to_string(reader.line_no()) + ": t must be >= 0");
    MacId mac(fields[1]);
    double rss = parse_double(fields[2], reader.line_no(), "rss");

    if (scans.empty() || scans.back().t != t) {
      if (!scans.empty() && t < scans.back().t) {
        throw InputError("line " + std::to_string(reader.line_no()) +
                         ": scan times must be non-decreasing");
      }
      scans.push_back({t, {}});
    }
    if (scans.back().readings.contains(mac)) {
      throw InputError("line " + std::to_string(reader.line_no()) + ": duplicate MAC '" +
                       mac.str() + "' within one scan");
    }
    scans.back().readings.set(mac, rss);
  }
  return scans;
}

std::string serialize_scans_csv(std::span<const WifiScan> scans) {
  std::string out = "t,mac,rss\n";
  for (const WifiScan& scan : scans) {
    std::string t = format_double(scan.t);
    for (const auto& [mac, rss] : scan.readings.readings()) {
      out += t;
      out += ',';
      out += mac.str();
      out += ',';
      out += format_double(rss);
      out += '\n';
    }
  }
  return out;
}

// --- IMU log -----------------------------------------------------------------

std::vector<ImuSample> parse_imu_csv(const std::string& text) {
  CsvReader reader(text, "t,ax,ay,az,wx,wy,wz");
  std::vector<ImuSample> samples;
  std::vector<std::string_view> fields;
  while (reader.next_row(fields, 7)) {
    ImuSample s;
    s.t = parse_double(fields[0], reader.line_no(), "t");
    s.accel = {parse_double(fields[1], reader.line_no(), "ax"),
               parse_double(fields[2], reader.line_no(), "ay"),
               parse_double(fields[3], reader.line_no(), "az")};
    s.gyro = {parse_double(fields[4], reader.line_no(), "wx"),
              parse_double(fields[5], reader.line_no(), "wy"),
              parse_double(fields[6], reader.line_no(), "wz")};
    if (!samples.empty() && s.t <= samples.back().t) {
      throw InputError("line " + std::to_string(reader.line_no()) +
                       ": timestamps must be strictly increasing");
    }
    samples.push_back(s);
  }
  return samples;
}

std::string serialize_imu_csv(std::span<const ImuSample> samples) {
  std::string out = "t,ax,ay,az,wx,wy,wz\n";
  for (const ImuSample& s : samples) {
    out += format_double(s.t);
    for (int i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(s.accel[i]);
    }
    for (int i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(s.gyro[i]);
    }
    out += '\n';
  }
  return out;
}

// --- track -------------------------------------------------------------------

Track parse_track_csv(const std::string& text) {
  CsvReader reader(text, "t,step,x,y,heading");
  Track track;
  std::vector<std::string_view> fields;
  while (reader.next_row(fields, 5)) {
    TrackEntry e;
    e.t = parse_double(fields[0], reader.line_no(), "t");
    e.step_index = static_cast<int>(parse_int(fields[1], reader.line_no(), "step"));
    e.pose.x = parse_double(fields[2], reader.line_no(), "x");
    e.pose.y = parse_double(fields[3], reader.line_no(), "y");
    e.pose.heading = parse_double(fields[4], reader.line_no(), "heading");
    if (!track.entries.empty()) {
      if (e.t <= track.entries.back().t) {
        throw InputError("line " + std::to_string(reader.line_no()) +
                         ": timestamps must be strictly increasing");
      }
      if (e.step_index < track.entries.back().step_index) {
        throw InputError("line " + std::to_string(reader.line_no()) +
                         ": step indices must be non-decreasing");
      }
    }
    track.entries.push_back(e);
  }
  return track;
}

std::string serialize_track_csv(const Track& track) {
  std::string out = "t,step,x,y,heading\n";
  for (const TrackEntry& e : track.entries) {
    out += format_double(e.t);
    out += ',';
    out += std::to_string(e.step_index);
    out += ',';
    out += format_double(e.pose.x);
    out += ',';
    out += format_double(e.pose.y);
    out += ',';
    out += format_double(e.pose.heading);
    out += '\n';
  }
  return out;
}

// --- evaluation outputs --------------------------------------------------------

std::string serialize_error_stats(const ErrorStats& stats, const std::string& unit) {
  json j;
  j["count"] = stats.count;
  j["minimum"] = stats.minimum;
  j["median"] = stats.median;
  j["mean"] = stats.mean;
  j["p90"] = stats.p90;
  j["maximum"] = stats.maximum;
  j["unit"] = unit;
  j["percentile_method"] = "linear interpolation between closest ranks";
  return j.dump(2) + "\n";
}

std::string serialize_cdf_csv(const CdfSeries& cdf) {
  std::string out = "error_m,cumulative_fraction\n";
  for (const auto& [error, fraction] : cdf.points) {
    out += format_double(error);
    out += ',';
    out += format_double(fraction);
    out += '\n';
  }
  return out;
}

std::string serialize_ksweep_csv(std::span<const KSweepRow> rows) {
  std::string out = "algo,k,median_error_m\n";
  for (const KSweepRow& row : rows) {
    out += to_string(row.algo);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += format_double(row.median_error);
    out += '\n';
  }
  return out;
}

// --- scenario ------------------------------------------------------------------

namespace {

void apply_sim_overrides(const json& j, SimConfig& sim) {
  if (auto it = j.find("step_length"); it != j.end()) sim.step_length = as_finite_double(*it, "sim step_length");
  if (auto it = j.find("step_frequency"); it != j.end()) sim.step_frequency = as_finite_double(*it, "sim step_frequency");
  if (auto it = j.find("imu_rate"); it != j.end()) sim.imu_rate = as_finite_double(*it, "sim imu_rate");
  if (auto it = j.find("scan_interval"); it != j.end()) sim.scan_interval = as_finite_double(*it, "sim scan_interval");
  if (auto it = j.find("rss_noise_sigma"); it != j.end()) sim.rss_noise_sigma = as_finite_double(*it, "sim rss_noise_sigma");
  if (auto it = j.find("accel_noise_sigma"); it != j.end()) sim.accel_noise_sigma = as_finite_double(*it, "sim accel_noise_sigma");
  if (auto it = j.find("gyro_bias"); it != j.end()) sim.gyro_bias = as_finite_double(*it, "sim gyro_bias");
  if (auto it = j.find("seed"); it != j.end()) sim.seed = it->get<std::uint64_t>();
  if (sim.step_length <= 0 || sim.step_frequency <= 0 || sim.imu_rate <= 0 ||
      sim.scan_interval <= 0) {
    throw InputError("sim config rates and lengths must be positive");
  }
}

}  // namespace

Scenario read_scenario(const std::filesystem::path& path) {
  json j = json_parse(read_text_file(path), "scenario");
  return guard_json("scenario", [&]() {
  Scenario sc;

  for (const json& wj : require(j, "waypoints", "scenario")) {
    if (!wj.is_array() || wj.size() != 2) throw InputError("scenario: waypoints must be [x,y]");
    sc.waypoints.push_back({as_finite_double(wj[0], "waypoint x"),
                            as_finite_double(wj[1], "waypoint y")});
  }

  for (const json& aj : require(j, "aps", "scenario")) {
    ApSpec ap;
    ap.mac = MacId(require(aj, "mac", "ap").get<std::string>());
    ap.position.x = as_finite_double(require(aj, "x", "ap"), "ap x");
    ap.position.y = as_finite_double(require(aj, "y", "ap"), "ap y");
    if (auto it = aj.find("tx_ref_dbm"); it != aj.end()) ap.tx_ref_dbm = as_finite_double(*it, "ap tx_ref_dbm");
    if (auto it = aj.find("path_loss_exponent"); it != aj.end()) ap.path_loss_exponent = as_finite_double(*it, "ap path_loss_exponent");
    if (auto it = aj.find("wall_loss_db"); it != aj.end()) ap.wall_loss_db = as_finite_double(*it, "ap wall_loss_db");
    if (ap.path_loss_exponent <= 0.0 || ap.wall_loss_db < 0.0) {
      throw InputError("ap: path_loss_exponent must be > 0 and wall_loss_db >= 0");
    }
    sc.aps.push_back(std::move(ap));
  }

  const json& fj = require(j, "floorplan", "scenario");
  if (fj.is_string()) {
    std::filesystem::path ref = fj.get<std::string>();
    if (ref.is_relative()) ref = path.parent_path() / ref;
    sc.plan = read_floorplan(ref);
  } else {
    sc.plan = parse_floorplan(fj.dump());
  }

  if (auto it = j.find("sim"); it != j.end()) apply_sim_overrides(*it, sc.sim);
  return sc;
  });
}

// --- tool config -----------------------------------------------------------------

ToolConfig parse_tool_config(const std::string& text) {
  json j = json_parse(text, "config");
  return guard_json("config", [&]() {
  ToolConfig cfg;

  if (auto it = j.find("pdr"); it != j.end()) {
    const json& p = *it;
    if (auto f = p.find("g"); f != p.end()) cfg.pdr.g = as_finite_double(*f, "pdr g");
    if (auto f = p.find("step_length"); f != p.end()) cfg.pdr.step_length = as_finite_double(*f, "pdr step_length");
    if (auto f = p.find("swing_threshold"); f != p.end()) cfg.pdr.swing_threshold = as_finite_double(*f, "pdr swing_threshold");
    if (auto f = p.find("min_step_interval"); f != p.end()) cfg.pdr.min_step_interval = as_finite_double(*f, "pdr min_step_interval");
    if (auto f = p.find("sample_rate"); f != p.end()) cfg.pdr.sample_rate = as_finite_double(*f, "pdr sample_rate");
    if (cfg.pdr.g <= 0 || cfg.pdr.step_length <= 0 || cfg.pdr.swing_threshold <= 0 ||
        cfg.pdr.min_step_interval <= 0 || cfg.pdr.sample_rate <= 0) {
      throw InputError("pdr config values must be positive");
    }
  }
  if (auto it = j.find("pf"); it != j.end()) {
    const json& p = *it;
    if (auto f = p.find("n_particles"); f != p.end()) cfg.pf.n_particles = f->get<int>();
    if (auto f = p.find("step_sigma"); f != p.end()) cfg.pf.step_sigma = as_finite_double(*f, "pf step_sigma");
    if (auto f = p.find("heading_sigma"); f != p.end()) cfg.pf.heading_sigma = as_finite_double(*f, "pf heading_sigma");
    if (auto f = p.find("resample_fraction"); f != p.end()) cfg.pf.resample_fraction = as_finite_double(*f, "pf resample_fraction");
    if (cfg.pf.n_particles < 10 || cfg.pf.step_sigma < 0 || cfg.pf.heading_sigma < 0 ||
        cfg.pf.resample_fraction <= 0 || cfg.pf.resample_fraction >= 1) {
      throw InputError("pf config requires n_particles >= 10, sigmas >= 0, 0 < resample_fraction < 1");
    }
  }
  if (auto it = j.find("merge"); it != j.end()) {
    const json& p = *it;
    if (auto f = p.find("d_min"); f != p.end()) cfg.merge.d_min = as_finite_double(*f, "merge d_min");
    if (auto f = p.find("d_max"); f != p.end()) cfg.merge.d_max = as_finite_double(*f, "merge d_max");
    if (auto f = p.find("rss_threshold"); f != p.end()) cfg.merge.rss_threshold = as_finite_double(*f, "merge rss_threshold");
    if (auto f = p.find("sensitivity_floor"); f != p.end()) cfg.merge.sensitivity_floor = as_finite_double(*f, "merge sensitivity_floor");
    if (!(cfg.merge.d_min > 0 && cfg.merge.d_min < cfg.merge.d_max && cfg.merge.rss_threshold > 0)) {
      throw InputError("merge config requires 0 < d_min < d_max and rss_threshold > 0");
    }
  }
  if (auto it = j.find("localizer"); it != j.end()) {
    const json& p = *it;
    if (auto f = p.find("algorithm"); f != p.end()) cfg.localizer.algorithm = localizer_algo_from_string(f->get<std::string>());
    if (auto f = p.find("k"); f != p.end()) cfg.localizer.k = f->get<int>();
    if (auto f = p.find("missing_fill"); f != p.end()) cfg.localizer.missing_fill = as_finite_double(*f, "localizer missing_fill");
    if (auto f = p.find("bayes_sigma"); f != p.end()) cfg.localizer.bayes_sigma = as_finite_double(*f, "localizer bayes_sigma");
    if (cfg.localizer.k < 1 || cfg.localizer.bayes_sigma <= 0) {
      throw InputError("localizer config requires k >= 1 and bayes_sigma > 0");
    }
  }
  if (auto it = j.find("sim"); it != j.end()) apply_sim_overrides(*it, cfg.sim);
  return cfg;
  });
}

ToolConfig read_tool_config(const std::filesystem::path& path) {
  return parse_tool_config(read_text_file(path));
}

// --- files -------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InputError("failed while writing '" + path.string() + "'");
}

RadioMap read_radio_map(const std::filesystem::path& path) {
  return parse_radio_map(read_text_file(path));
}
void write_radio_map(const std::filesystem::path& path, const RadioMap& map) {
  write_text_file(path, serialize_radio_map(map));
}

Floorplan read_floorplan(const std::filesystem::path& path) {
  return parse_floorplan(read_text_file(path));
}
void write_floorplan(const std::filesystem::path& path, const Floorplan& plan) {
  write_text_file(path, serialize_floorplan(plan));
}

std::vector<WifiScan> read_scans_csv(const std::filesystem::path& path) {
  return parse_scans_csv(read_text_file(path));
}
void write_scans_csv(const std::filesystem::path& path, std::span<const WifiScan> scans) {
  write_text_file(path, serialize_scans_csv(scans));
}

std::vector<ImuSample> read_imu_csv(const std::filesystem::path& path) {
  return parse_imu_csv(read_text_file(path));
}
void write_imu_csv(const std::filesystem::path& path, std::span<const ImuSample> samples) {
  write_text_file(path, serialize_imu_csv(samples));
}

Track read_track_csv(const std::filesystem::path& path) {
  return parse_track_csv(read_text_file(path));
}
void write_track_csv(const std::filesystem::path& path, const Track& track) {
  write_text_file(path, serialize_track_csv(track));
}

}  // namespace dynamap
