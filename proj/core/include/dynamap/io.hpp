#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dynamap/eval.hpp"
#include "dynamap/localizer.hpp"
#include "dynamap/mapbuilder.hpp"
#include "dynamap/pdr.hpp"
#include "dynamap/pf.hpp"
#include "dynamap/simulator.hpp"
#include "dynamap/types.hpp"

// File formats. All serializers are canonical: shortest round-trip number
// formatting, fixed key order, one trailing newline — so parse -> serialize
// reproduces a serializer-produced file byte for byte.

namespace dynamap {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// --- radio map JSON: {provenance, points:[{id, x, y, floor, sample_count, fingerprint}]}
RadioMap parse_radio_map(const std::string& text);
std::string serialize_radio_map(const RadioMap& map);
RadioMap read_radio_map(const std::filesystem::path& path);
void write_radio_map(const std::filesystem::path& path, const RadioMap& map);

// --- floorplan JSON: {bounds:{xmin,ymin,xmax,ymax}, walls:[[x1,y1,x2,y2],...]}
Floorplan parse_floorplan(const std::string& text);
std::string serialize_floorplan(const Floorplan& plan);
Floorplan read_floorplan(const std::filesystem::path& path);
void write_floorplan(const std::filesystem::path& path, const Floorplan& plan);

// --- scan log CSV: header `t,mac,rss`; rows sharing one t form one scan
std::vector<WifiScan> parse_scans_csv(const std::string& text);
std::string serialize_scans_csv(std::span<const WifiScan> scans);
std::vector<WifiScan> read_scans_csv(const std::filesystem::path& path);
void write_scans_csv(const std::filesystem::path& path, std::span<const WifiScan> scans);

// --- IMU log CSV: header `t,ax,ay,az,wx,wy,wz`, strictly increasing t
std::vector<ImuSample> parse_imu_csv(const std::string& text);
std::string serialize_imu_csv(std::span<const ImuSample> samples);
std::vector<ImuSample> read_imu_csv(const std::filesystem::path& path);
void write_imu_csv(const std::filesystem::path& path, std::span<const ImuSample> samples);

// --- track CSV: header `t,step,x,y,heading`
Track parse_track_csv(const std::string& text);
std::string serialize_track_csv(const Track& track);
Track read_track_csv(const std::filesystem::path& path);
void write_track_csv(const std::filesystem::path& path, const Track& track);

// --- evaluation outputs
std::string serialize_error_stats(const ErrorStats& stats, const std::string& unit);
std::string serialize_cdf_csv(const CdfSeries& cdf);
std::string serialize_ksweep_csv(std::span<const KSweepRow> rows);

// --- simulation scenario: waypoints, APs, floorplan (inline or a path
// relative to the scenario file), and SimConfig overrides
struct Scenario {
  std::vector<Vec2> waypoints;
  std::vector<ApSpec> aps;
  Floorplan plan;
  SimConfig sim;
};

Scenario read_scenario(const std::filesystem::path& path);

// --- tool configuration file (JSON object with optional sections pdr, pf,
// merge, localizer, sim; each section overrides individual defaults)
struct ToolConfig {
  PdrConfig pdr;
  PfConfig pf;
  MergeConfig merge;
  LocalizerConfig localizer;
  SimConfig sim;
};

ToolConfig parse_tool_config(const std::string& text);
ToolConfig read_tool_config(const std::filesystem::path& path);

// Slurp / dump helpers shared by the CLI.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dynamap
