// dynamap command line: simulate walks, recover tracks, build radio maps,
// localize against them and evaluate the results.
//
// Exit codes: 0 success, 2 input/format error, 3 algorithmic failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dynamap/errors.hpp"
#include "dynamap/eval.hpp"
#include "dynamap/io.hpp"
#include "dynamap/localizer.hpp"
#include "dynamap/mapbuilder.hpp"
#include "dynamap/pdr.hpp"
#include "dynamap/pf.hpp"
#include "dynamap/simulator.hpp"

namespace fs = std::filesystem;
using namespace dynamap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitAlgorithm = 3;

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_path;
  ToolConfig cfg;  // defaults, overlaid by --config before a subcommand runs
};

// Returns the flag value when the user passed it, otherwise the config value.
template <typename T>
T pick(const CLI::Option* opt, const T& flag_value, const T& config_value) {
  return opt->count() > 0 ? flag_value : config_value;
}

void add_simulate(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand("simulate",
                                "Generate IMU, scan and truth-track files from a scenario");
  struct Opts {
    std::string scenario;
    std::string out_dir = ".";
    bool static_map = false;
    double grid_spacing = 2.0;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--scenario", opts->scenario, "Scenario JSON file")->required();
  sc->add_option("--out-dir", opts->out_dir, "Output directory");
  sc->add_flag("--static-map", opts->static_map, "Also emit a grid static_map.json");
  sc->add_option("--grid-spacing", opts->grid_spacing, "Static map grid spacing in m");

  sc->callback([&global, opts]() {
    Scenario scenario = read_scenario(opts->scenario);
    if (global.seed_given) scenario.sim.seed = global.seed;

    Track truth = gen_walk(scenario.waypoints, scenario.sim);
    std::vector<ImuSample> imu = synth_imu(truth, scenario.sim);
    std::vector<WifiScan> scans =
        scans_along_track(truth, scenario.aps, scenario.plan, scenario.sim);

    fs::path dir(opts->out_dir);
    fs::create_directories(dir);
    write_track_csv(dir / "truth_track.csv", truth);
    write_imu_csv(dir / "imu.csv", imu);
    write_scans_csv(dir / "scans.csv", scans);
    if (opts->static_map) {
      RadioMap grid = gen_static_map(scenario.plan, scenario.aps, opts->grid_spacing,
                                     scenario.sim);
      write_radio_map(dir / "static_map.json", grid);
    }
    std::cerr << "simulate: " << truth.size() - 1 << " steps, " << imu.size() << " IMU samples, "
              << scans.size() << " scans\n";
  });
}

void add_pdr(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand("pdr", "Recover a track by dead reckoning alone");
  struct Opts {
    std::string imu;
    std::string out;
    double start_x = 0.0, start_y = 0.0, start_heading = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--imu", opts->imu, "IMU CSV log")->required();
  sc->add_option("--out", opts->out, "Output track CSV")->required();
  sc->add_option("--start-x", opts->start_x, "Start x in m");
  sc->add_option("--start-y", opts->start_y, "Start y in m");
  sc->add_option("--start-heading", opts->start_heading, "Start heading in rad");

  sc->callback([&global, opts]() {
    std::vector<ImuSample> samples = read_imu_csv(opts->imu);
    Track track = run_pdr(samples, {opts->start_x, opts->start_y, opts->start_heading},
                          global.cfg.pdr);
    write_track_csv(opts->out, track);
    std::cerr << "pdr: " << track.size() - 1 << " steps\n";
  });
}

void add_pf_pdr(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand("pf-pdr", "Recover a track with the map-matched particle filter");
  struct Opts {
    std::string imu;
    std::string plan;
    std::string out;
    double start_x = 0.0, start_y = 0.0, start_heading = 0.0;
    int particles = 0;
    double step_sigma = 0.0, heading_sigma = 0.0, resample_fraction = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--imu", opts->imu, "IMU CSV log")->required();
  sc->add_option("--plan", opts->plan, "Floorplan JSON")->required();
  sc->add_option("--out", opts->out, "Output track CSV")->required();
  sc->add_option("--start-x", opts->start_x, "Start x in m");
  sc->add_option("--start-y", opts->start_y, "Start y in m");
  sc->add_option("--start-heading", opts->start_heading, "Start heading in rad");
  auto* o_n = sc->add_option("--particles", opts->particles, "Particle count");
  auto* o_ss = sc->add_option("--step-sigma", opts->step_sigma, "Step length noise in m");
  auto* o_hs = sc->add_option("--heading-sigma", opts->heading_sigma, "Heading noise in rad");
  auto* o_rf = sc->add_option("--resample-fraction", opts->resample_fraction,
                              "Resample when ESS < fraction * N");

  sc->callback([&global, opts, o_n, o_ss, o_hs, o_rf]() {
    std::vector<ImuSample> samples = read_imu_csv(opts->imu);
    Floorplan plan = read_floorplan(opts->plan);

    PfConfig pf_cfg = global.cfg.pf;
    pf_cfg.n_particles = pick(o_n, opts->particles, pf_cfg.n_particles);
    pf_cfg.step_sigma = pick(o_ss, opts->step_sigma, pf_cfg.step_sigma);
    pf_cfg.heading_sigma = pick(o_hs, opts->heading_sigma, pf_cfg.heading_sigma);
    pf_cfg.resample_fraction = pick(o_rf, opts->resample_fraction, pf_cfg.resample_fraction);

    Track track = run_pf_pdr(samples, {opts->start_x, opts->start_y, opts->start_heading}, plan,
                             global.cfg.pdr, pf_cfg, global.seed);
    write_track_csv(opts->out, track);
    std::cerr << "pf-pdr: " << track.size() - 1 << " steps, " << pf_cfg.n_particles
              << " particles\n";
  });
}

void add_build_map(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand("build-map", "Build a dynamic radio map from a track and scans");
  struct Opts {
    std::string track;
    std::string scans;
    std::string out;
    int floor = 0;
    bool no_merge = false;
    double d_min = 0.0, d_max = 0.0, rss_threshold = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--track", opts->track, "Recovered track CSV")->required();
  sc->add_option("--scans", opts->scans, "Scan CSV log")->required();
  sc->add_option("--out", opts->out, "Output radio map JSON")->required();
  sc->add_option("--floor", opts->floor, "Floor index stored on the reference points");
  sc->add_flag("--no-merge", opts->no_merge, "Emit the raw pre-merge map");
  auto* o_dmin = sc->add_option("--d-min", opts->d_min, "Unconditional merge distance in m");
  auto* o_dmax = sc->add_option("--d-max", opts->d_max, "Never-merge distance in m");
  auto* o_thr = sc->add_option("--rss-threshold", opts->rss_threshold,
                               "Similarity threshold in dB");

  sc->callback([&global, opts, o_dmin, o_dmax, o_thr]() {
    Track track = read_track_csv(opts->track);
    std::vector<WifiScan> scans = read_scans_csv(opts->scans);

    MergeConfig merge_cfg = global.cfg.merge;
    merge_cfg.d_min = pick(o_dmin, opts->d_min, merge_cfg.d_min);
    merge_cfg.d_max = pick(o_dmax, opts->d_max, merge_cfg.d_max);
    merge_cfg.rss_threshold = pick(o_thr, opts->rss_threshold, merge_cfg.rss_threshold);

    std::vector<std::string> warnings;
    RadioMap map = assign_reference_points(track, scans, opts->floor, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

    std::size_t raw_count = map.points.size();
    if (!opts->no_merge) {
      std::vector<std::string> decisions;
      map = merge_radio_map(std::move(map), merge_cfg, &decisions);
      for (const std::string& line : decisions) std::cerr << line << "\n";
    }
    write_radio_map(opts->out, map);
    std::cerr << "build-map: " << raw_count << " raw -> " << map.points.size()
              << " reference points\n";
  });
}

void add_localize(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand("localize", "Estimate positions for each query scan");
  struct Opts {
    std::string map;
    std::string query;
    std::string out;
    std::string algo = "knn";
    int k = 0;
    double fill = 0.0, sigma = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--map", opts->map, "Radio map JSON")->required();
  sc->add_option("--query", opts->query, "Query scan CSV")->required();
  sc->add_option("--out", opts->out, "Output CSV (default stdout)");
  auto* o_algo = sc->add_option("--algo", opts->algo, "nn | knn | wknn | bayes");
  auto* o_k = sc->add_option("--k", opts->k, "Neighbor count for knn/wknn");
  auto* o_fill = sc->add_option("--fill", opts->fill, "Fill dBm for undetected APs");
  auto* o_sigma = sc->add_option("--sigma", opts->sigma, "Bayes likelihood sigma in dB");

  sc->callback([&global, opts, o_algo, o_k, o_fill, o_sigma]() {
    RadioMap map = read_radio_map(opts->map);
    std::vector<WifiScan> queries = read_scans_csv(opts->query);

    LocalizerConfig cfg = global.cfg.localizer;
    if (o_algo->count() > 0) cfg.algorithm = localizer_algo_from_string(opts->algo);
    cfg.k = pick(o_k, opts->k, cfg.k);
    cfg.missing_fill = pick(o_fill, opts->fill, cfg.missing_fill);
    cfg.bayes_sigma = pick(o_sigma, opts->sigma, cfg.bayes_sigma);

    int reported_k = (cfg.algorithm == LocalizerAlgo::knn || cfg.algorithm == LocalizerAlgo::wknn)
                         ? cfg.k
                         : 1;
    std::string out = "t,x,y,floor,algo,k\n";
    for (const WifiScan& scan : queries) {
      PositionEstimate est = localize(scan.readings, map, cfg);
      out += format_double(scan.t);
      out += ',';
      out += format_double(est.position.x);
      out += ',';
      out += format_double(est.position.y);
      out += ',';
      out += std::to_string(est.floor);
      out += ',';
      out += to_string(cfg.algorithm);
      out += ',';
      out += std::to_string(reported_k);
      out += '\n';
    }
    if (opts->out.empty()) {
      std::cout << out;
    } else {
      write_text_file(opts->out, out);
    }
  });
}

void add_evaluate(CLI::App& app, GlobalOpts&) {
  auto* sc = app.add_subcommand("evaluate", "Compare an estimated track against ground truth");
  struct Opts {
    std::string estimated;
    std::string truth;
    std::string out_stats;
    std::string out_cdf;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--estimated", opts->estimated, "Estimated track CSV")->required();
  sc->add_option("--truth", opts->truth, "Ground-truth track CSV")->required();
  sc->add_option("--out-stats", opts->out_stats, "Summary JSON path")->required();
  sc->add_option("--out-cdf", opts->out_cdf, "Error CDF CSV path");

  sc->callback([opts]() {
    Track estimated = read_track_csv(opts->estimated);
    Track truth = read_track_csv(opts->truth);
    std::vector<std::string> diags;
    std::vector<double> errors = track_errors(estimated, truth, &diags);
    for (const std::string& d : diags) std::cerr << "warning: " << d << "\n";

    write_text_file(opts->out_stats, serialize_error_stats(error_stats(errors), "m"));
    if (!opts->out_cdf.empty()) {
      write_text_file(opts->out_cdf, serialize_cdf_csv(error_cdf(errors)));
    }
  });
}

void add_k_sweep(CLI::App& app, GlobalOpts& global) {
  auto* sc = app.add_subcommand(
      "k-sweep", "Median localization error per K for the knn and wknn estimators");
  struct Opts {
    std::string map;
    std::string scans;
    std::string truth;
    std::string out;
    int k_min = 1;
    int k_max = 6;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--map", opts->map, "Radio map JSON")->required();
  sc->add_option("--scans", opts->scans, "Query scan CSV")->required();
  sc->add_option("--truth", opts->truth, "Truth track CSV giving query positions")->required();
  sc->add_option("--out", opts->out, "Output CSV")->required();
  sc->add_option("--k-min", opts->k_min, "Smallest K");
  sc->add_option("--k-max", opts->k_max, "Largest K");

  sc->callback([&global, opts]() {
    if (opts->k_min < 1 || opts->k_max < opts->k_min) {
      throw InputError("k-sweep requires 1 <= k-min <= k-max");
    }
    RadioMap map = read_radio_map(opts->map);
    std::vector<WifiScan> scans = read_scans_csv(opts->scans);
    Track truth = read_track_csv(opts->truth);

    // Pair each scan with the truth position interpolated at the scan time.
    std::vector<LocalizationQuery> queries;
    queries.reserve(scans.size());
    for (const WifiScan& scan : scans) {
      double t = std::clamp(scan.t, truth.entries.front().t, truth.entries.back().t);
      std::size_t idx = 0;
      while (idx + 1 < truth.entries.size() && truth.entries[idx + 1].t <= t) ++idx;
      Vec2 pos;
      if (idx + 1 >= truth.entries.size()) {
        pos = truth.entries.back().pose.position();
      } else {
        const TrackEntry& a = truth.entries[idx];
        const TrackEntry& b = truth.entries[idx + 1];
        double f = (t - a.t) / (b.t - a.t);
        pos = a.pose.position() + f * (b.pose.position() - a.pose.position());
      }
      queries.emplace_back(scan.readings, pos);
    }

    std::vector<LocalizerAlgo> algos{LocalizerAlgo::knn, LocalizerAlgo::wknn};
    std::vector<int> ks;
    for (int k = opts->k_min; k <= opts->k_max; ++k) ks.push_back(k);

    auto rows = k_sweep(map, queries, algos, ks, global.cfg.localizer);
    write_text_file(opts->out, serialize_ksweep_csv(rows));
  });
}

void add_compare_maps(CLI::App& app, GlobalOpts&) {
  auto* sc = app.add_subcommand(
      "compare-maps", "RSS difference statistics between a dynamic and a static radio map");
  struct Opts {
    std::string dynamic_map;
    std::string static_map;
    std::string out;
  };
  auto opts = std::make_shared<Opts>();
  sc->add_option("--dynamic", opts->dynamic_map, "Dynamic radio map JSON")->required();
  sc->add_option("--static", opts->static_map, "Static reference radio map JSON")->required();
  sc->add_option("--out", opts->out, "Summary JSON path")->required();

  sc->callback([opts]() {
    RadioMap dynamic_map = read_radio_map(opts->dynamic_map);
    RadioMap static_map = read_radio_map(opts->static_map);
    std::vector<StaticReference> refs;
    refs.reserve(static_map.points.size());
    for (const ReferencePoint& rp : static_map.points) {
      refs.emplace_back(rp.position, rp.fingerprint);
    }
    ErrorStats stats = compare_fingerprints(dynamic_map, refs);
    write_text_file(opts->out, serialize_error_stats(stats, "dB"));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic radio map construction and fingerprinting evaluation"};
  app.require_subcommand(1);

  GlobalOpts global;
  auto* seed_opt = app.add_option("--seed", global.seed, "Seed for all randomness");
  app.add_option("--config", global.config_path, "JSON config overriding module defaults");

  add_simulate(app, global);
  add_pdr(app, global);
  add_pf_pdr(app, global);
  add_build_map(app, global);
  add_localize(app, global);
  add_evaluate(app, global);
  add_k_sweep(app, global);
  add_compare_maps(app, global);

  // Load the config before subcommand callbacks run.
  app.parse_complete_callback([&global, seed_opt]() {
    global.seed_given = seed_opt->count() > 0;
    if (!global.config_path.empty()) global.cfg = read_tool_config(global.config_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParticleFilterCollapse& e) {
    std::cerr << "error: particle filter collapse at step " << e.step_index << "\n";
    return kExitAlgorithm;
  } catch (const AlgorithmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlgorithm;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
