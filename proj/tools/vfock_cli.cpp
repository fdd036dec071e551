// vfock command-line front end. All numerics go through the C API; this
// file only handles arguments, config merging and writing the artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vfock/vfock.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitInternal = 7;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<unsigned long long> seed;
  std::optional<std::size_t> grid_points;
  std::optional<double> r_max;
  std::optional<std::size_t> truncation;
  std::optional<double> slope_tol;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--grid-points", o.grid_points, "number of grid points");
  cmd->add_option("--r-max", o.r_max, "largest grid radius");
  cmd->add_option("--truncation", o.truncation, "Taylor truncation degree");
  cmd->add_option("--slope-tol", o.slope_tol, "slope tolerance of the verdict rule");
}

// Reads --config and applies flag overrides. Throws std::runtime_error with a
// message suitable for the user.
json load_config(const Overrides& o) {
  json j = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw std::runtime_error("config: cannot open '" + o.config_path + "'");
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config: expected a JSON object");
  }
  if (o.out) j["output_dir"] = *o.out;
  if (o.seed) j["seed"] = *o.seed;
  if (o.truncation) j["truncation"] = *o.truncation;
  if (o.grid_points || o.r_max) {
    if (!j.contains("grid") || !j["grid"].is_object()) j["grid"] = json::object();
    if (o.grid_points) j["grid"]["points"] = *o.grid_points;
    if (o.r_max) j["grid"]["r_max"] = *o.r_max;
  }
  if (o.slope_tol) {
    if (!j.contains("tolerances") || !j["tolerances"].is_object()) j["tolerances"] = json::object();
    j["tolerances"]["slope_tol"] = *o.slope_tol;
  }
  return j;
}

std::string output_dir(const json& config) {
  if (config.contains("output_dir") && config["output_dir"].is_string()) {
    return config["output_dir"].get<std::string>();
  }
  return ".";
}

// Every artifact goes to a temp file first; renames happen only once all
// writes succeeded.
bool write_artifacts(const vf_run* run, const std::string& dir) {
  const std::size_t n = vf_run_artifact_count(run);
  if (n == 0) return true;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << dir << "': " << ec.message() << "\n";
    return false;
  }
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    for (const auto& [tmp, dst] : staged) fs::remove(tmp, ec);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const fs::path dst = fs::path(dir) / vf_run_artifact_name(run, i);
    fs::path tmp = dst;
    tmp += ".tmp";
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    const std::string content = vf_run_artifact_content(run, i);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    staged.emplace_back(tmp, dst);
    if (!f) {
      std::cerr << "error: cannot write '" << tmp.string() << "'\n";
      cleanup();
      return false;
    }
  }
  for (const auto& [tmp, dst] : staged) {
    fs::rename(tmp, dst, ec);
    if (ec) {
      std::cerr << "error: cannot rename to '" << dst.string() << "': " << ec.message() << "\n";
      cleanup();
      return false;
    }
  }
  return true;
}

int finish(vf_status st, vf_run* run, const std::string& dir) {
  if (st != VF_OK) {
    std::cerr << "error: " << vf_last_error() << "\n";
    return st == VF_E_CONFIG || st == VF_E_PARAMETER ? kExitBadConfig : kExitInternal;
  }
  const int code = vf_run_exit_code(run);
  std::string msg = vf_run_message(run);
  while (!msg.empty() && msg.back() == '\n') msg.pop_back();
  if (!msg.empty()) (code == 0 ? std::cout : std::cerr) << msg << "\n";
  const bool ok = write_artifacts(run, dir);
  vf_run_free(run);
  return ok ? code : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundedness and compactness of Volterra operators on weighted spaces of entire functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vf_version()));

  Overrides o;

  auto* weight_check = app.add_subcommand("weight-check", "check weight hypotheses");
  add_common(weight_check, o);

  std::string op = "volterra";
  auto* classify = app.add_subcommand("classify", "classify V_g or M_h");
  add_common(classify, o);
  classify->add_option("--operator", op, "volterra or mult")->check(CLI::IsMember({"volterra", "mult"}));

  double alpha = 1.0;
  std::vector<double> p_list{1.0, 2.0, 3.0};
  int max_deg = 5;
  auto* table = app.add_subcommand("corollary-table", "verdict matrix for exponential weights");
  add_common(table, o);
  table->add_option("--alpha", alpha, "weight coefficient");
  table->add_option("--p", p_list, "exponents")->delimiter(',');
  table->add_option("--max-deg", max_deg, "largest symbol degree")->check(CLI::NonNegativeNumber);

  auto* lp = app.add_subcommand("lp-check", "norm equivalence ratios on seeded polynomials");
  add_common(lp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadConfig;
  }

  json config;
  try {
    config = load_config(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  const std::string text = config.dump();
  const std::string dir = output_dir(config);

  vf_run* run = nullptr;
  vf_status st = VF_OK;
  if (*weight_check) {
    st = vf_cmd_weight_check(text.c_str(), &run);
  } else if (*classify) {
    if (!classify->count("--operator") && config.contains("operator") && config["operator"].is_string()) {
      op = config["operator"].get<std::string>();
    }
    st = vf_cmd_classify(text.c_str(), op.c_str(), &run);
  } else if (*table) {
    st = vf_cmd_corollary_table(alpha, p_list.data(), p_list.size(), max_deg, text.c_str(), &run);
  } else {
    st = vf_cmd_lp_check(text.c_str(), &run);
  }
  return finish(st, run, dir);
}
