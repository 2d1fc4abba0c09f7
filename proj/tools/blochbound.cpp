#include "bloch/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

bloch::Rat parse_rat(const std::string& s) {
  try {
    bloch::Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw bloch::error("bad rational literal: " + s);
  }
}

// "a=3/2,b=7" on top of the seeded draw.
std::map<std::string, bloch::Rat> resolve_params(const bloch::Pipeline& pl,
                                                 const std::string& arg,
                                                 unsigned long long seed) {
  std::set<std::string> syms;
  pl.phi.collect_symbols(syms);
  auto params = bloch::draw_params(syms, seed);
  size_t pos = 0;
  while (pos < arg.size()) {
    size_t comma = arg.find(',', pos);
    if (comma == std::string::npos) comma = arg.size();
    std::string item = arg.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw bloch::error("bad --params entry: " + item);
    std::string name = item.substr(0, eq);
    if (!syms.count(name)) throw bloch::error("unknown parameter symbol: " + name);
    params[name] = parse_rat(item.substr(eq + 1));
  }
  return params;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw bloch::error("cannot write " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersion polynomials, Newton polytope faces, and certified "
               "critical point bounds for periodic graphs"};
  app.require_subcommand(1);

  std::string input, emit_dot, emit_off, params_arg, out_path;
  unsigned long long seed = 12345;
  int draws = 10;
  bool refine = false, as_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "graph JSON file")->required();
    sub->add_option("--seed", seed, "seed for parameter draws (env BLOCH_SEED overrides)");
    return sub;
  };

  CLI::App* c_disp = add_common(app.add_subcommand(
      "dispersion", "cycle covers and the dispersion polynomial"));
  c_disp->add_flag("--json", as_json, "JSON output");

  CLI::App* c_poly = add_common(app.add_subcommand("polytope", "Newton polytope summary"));
  c_poly->add_flag("--json", as_json, "JSON output");
  c_poly->add_option("--emit-off", emit_off, "write the polytope as an OFF mesh (d = 2 only)");

  CLI::App* c_faces = add_common(app.add_subcommand(
      "faces", "face lattice with classes and initial data"));
  c_faces->add_flag("--json", as_json, "JSON output");
  c_faces->add_option("--emit-dot", emit_dot,
                      "directory for per-face initial graph DOT files");

  CLI::App* c_bounds = add_common(app.add_subcommand(
      "bounds", "certified upper and lower critical point bounds"));
  c_bounds->add_flag("--json", as_json, "JSON output");
  c_bounds->add_flag("--refine", refine, "refine boundary multiplicities where possible");
  c_bounds->add_option("--draws", draws, "independent draws that must agree")
      ->check(CLI::Range(1, 1000));

  CLI::App* c_corners = add_common(app.add_subcommand(
      "corners", "corner spectrum against the critical point system"));
  c_corners->add_flag("--json", as_json, "JSON output");
  c_corners->add_option("--params", params_arg, "overrides, e.g. a=3/2,b=7");

  CLI::App* c_report = add_common(app.add_subcommand("report", "full JSON report"));
  c_report->add_flag("--refine", refine, "refine boundary multiplicities where possible");
  c_report->add_option("--draws", draws, "independent draws that must agree")
      ->check(CLI::Range(1, 1000));
  c_report->add_option("--out", out_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  if (const char* env = std::getenv("BLOCH_SEED")) seed = std::strtoull(env, nullptr, 10);

  try {
    bloch::Pipeline pl(bloch::parse_graph_file(input));

    if (c_disp->parsed()) {
      if (as_json) {
        std::cout << bloch::dispersion_json(pl).dump(2) << "\n";
      } else {
        auto j = bloch::dispersion_json(pl);
        std::cout << "cycle covers: " << j["cycle_covers"] << "\n"
                  << "terms: " << j["num_terms"] << "\n"
                  << "Phi = " << pl.phi.str() << "\n";
      }
    } else if (c_poly->parsed()) {
      if (!emit_off.empty()) write_file(emit_off, bloch::off_string(pl.poly));
      auto j = bloch::polytope_json(pl);
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "dim " << j["dim"] << " polytope in Z^" << j["ambient_dim"] << "\n"
                  << "support points: " << j["num_support_points"]
                  << ", vertices: " << j["num_vertices"] << ", faces: " << j["num_faces"]
                  << "\n"
                  << "nvol = " << j["nvol"] << ", ambient index = " << j["ambient_index"]
                  << "\n"
                  << "face classes: " << j["face_counts"].dump() << "\n"
                  << "euler check: " << (j["euler_check"].get<bool>() ? "ok" : "FAILED")
                  << "\n";
      }
    } else if (c_faces->parsed()) {
      bloch::BoundsReport rep = bloch::compute_bounds(pl.g, seed, draws, false);
      if (!emit_dot.empty()) {
        std::filesystem::create_directories(emit_dot);
        for (const auto& f : pl.poly.faces()) {
          std::string path = emit_dot + "/face_" + std::to_string(f.id) + ".dot";
          write_file(path, bloch::face_initial_dot(pl, f.id));
        }
      }
      if (as_json) {
        std::cout << bloch::faces_json(pl, rep).dump(2) << "\n";
      } else {
        for (const auto& fs : rep.face_summaries) {
          std::cout << "face " << fs.id << ": dim " << fs.dim << ", "
                    << bloch::face_class_name(fs.cls) << ", normal (";
          for (size_t i = 0; i < fs.normal.size(); ++i)
            std::cout << (i ? "," : "") << fs.normal[i];
          std::cout << "), nvol " << fs.nvol.get_str();
          if (fs.has_mu) std::cout << ", mu " << fs.mu.get_str();
          if (fs.disconnected) std::cout << ", asymptotically disconnected";
          std::cout << "\n";
        }
      }
    } else if (c_bounds->parsed()) {
      bloch::BoundsReport rep = bloch::compute_bounds(pl.g, seed, draws, refine);
      if (as_json) {
        std::cout << bloch::bounds_json(rep).dump(2) << "\n";
      } else {
        std::cout << "nvol = " << rep.nvol.get_str() << "\n"
                  << "ambient index = " << rep.ambient_index << "\n"
                  << "N_vert = " << rep.n_vert.get_str()
                  << (rep.facet_only ? " (facet path)" : " (orbit path)") << "\n"
                  << "N_disc = " << rep.n_disc.get_str() << "\n"
                  << "cpdeg upper bound = " << rep.cpdeg_upper.get_str() << "\n"
                  << "corner lower bound = " << rep.corner_lower.get_str() << "\n";
        if (rep.refined)
          std::cout << "refined disc total = " << rep.refined_disc.get_str()
                    << ", refined upper bound = " << rep.cpdeg_upper_refined.get_str()
                    << "\n";
        if (!rep.flags.empty()) {
          std::cout << "flags:";
          for (const auto& f : rep.flags) std::cout << " " << f;
          std::cout << "\n";
        }
        std::cout << "valid: " << (rep.bound_valid ? "yes" : "no") << "\n";
      }
    } else if (c_corners->parsed()) {
      auto params = resolve_params(pl, params_arg, seed);
      auto j = bloch::corners_json(pl, params);
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "params:";
        for (auto& [k, v] : params) std::cout << " " << k << "=" << bloch::rat_str(v);
        std::cout << "\n";
        for (auto& p : j["points"]) {
          std::cout << "z = (";
          for (size_t i = 0; i < p["z"].size(); ++i)
            std::cout << (i ? "," : "") << p["z"][i].get<double>();
          std::cout << "), lambda = " << p["lambda"].get<double>()
                    << ", rel residual = " << p["relative_residual"].get<double>() << "\n";
        }
        std::cout << "max relative residual = "
                  << j["max_relative_residual"].get<double>() << " (tol "
                  << j["tolerance"].get<double>() << ")\n"
                  << (j["all_within_tolerance"].get<bool>() ? "all corners check out"
                                                            : "TOLERANCE EXCEEDED")
                  << "\n";
      }
    } else if (c_report->parsed()) {
      auto j = bloch::build_report(pl, seed, draws, refine);
      if (out_path.empty())
        std::cout << j.dump(2) << "\n";
      else
        write_file(out_path, j.dump(2) + "\n");
    }
  } catch (const bloch::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
