#include "bloch/report.hpp"

#include <algorithm>

namespace bloch {

using nlohmann::ordered_json;

Pipeline::Pipeline(PeriodicGraph gg)
    : g(std::move(gg)), q(build_quotient_graph(g)), phi(dispersion_polynomial(q)),
      poly(phi.support()) {}

ordered_json json_int(const Int& v) {
  if (v.fits_slong_p()) return (long long)v.get_si();
  return v.get_str();
}

ordered_json dispersion_json(const Pipeline& pl) {
  ordered_json j;
  j["cycle_covers"] = cycle_covers(pl.q).size();
  j["polynomial"] = pl.phi.str();
  j["num_terms"] = pl.phi.num_terms();
  long long ldeg = 0;
  for (auto& [e, c] : pl.phi.terms()) ldeg = std::max<long long>(ldeg, e.back());
  j["lambda_degree"] = ldeg;
  std::set<std::string> syms;
  pl.phi.collect_symbols(syms);
  j["symbols"] = std::vector<std::string>(syms.begin(), syms.end());
  return j;
}

ordered_json polytope_json(const Pipeline& pl) {
  const NewtonPolytope& p = pl.poly;
  ordered_json j;
  j["ambient_dim"] = p.ambient_dim();
  j["dim"] = p.dim();
  j["num_support_points"] = p.points().size();
  j["num_vertices"] = p.vertices().size();
  j["num_faces"] = p.faces().size();
  j["nvol"] = json_int(p.nvol());
  j["ambient_index"] = p.ambient_index();
  j["euler_check"] = p.euler_sum() == 1;
  int nb = 0, nv = 0, no = 0;
  for (const Face& f : p.faces()) {
    switch (p.classify(f)) {
      case FaceClass::Base: ++nb; break;
      case FaceClass::Vertical: ++nv; break;
      case FaceClass::Oblique: ++no; break;
      case FaceClass::Whole: break;
    }
  }
  j["face_counts"] = {{"base", nb}, {"vertical", nv}, {"oblique", no}};
  return j;
}

ordered_json faces_json(const Pipeline& pl, const BoundsReport& rep) {
  ordered_json arr = ordered_json::array();
  for (const FaceSummary& fs : rep.face_summaries) {
    ordered_json j;
    j["id"] = fs.id;
    j["dim"] = fs.dim;
    j["class"] = face_class_name(fs.cls);
    j["normal"] = fs.normal;
    j["num_points"] = pl.poly.face(fs.id).points.size();
    j["nvol"] = json_int(fs.nvol);
    j["sat_index"] = fs.sat_index;
    if (fs.has_mu) j["mu"] = json_int(fs.mu);
    if (fs.cls == FaceClass::Oblique && fs.dim == 2) {
      j["disconnected"] = fs.disconnected;
      j["nonmonomial_components"] = fs.nonmonomial_components;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json bounds_json(const BoundsReport& rep) {
  ordered_json j;
  j["nvol"] = json_int(rep.nvol);
  j["ambient_index"] = rep.ambient_index;
  j["facet_only"] = rep.facet_only;
  j["n_vert"] = json_int(rep.n_vert);
  j["n_disc"] = json_int(rep.n_disc);
  j["cpdeg_upper"] = json_int(rep.cpdeg_upper);
  j["corner_lower"] = json_int(rep.corner_lower);
  j["bound_valid"] = rep.bound_valid;
  ordered_json vert = ordered_json::array();
  for (const VertContribution& vc : rep.vert) {
    ordered_json v;
    v["face_id"] = vc.face_id;
    v["dim"] = vc.dim;
    v["mu"] = json_int(vc.mu);
    v["sat_index"] = vc.sat_index;
    v["path"] = vc.facet_path ? "facet" : "orbit";
    if (vc.facet_path) {
      v["face_nvol"] = json_int(vc.face_nvol);
    } else {
      v["solutions"] = vc.solutions;
      v["seed"] = vc.seed;
    }
    v["contribution"] = json_int(vc.contribution);
    vert.push_back(std::move(v));
  }
  j["vert"] = std::move(vert);
  ordered_json disc = ordered_json::array();
  for (const DiscContribution& dc : rep.disc) {
    ordered_json v;
    v["face_id"] = dc.face_id;
    v["mu"] = json_int(dc.mu);
    v["sat_index"] = dc.sat_index;
    v["mixed_area_sum"] = json_int(dc.ma_sum);
    v["contribution"] = json_int(dc.contribution);
    disc.push_back(std::move(v));
  }
  j["disc"] = std::move(disc);
  j["flags"] = rep.flags;
  if (rep.refined) {
    ordered_json r;
    r["disc_total"] = json_int(rep.refined_disc);
    r["cpdeg_upper"] = json_int(rep.cpdeg_upper_refined);
    ordered_json faces = ordered_json::array();
    for (const FaceRefinement& fr : rep.refinements) {
      ordered_json f;
      f["face_id"] = fr.face_id;
      f["applicable"] = fr.applicable;
      if (!fr.note.empty()) f["note"] = fr.note;
      ordered_json pts = ordered_json::array();
      for (const RefinePoint& rp : fr.points) {
        ordered_json p;
        p["point"] = {rp.p1.real(), rp.p1.imag(), rp.p2.real(), rp.p2.imag()};
        p["mult"] = rp.mult;
        p["certified"] = rp.certified;
        pts.push_back(std::move(p));
      }
      f["points"] = std::move(pts);
      f["total"] = json_int(fr.total);
      faces.push_back(std::move(f));
    }
    r["faces"] = std::move(faces);
    j["refined"] = std::move(r);
  }
  return j;
}

ordered_json corners_json(const Pipeline& pl, const std::map<std::string, Rat>& params) {
  constexpr double kCornerTol = 1e-8;
  ordered_json j;
  ordered_json pj = ordered_json::object();
  for (auto& [k, v] : params) pj[k] = rat_str(v);
  j["params"] = std::move(pj);
  j["tolerance"] = kCornerTol;
  std::vector<LaurentPoly> sys = critical_point_system(pl.phi);
  ordered_json pts = ordered_json::array();
  double worst = 0;
  for (const CornerPoint& cp : corner_critical_points(pl.g, params)) {
    std::vector<Cplx> pt;
    for (double z : cp.z) pt.push_back(Cplx(z, 0));
    pt.push_back(Cplx(cp.lambda, 0));
    double rel = cp.residual / system_scale(sys, params, pt);
    worst = std::max(worst, rel);
    ordered_json p;
    p["z"] = cp.z;
    p["lambda"] = cp.lambda;
    p["relative_residual"] = rel;
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  j["max_relative_residual"] = worst;
  j["all_within_tolerance"] = worst <= kCornerTol;
  return j;
}

ordered_json build_report(const Pipeline& pl, unsigned long long seed, int draws, bool refine) {
  ordered_json j;
  j["tool"] = {{"name", "blochbound"}, {"version", "0.1.0"}};
  j["seed"] = seed;
  j["graph"] = ordered_json::parse(graph_json(pl.g));
  j["dispersion"] = dispersion_json(pl);
  j["polytope"] = polytope_json(pl);
  BoundsReport rep = compute_bounds(pl.g, seed, draws, refine);
  j["faces"] = faces_json(pl, rep);
  j["bounds"] = bounds_json(rep);
  std::set<std::string> syms;
  pl.phi.collect_symbols(syms);
  j["corners"] = corners_json(pl, draw_params(syms, seed));
  return j;
}

std::string face_initial_dot(const Pipeline& pl, int face_id) {
  const Face& f = pl.poly.face(face_id);
  InitialGraph ig = initial_graph(pl.q, f.normal);
  return initial_graph_dot(pl.q, ig);
}

namespace {

bool type_matches(const std::string& t, const nlohmann::json& doc) {
  if (t == "object") return doc.is_object();
  if (t == "array") return doc.is_array();
  if (t == "string") return doc.is_string();
  if (t == "boolean") return doc.is_boolean();
  if (t == "integer") return doc.is_number_integer();
  if (t == "number") return doc.is_number();
  if (t == "null") return doc.is_null();
  return false;
}

void check_schema(const nlohmann::json& schema, const nlohmann::json& doc,
                  const std::string& path, std::vector<std::string>& out) {
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), doc);
    } else if (t.is_array()) {
      for (auto& one : t) ok = ok || type_matches(one.get<std::string>(), doc);
    }
    if (!ok) {
      out.push_back(path + ": type mismatch");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (auto& v : schema["enum"]) ok = ok || v == doc;
    if (!ok) out.push_back(path + ": value not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (auto& r : schema["required"]) {
        std::string key = r.get<std::string>();
        if (!doc.contains(key)) out.push_back(path + ": missing required key " + key);
      }
    if (schema.contains("properties"))
      for (auto& [key, sub] : schema["properties"].items())
        if (doc.contains(key)) check_schema(sub, doc.at(key), path + "/" + key, out);
    if (schema.contains("additionalProperties") &&
        schema["additionalProperties"].is_boolean() &&
        !schema["additionalProperties"].get<bool>() && schema.contains("properties")) {
      for (auto& [key, val] : doc.items())
        if (!schema["properties"].contains(key))
          out.push_back(path + ": unexpected key " + key);
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    size_t i = 0;
    for (auto& el : doc) {
      check_schema(schema["items"], el, path + "/" + std::to_string(i), out);
      ++i;
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc) {
  std::vector<std::string> out;
  check_schema(schema, doc, "$", out);
  return out;
}

}  // namespace bloch
